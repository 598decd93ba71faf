#pragma once

#include "treeflow/verify.hpp"

#include <json.hpp>

namespace treeflow {

using nlohmann::json;

inline json to_json(const Rational& q) { return q.str(); }

inline json to_json(const BPoly& p) {
    json a = json::array();
    for (int k = 0; k <= p.degree(); ++k) a.push_back(p.coeff(k).str());
    return a;
}

/// {"num": matrix [b-degree][t-degree] of exact rationals, "pole": m}.
inline json to_json(const FlowFraction& f) {
    json num = json::array();
    int bd = std::max(f.numerator().bdeg(), 0);
    int td = std::max(f.numerator().tdeg(), 0);
    for (int i = 0; i <= bd; ++i) {
        json row = json::array();
        for (int j = 0; j <= td; ++j) row.push_back(f.numerator().tcoeff(j).coeff(i).str());
        num.push_back(row);
    }
    return json{{"num", num}, {"pole", f.pole()}};
}

inline json to_json(const TruncatedTSeries& s) {
    json a = json::array();
    for (const auto& c : s.coeffs()) a.push_back(to_json(c));
    return a;
}

template <class R>
json series_to_json(const PreLieSeries<R>& s) {
    json coeffs = json::array();
    for (int n = 1; n <= s.degree(); ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            R v = s.coeff(t);
            if (ring_is_zero(v)) continue;
            coeffs.push_back(json{{"tree", t.encode()}, {"value", to_json(v)}});
        }
    return json{{"degree", s.degree()}, {"coeffs", coeffs}};
}

template <class R>
json series_to_json(const DendSeries<R>& s) {
    json coeffs = json::array();
    if (!ring_is_zero(s.unit_coeff()))
        coeffs.push_back(json{{"pbt", "."}, {"value", to_json(s.unit_coeff())}});
    for (int n = 1; n <= s.degree(); ++n)
        for (const auto& t : enumerate_pbtrees(n)) {
            R v = s.coeff(t);
            if (ring_is_zero(v)) continue;
            coeffs.push_back(json{{"pbt", t.encode()}, {"value", to_json(v)}});
        }
    return json{{"degree", s.degree()}, {"coeffs", coeffs}};
}

inline json to_json(const CheckReport& r) {
    return json{{"id", r.id},
                {"status", check_status_name(r.status)},
                {"scope", r.scope},
                {"witness", r.witness},
                {"seconds", r.seconds}};
}

inline json to_json(const Flow& f) {
    json inputs = json::array();
    for (std::size_t v = 0; v < f.input.size(); ++v)
        if (f.input[v] > 0) inputs.push_back(json::array({v, f.input[v]}));
    json outputs = json::array();
    for (std::size_t v = 0; v < f.output.size(); ++v)
        if (f.output[v]) outputs.push_back(v);
    return json{{"outputs", outputs},
                {"inputs", inputs},
                {"size", f.size},
                {"exit_rate", f.exit_rate}};
}

}  // namespace treeflow

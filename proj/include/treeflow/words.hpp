#pragma once

#include "treeflow/flow_series.hpp"
#include "treeflow/report.hpp"
#include "treeflow/ring.hpp"

#include <map>
#include <string>

namespace treeflow {

/// Noncommutative series in the letters '+' and '-' (the free concatenation
/// algebra), truncated at a maximal word length. Grading is by word length.
template <class R>
class WordSeries {
  public:
    explicit WordSeries(int maxlen) : maxlen_(maxlen) {}

    static WordSeries empty_word(int maxlen) {
        WordSeries s(maxlen);
        s.set("", Ring<R>::one());
        return s;
    }
    static WordSeries letter(char c, int maxlen) {
        WordSeries s(maxlen);
        s.set(std::string(1, c), Ring<R>::one());
        return s;
    }

    int maxlen() const { return maxlen_; }
    R coeff(const std::string& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? Ring<R>::zero() : it->second;
    }
    void set(const std::string& w, R v) {
        if (static_cast<int>(w.size()) > maxlen_) return;
        if (ring_is_zero(v))
            c_.erase(w);
        else
            c_[w] = std::move(v);
    }
    void add(const std::string& w, const R& v) { set(w, coeff(w) + v); }
    const std::map<std::string, R>& raw() const { return c_; }

    friend bool operator==(const WordSeries& a, const WordSeries& b) {
        return a.maxlen_ == b.maxlen_ && a.c_ == b.c_;
    }
    friend bool operator!=(const WordSeries& a, const WordSeries& b) { return !(a == b); }

    WordSeries operator+(const WordSeries& o) const {
        WordSeries r = *this;
        for (const auto& [w, v] : o.c_) r.add(w, v);
        return r;
    }
    WordSeries operator-(const WordSeries& o) const {
        WordSeries r = *this;
        for (const auto& [w, v] : o.c_) r.add(w, ring_mul_rat(v, Rational(-1)));
        return r;
    }
    WordSeries operator*(const WordSeries& o) const {
        WordSeries r(maxlen_);
        for (const auto& [w1, v1] : c_)
            for (const auto& [w2, v2] : o.c_) {
                if (static_cast<int>(w1.size() + w2.size()) > maxlen_) continue;
                r.add(w1 + w2, v1 * v2);
            }
        return r;
    }

    WordSeries& scale(const R& x) {
        if (ring_is_zero(x)) {
            c_.clear();
            return *this;
        }
        for (auto& [w, v] : c_) v = v * x;
        return *this;
    }
    WordSeries& scale_rat(const Rational& q) {
        if (q.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& [w, v] : c_) v = ring_mul_rat(v, q);
        return *this;
    }

    /// Bar involution: the anti-morphism with bar(+) = -(-), bar(-) = -(+),
    /// so a word reverses, flips its letters and picks up (-1)^length.
    WordSeries bar() const {
        WordSeries r(maxlen_);
        for (const auto& [w, v] : c_) {
            std::string m(w.rbegin(), w.rend());
            for (auto& ch : m) ch = ch == '+' ? '-' : '+';
            r.add(m, w.size() % 2 == 0 ? v : ring_mul_rat(v, Rational(-1)));
        }
        return r;
    }

    static std::string first_difference(const WordSeries& a, const WordSeries& b) {
        std::map<std::string, char> keys;
        for (const auto& [w, v] : a.c_) keys[w] = 1;
        for (const auto& [w, v] : b.c_) keys[w] = 1;
        for (const auto& [w, unused] : keys)
            if (a.coeff(w) != b.coeff(w)) return "'" + w + "'";
        return "";
    }

  private:
    int maxlen_;
    std::map<std::string, R> c_;
};

/// The word series of flows on linear trees: P_t = sum ca_{k,t} (+)^k and
/// N_t = sum (-1)^k ca_{k,t} (-)^k; refined = false gives the t = 0 values.
inline WordSeries<FlowFraction> P_series(FlowCalculator& calc, int N, bool refined) {
    WordSeries<FlowFraction> s(N);
    for (int k = 1; k <= N; ++k)
        s.set(std::string(k, '+'),
              refined ? calc.ca_t(k) : FlowFraction(calc.ca(k)));
    return s;
}
inline WordSeries<FlowFraction> N_series(FlowCalculator& calc, int N, bool refined) {
    WordSeries<FlowFraction> s(N);
    for (int k = 1; k <= N; ++k) {
        FlowFraction v = refined ? calc.ca_t(k) : FlowFraction(calc.ca(k));
        if (k % 2 == 1) v.scale(Rational(-1));
        s.set(std::string(k, '-'), v);
    }
    return s;
}

/// Connected variants P^c = (0 + bP)+ and N^c = -(-(0 + bN)).
inline WordSeries<FlowFraction> Pc_series(FlowCalculator& calc, int N) {
    WordSeries<FlowFraction> inner = P_series(calc, N, false);
    inner.scale(FlowFraction(BPoly::monomial(1)));
    inner = WordSeries<FlowFraction>::empty_word(N) + inner;
    return inner * WordSeries<FlowFraction>::letter('+', N);
}
inline WordSeries<FlowFraction> Nc_series(FlowCalculator& calc, int N) {
    WordSeries<FlowFraction> inner = N_series(calc, N, false);
    inner.scale(FlowFraction(BPoly::monomial(1)));
    inner = WordSeries<FlowFraction>::empty_word(N) + inner;
    WordSeries<FlowFraction> r = WordSeries<FlowFraction>::letter('-', N) * inner;
    r.scale_rat(Rational(-1));
    return r;
}

/// T = sum_k b^k (P N)^k; independent of t.
inline WordSeries<FlowFraction> T_series(FlowCalculator& calc, int N) {
    WordSeries<FlowFraction> pn = P_series(calc, N, false) * N_series(calc, N, false);
    pn.scale(FlowFraction(BPoly::monomial(1)));
    WordSeries<FlowFraction> total = WordSeries<FlowFraction>::empty_word(N);
    WordSeries<FlowFraction> pow = WordSeries<FlowFraction>::empty_word(N);
    for (int k = 1; 2 * k <= N; ++k) {
        pow = pow * pn;
        total = total + pow;
    }
    return total;
}

/// U_t = (0 + bN) T P_t with an arbitrary refinement flag on the last factor.
inline WordSeries<FlowFraction> U_series(FlowCalculator& calc, int N, bool refined = true) {
    WordSeries<FlowFraction> bn = N_series(calc, N, false);
    bn.scale(FlowFraction(BPoly::monomial(1)));
    return (WordSeries<FlowFraction>::empty_word(N) + bn) * T_series(calc, N) *
           P_series(calc, N, refined);
}

/// V_t = N_t T (0 + bP).
inline WordSeries<FlowFraction> V_series(FlowCalculator& calc, int N, bool refined = true) {
    WordSeries<FlowFraction> bp = P_series(calc, N, false);
    bp.scale(FlowFraction(BPoly::monomial(1)));
    return N_series(calc, N, refined) * T_series(calc, N) *
           (WordSeries<FlowFraction>::empty_word(N) + bp);
}

namespace word_detail {

inline WordSeries<FlowFraction> div_t_times_b(const WordSeries<FlowFraction>& s) {
    WordSeries<FlowFraction> r(s.maxlen());
    for (const auto& [w, v] : s.raw()) {
        FlowFraction q = v.divided_by_t();
        q.scale(BPoly::monomial(1));
        r.set(w, q);
    }
    return r;
}

inline WordSeries<FlowFraction> inv_one_minus_t(const WordSeries<FlowFraction>& s) {
    WordSeries<FlowFraction> r = s;
    r.scale(FlowFraction::inv_one_minus_t(1));
    return r;
}

}  // namespace word_detail

/// The section-5 relations between the word series, checked with exact
/// fraction coefficients.
inline std::vector<IdentityCheck> verify_word_identities(FlowCalculator& calc, int N) {
    using WS = WordSeries<FlowFraction>;
    namespace wd = word_detail;
    std::vector<IdentityCheck> out;
    auto push = [&](const std::string& name, const WS& a, const WS& b) {
        std::string w = WS::first_difference(a, b);
        out.push_back({name, w.empty(), w});
    };

    WS empty = WS::empty_word(N);
    WS plus = WS::letter('+', N), minus = WS::letter('-', N);
    WS Pt = P_series(calc, N, true), P0 = P_series(calc, N, false);
    WS Nt = N_series(calc, N, true), N0 = N_series(calc, N, false);
    WS Pc = Pc_series(calc, N), Nc = Nc_series(calc, N);
    WS T = T_series(calc, N);
    WS Ut = U_series(calc, N, true), U0 = U_series(calc, N, false);
    WS Vt = V_series(calc, N, true), V0 = V_series(calc, N, false);

    // P_t = 1/(1-t) (0 + P_t)+ + b/t (P_t - P)+
    push("P_t = (0+P_t)+/(1-t) + b/t (P_t - P)+",
         Pt, wd::inv_one_minus_t((empty + Pt) * plus) + wd::div_t_times_b(Pt - P0) * plus);
    // N_t = -1/(1-t) -(0 + N_t) - b/t -(N_t - N)
    {
        WS rhs = wd::inv_one_minus_t(minus * (empty + Nt));
        rhs.scale_rat(Rational(-1));
        WS second = minus * wd::div_t_times_b(Nt - N0);
        second.scale_rat(Rational(-1));
        push("N_t = -(0+N_t)-/(1-t)... (mirror)", Nt, rhs + second);
    }
    // (1-t) P_t = P^c + P^c P_t ; (1-t) N_t = N^c + N_t N^c
    {
        WS lhs = Pt;
        FlowFraction one_minus_t(
            BTPoly(std::vector<BPoly>{BPoly(Rational(1)), BPoly(Rational(-1))}), 0);
        lhs.scale(one_minus_t);
        push("(1-t) P_t = P^c + P^c P_t", lhs, Pc + Pc * Pt);
        WS lhsn = Nt;
        lhsn.scale(one_minus_t);
        push("(1-t) N_t = N^c + N_t N^c", lhsn, Nc + Nt * Nc);
    }
    // U_t = 1/(1-t) ((0+bN)T + U_t)+ + b/t (U_t - U)+
    {
        WS bn = N0;
        bn.scale(FlowFraction(BPoly::monomial(1)));
        WS head = (empty + bn) * T;
        push("U_t = ((0+bN)T + U_t)+/(1-t) + b/t (U_t - U)+",
             Ut, wd::inv_one_minus_t((head + Ut) * plus) + wd::div_t_times_b(Ut - U0) * plus);
    }
    // V_t mirror
    {
        WS bp = P0;
        bp.scale(FlowFraction(BPoly::monomial(1)));
        WS tail = T * (empty + bp);
        WS rhs = wd::inv_one_minus_t(minus * (tail + Vt));
        rhs.scale_rat(Rational(-1));
        WS second = minus * wd::div_t_times_b(Vt - V0);
        second.scale_rat(Rational(-1));
        push("V_t = -(T(0+bP) + V_t)-/(1-t)... (mirror)", Vt, rhs + second);
    }
    // bar involution exchanges
    push("bar(P_t) = N_t", Pt.bar(), Nt);
    push("bar(N_t) = P_t", Nt.bar(), Pt);
    push("bar(T) = T", T.bar(), T);
    push("bar(U_t) = V_t", Ut.bar(), Vt);
    return out;
}

}  // namespace treeflow

#pragma once

#include "treeflow/flow_series.hpp"
#include "treeflow/report.hpp"
#include "treeflow/ring.hpp"

#include <map>
#include <mutex>

namespace treeflow {

struct TruncationMismatchError : std::invalid_argument {
    TruncationMismatchError() : std::invalid_argument("series truncation degrees differ") {}
};
struct NotInvertibleSeriesError : std::domain_error {
    NotInvertibleSeriesError() : std::domain_error("series coefficient on the one-vertex tree is not invertible") {}
};

/// Series in the Pre-Lie group, truncated at degree N. The stored value at T
/// is the coefficient s_T of the normalized expansion sum_T s_T T / aut(T).
template <class R>
class PreLieSeries {
  public:
    explicit PreLieSeries(int degree) : degree_(degree) {}

    int degree() const { return degree_; }

    R coeff(const RootedTree& t) const {
        auto it = c_.find(t.encode());
        return it == c_.end() ? Ring<R>::zero() : it->second;
    }
    void set(const RootedTree& t, R v) {
        if (static_cast<int>(t.size()) > degree_) return;
        if (ring_is_zero(v))
            c_.erase(t.encode());
        else
            c_[t.encode()] = std::move(v);
    }
    void add(const RootedTree& t, const R& v) { set(t, coeff(t) + v); }

    const std::map<std::string, R>& raw() const { return c_; }

    friend bool operator==(const PreLieSeries& a, const PreLieSeries& b) {
        if (a.degree_ != b.degree_) return false;
        return a.c_ == b.c_;
    }
    friend bool operator!=(const PreLieSeries& a, const PreLieSeries& b) { return !(a == b); }

    PreLieSeries operator+(const PreLieSeries& o) const {
        require_same_degree(o);
        PreLieSeries r = *this;
        for (const auto& [enc, v] : o.c_) r.set(RootedTree::parse(enc), r.coeff(RootedTree::parse(enc)) + v);
        return r;
    }
    PreLieSeries operator-(const PreLieSeries& o) const {
        require_same_degree(o);
        PreLieSeries r = *this;
        for (const auto& [enc, v] : o.c_) {
            RootedTree t = RootedTree::parse(enc);
            r.set(t, r.coeff(t) - v);
        }
        return r;
    }

    /// Degreewise sign twist (-1)^(n-1).
    PreLieSeries suspension() const {
        PreLieSeries r(degree_);
        for (const auto& [enc, v] : c_) {
            RootedTree t = RootedTree::parse(enc);
            r.set(t, t.size() % 2 == 1 ? v : ring_mul_rat(v, Rational(-1)));
        }
        return r;
    }

    /// First tree (in canonical order) where the two series differ.
    static std::string first_difference(const PreLieSeries& a, const PreLieSeries& b) {
        int n_max = std::min(a.degree_, b.degree_);
        for (int n = 1; n <= n_max; ++n)
            for (const auto& t : enumerate_rooted_trees(n))
                if (a.coeff(t) != b.coeff(t)) return t.encode();
        return "";
    }

  private:
    void require_same_degree(const PreLieSeries& o) const {
        if (degree_ != o.degree_) throw TruncationMismatchError();
    }

    int degree_;
    std::map<std::string, R> c_;
};

namespace prelie_detail {

/// One class of edge subsets of a tree U: cutting the external edges leaves
/// the parts (subtrees), contracting every part gives the skeleton. The
/// multiplicity counts edge subsets with the same skeleton/part data.
struct Decomposition {
    std::string skeleton;
    std::string root_part;
    std::vector<std::string> other_parts;  // sorted
    long long multiplicity;
};

inline std::vector<Decomposition> compute_decompositions(const RootedTree& u) {
    TreeShape shape(u);
    std::size_t n = shape.size();
    std::map<std::tuple<std::string, std::string, std::vector<std::string>>, long long> agg;
    std::size_t edges = n - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << edges); ++mask) {
        // edge v -> parent(v) is "internal" (kept inside a part) iff bit v-1.
        std::vector<int> rep(n);
        for (std::size_t v = 0; v < n; ++v)
            rep[v] = (v == 0 || !(mask >> (v - 1) & 1)) ? static_cast<int>(v)
                                                        : rep[shape.parent[v]];
        // part subtree rooted at r, restricted to its component
        std::function<RootedTree(int, int)> part = [&](int v, int r) -> RootedTree {
            std::vector<RootedTree> ch;
            for (int c : shape.children[v])
                if (rep[c] == r) ch.push_back(part(c, r));
            return RootedTree::b_plus(std::move(ch));
        };
        std::string root_part;
        std::vector<std::string> others;
        std::map<int, std::vector<int>> skel_children;  // rep -> child reps
        for (std::size_t v = 0; v < n; ++v) {
            if (rep[v] != static_cast<int>(v)) continue;
            RootedTree p = part(static_cast<int>(v), static_cast<int>(v));
            if (v == 0)
                root_part = p.encode();
            else {
                others.push_back(p.encode());
                skel_children[rep[shape.parent[v]]].push_back(static_cast<int>(v));
            }
        }
        std::function<RootedTree(int)> skel = [&](int r) -> RootedTree {
            std::vector<RootedTree> ch;
            for (int c : skel_children[r]) ch.push_back(skel(c));
            return RootedTree::b_plus(std::move(ch));
        };
        std::string skeleton = skel(0).encode();
        std::sort(others.begin(), others.end());
        ++agg[{std::move(skeleton), std::move(root_part), std::move(others)}];
    }
    std::vector<Decomposition> out;
    for (auto& [key, mult] : agg)
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
    return out;
}

inline const std::vector<Decomposition>& decompositions(const RootedTree& u) {
    static std::mutex mu;
    static std::map<std::string, std::vector<Decomposition>> cache;
    std::scoped_lock lk(mu);
    auto it = cache.find(u.encode());
    if (it == cache.end())
        it = cache.emplace(u.encode(), compute_decompositions(u)).first;
    return it->second;
}

}  // namespace prelie_detail

/// Root-distinguished substitution: the part containing the root of each
/// target tree draws its coefficient from t, all other parts from u.
/// diamond(s, t, t) is the group composition.
template <class R>
PreLieSeries<R> diamond(const PreLieSeries<R>& s, const PreLieSeries<R>& t,
                        const PreLieSeries<R>& u) {
    if (s.degree() != t.degree() || s.degree() != u.degree())
        throw TruncationMismatchError();
    int N = s.degree();
    PreLieSeries<R> out(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& target : enumerate_rooted_trees(n)) {
            R total = Ring<R>::zero();
            bool any = false;
            for (const auto& d : prelie_detail::decompositions(target)) {
                R term = s.coeff(RootedTree::parse(d.skeleton));
                if (ring_is_zero(term)) continue;
                term = term * t.coeff(RootedTree::parse(d.root_part));
                if (ring_is_zero(term)) continue;
                for (const auto& enc : d.other_parts) {
                    term = term * u.coeff(RootedTree::parse(enc));
                    if (ring_is_zero(term)) break;
                }
                if (ring_is_zero(term)) continue;
                total = total + ring_mul_rat(term, Rational(d.multiplicity));
                any = true;
            }
            if (any) out.set(target, total);
        }
    return out;
}

/// Group law of the Pre-Lie series group (substitution along edge subsets).
template <class R>
PreLieSeries<R> compose(const PreLieSeries<R>& s, const PreLieSeries<R>& t) {
    return diamond(s, t, t);
}

/// Series with coefficient 1 on the one-vertex tree: the group unit.
template <class R>
PreLieSeries<R> prelie_unit(int N) {
    PreLieSeries<R> s(N);
    s.set(RootedTree::leaf(), Ring<R>::one());
    return s;
}

/// Right inverse (equal to the left inverse), solved degree by degree.
template <class R>
PreLieSeries<R> inverse(const PreLieSeries<R>& s) {
    int N = s.degree();
    R s1 = s.coeff(RootedTree::leaf());
    if (ring_is_zero(s1)) throw NotInvertibleSeriesError();
    R s1_inv = ring_inverse(s1);
    PreLieSeries<R> x(N);
    x.set(RootedTree::leaf(), s1_inv);
    for (int n = 2; n <= N; ++n)
        for (const auto& target : enumerate_rooted_trees(n)) {
            // 0 = (s o x)_U = s_1 x_U + lower-degree data
            R acc = Ring<R>::zero();
            for (const auto& d : prelie_detail::decompositions(target)) {
                if (d.root_part == target.encode()) continue;  // the unknown
                R term = s.coeff(RootedTree::parse(d.skeleton));
                if (ring_is_zero(term)) continue;
                term = term * x.coeff(RootedTree::parse(d.root_part));
                for (const auto& enc : d.other_parts)
                    term = term * x.coeff(RootedTree::parse(enc));
                acc = acc + ring_mul_rat(term, Rational(d.multiplicity));
            }
            R value = ring_mul_rat(acc * s1_inv, Rational(-1));
            x.set(target, value);
        }
    return x;
}

/// H_k: coefficient k^(#T - 1) on every tree.
inline PreLieSeries<Rational> hk_series(long long k, int N) {
    PreLieSeries<Rational> s(N);
    for (int n = 1; n <= N; ++n) {
        Int p = 1;
        for (int i = 1; i < n; ++i) p *= k;
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, Rational(p));
    }
    return s;
}

/// Sum of all corollas with the aut normalization absorbed: coefficient 1 on
/// every corolla.
template <class R>
PreLieSeries<R> crls_series(int N) {
    PreLieSeries<R> s(N);
    s.set(RootedTree::leaf(), Ring<R>::one());
    for (int n = 2; n <= N; ++n) s.set(corolla(n - 1), Ring<R>::one());
    return s;
}

/// Global flow series with exact fraction coefficients.
inline PreLieSeries<FlowFraction> Et_series(FlowCalculator& calc, int N) {
    PreLieSeries<FlowFraction> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.E(t));
    return s;
}
inline PreLieSeries<FlowFraction> Dt_series(FlowCalculator& calc, int N) {
    PreLieSeries<FlowFraction> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.D(t));
    return s;
}
inline PreLieSeries<FlowFraction> Ect_series(FlowCalculator& calc, int N) {
    PreLieSeries<FlowFraction> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.Ec(t));
    return s;
}
inline PreLieSeries<BPoly> E0_series(FlowCalculator& calc, int N) {
    PreLieSeries<BPoly> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.E0(t));
    return s;
}
inline PreLieSeries<BPoly> D0_series(FlowCalculator& calc, int N) {
    PreLieSeries<BPoly> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.D0(t));
    return s;
}
inline PreLieSeries<BPoly> Ec0_series(FlowCalculator& calc, int N) {
    PreLieSeries<BPoly> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, calc.Ec0(t));
    return s;
}

/// F: the series with E^c = . + b . <- F, read off as F_T = (E^c)_{B_+(T)}/b.
inline PreLieSeries<BPoly> F_series(FlowCalculator& calc, int N) {
    PreLieSeries<BPoly> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            s.set(t, calc.Ec0(RootedTree::b_plus({t})).divexact_b(1));
    return s;
}

/// Y = E o D^{-1} and the series Z with Y = . + b . <- Z.
inline PreLieSeries<BPoly> Y_series(FlowCalculator& calc, int N) {
    return compose(E0_series(calc, N), inverse(D0_series(calc, N)));
}
inline PreLieSeries<BPoly> Z_series(FlowCalculator& calc, int N) {
    PreLieSeries<BPoly> y = Y_series(calc, N + 1);
    PreLieSeries<BPoly> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            s.set(t, y.coeff(RootedTree::b_plus({t})).divexact_b(1));
    return s;
}

namespace prelie_detail {

inline PreLieSeries<FlowFraction> embed(const PreLieSeries<BPoly>& s) {
    PreLieSeries<FlowFraction> out(s.degree());
    for (const auto& [enc, v] : s.raw()) out.set(RootedTree::parse(enc), FlowFraction(v));
    return out;
}

template <class R>
IdentityCheck compare(const std::string& name, const PreLieSeries<R>& a,
                      const PreLieSeries<R>& b) {
    std::string witness = PreLieSeries<R>::first_difference(a, b);
    return {name, witness.empty(), witness};
}

}  // namespace prelie_detail

/// The proved global identities for flow series, checked coefficientwise on
/// exact fractions up to degree N.
inline std::vector<IdentityCheck> verify_prelie_identities(FlowCalculator& calc, int N) {
    using FF = FlowFraction;
    std::vector<IdentityCheck> out;
    auto Et = Et_series(calc, N);
    auto Dt = Dt_series(calc, N);
    auto Ect = Ect_series(calc, N);
    auto E0 = E0_series(calc, N);
    auto D0 = prelie_detail::embed(D0_series(calc, N));
    auto Ec0f = prelie_detail::embed(Ec0_series(calc, N));
    auto unitf = prelie_unit<FF>(N);

    // D_t = Crls <>(., E_t)
    out.push_back(prelie_detail::compare("D_t = Crls <>(., E_t)",
                                         diamond(crls_series<FF>(N), unitf, Et), Dt));

    // E_t = D_t/(1-t) + (b/t)(D_t - D)
    {
        PreLieSeries<FF> rhs(N);
        for (int n = 1; n <= N; ++n)
            for (const auto& t : enumerate_rooted_trees(n)) {
                FF d = Dt.coeff(t);
                FF over_t = (d - FF(d.eval_t0())).divided_by_t();
                over_t.scale(BPoly::monomial(1));
                rhs.set(t, d * FF::inv_one_minus_t(1) + over_t);
            }
        out.push_back(prelie_detail::compare("E_t = D_t/(1-t) + b/t (D_t - D)", Et, rhs));
    }

    // global equation for connected flows
    {
        PreLieSeries<FF> diff = Ect - Ec0f;
        PreLieSeries<FF> a = diamond(crls_series<FF>(N), unitf, diff);
        PreLieSeries<FF> rhs(N);
        for (int n = 1; n <= N; ++n)
            for (const auto& t : enumerate_rooted_trees(n)) {
                FF av = a.coeff(t);
                FF over_t = (av - (t.size() == 1 ? FF(Rational(1)) : FF())).divided_by_t();
                over_t.scale(BPoly::monomial(1));
                rhs.set(t, av * FF::inv_one_minus_t(1) + over_t);
            }
        out.push_back(prelie_detail::compare(
            "E^c_t = Crls<>(., E^c_t - E^c)/(1-t) + b/t (Crls<>(., E^c_t - E^c) - .)", Ect,
            rhs));
    }

    // connected fractions match the enumeration oracle
    {
        bool ok = true;
        std::string witness;
        for (int n = 1; n <= N && ok; ++n)
            for (const auto& t : enumerate_rooted_trees(n)) {
                if (calc.Ec(t).expand(8) != oracle_expansion(t, FlowClass::Connected, 8)) {
                    ok = false;
                    witness = t.encode();
                    break;
                }
            }
        out.push_back({"E^c_t fractions = connected-flow oracle (t-order 8)", ok, witness});
    }

    // E_t = (sum T/aut) <>(E^c_t, E^c)
    {
        PreLieSeries<FF> h1 = prelie_detail::embed([&] {
            PreLieSeries<BPoly> h(N);
            for (int n = 1; n <= N; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) h.set(t, BPoly(Rational(1)));
            return h;
        }());
        out.push_back(prelie_detail::compare("E_t = (sum T/aut) <>(E^c_t, E^c)",
                                             diamond(h1, Ect, Ec0f), Et));
        // and its value at t = 0: E = (sum T/aut) o E^c
        out.push_back(prelie_detail::compare("E = (sum T/aut) o E^c",
                                             compose(h1, Ec0f), prelie_detail::embed(E0)));
    }

    // E^c = . + b(. <- F): support and extraction against the pull-up F
    {
        bool ok = true;
        std::string witness;
        for (int n = 1; n <= N && ok; ++n)
            for (const auto& t : enumerate_rooted_trees(n)) {
                BPoly ec = calc.Ec0(t);
                BPoly expect;
                if (t.size() == 1)
                    expect = BPoly(Rational(1));
                else if (t.children().size() == 1)
                    expect = BPoly::monomial(1) * calc.F(t.children()[0]);
                if (ec != expect) {
                    ok = false;
                    witness = t.encode();
                    break;
                }
            }
        out.push_back({"E^c = . + b(. <- F) with F from the pull-up recursion", ok, witness});
    }
    return out;
}

/// Scan of the quotient-series conjecture Y_T = (-1)^(L(T)-1) E^s_T.
inline std::vector<IdentityCheck> y_conjecture_scan(FlowCalculator& calc, int N) {
    std::vector<IdentityCheck> out;
    PreLieSeries<BPoly> y = Y_series(calc, N);
    bool ok = true;
    std::string witness;
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            BPoly expect = calc.saturated(t);
            if (t.num_leaves() % 2 == 0) expect = -expect;
            if (y.coeff(t) != expect) {
                ok = false;
                if (witness.empty()) witness = t.encode();
            }
        }
    out.push_back({"Y_T = (-1)^(L(T)-1) E^s_T (n <= " + std::to_string(N) + ")", ok, witness});
    // support prerequisite for extracting Z
    bool sup_ok = true;
    std::string sup_witness;
    for (int n = 2; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            if (t.children().size() >= 2 && !y.coeff(t).is_zero()) {
                sup_ok = false;
                if (sup_witness.empty()) sup_witness = t.encode();
            }
    out.push_back({"Y supported on root valency <= 1", sup_ok, sup_witness});
    return out;
}

/// Brute-force composition over labelled trees and the operadic
/// substitution; the coinvariant normalization is carried by the aut
/// factors. Test oracle for compose().
template <class R>
PreLieSeries<R> labelled_compose_oracle(const PreLieSeries<R>& s, const PreLieSeries<R>& t) {
    int N = s.degree();
    std::map<std::string, R> acc;
    for (int k = 1; k <= N; ++k) {
        for (const auto& skel : enumerate_rooted_trees(k)) {
            R sc = s.coeff(skel);
            if (ring_is_zero(sc)) continue;
            Rational skel_w(1, skel.aut());
            TreeShape shape(skel);
            // assign a tree class to every vertex of the skeleton
            std::vector<RootedTree> pool;
            for (int m = 1; m + k - 1 <= N; ++m)
                for (const auto& x : enumerate_rooted_trees(m)) pool.push_back(x);
            std::vector<const RootedTree*> pick(k, nullptr);
            std::function<void(int, int)> rec = [&](int v, int used) {
                if (v == k) {
                    // weight
                    R w = sc;
                    w = ring_mul_rat(w, skel_w);
                    for (int i = 0; i < k; ++i) {
                        w = w * t.coeff(*pick[i]);
                        if (ring_is_zero(w)) return;
                        w = ring_mul_rat(w, Rational(1, pick[i]->aut()));
                    }
                    if (ring_is_zero(w)) return;
                    // glue: each skeleton edge j -> p lands on a vertex of
                    // the tree substituted at p
                    std::vector<TreeShape> parts;
                    std::vector<int> offset(k);
                    int total = 0;
                    for (int i = 0; i < k; ++i) {
                        parts.emplace_back(*pick[i]);
                        offset[i] = total;
                        total += static_cast<int>(pick[i]->size());
                    }
                    std::vector<int> parent(total, -1);
                    for (int i = 0; i < k; ++i)
                        for (std::size_t v2 = 1; v2 < parts[i].size(); ++v2)
                            parent[offset[i] + v2] = offset[i] + parts[i].parent[v2];
                    std::vector<int> skel_edges;  // vertices 1..k-1 of skeleton
                    for (int j = 1; j < k; ++j) skel_edges.push_back(j);
                    std::vector<int> choice(skel_edges.size(), 0);
                    std::function<void(std::size_t)> glue = [&](std::size_t e) {
                        if (e == skel_edges.size()) {
                            std::vector<int> par = parent;
                            for (std::size_t i = 0; i < skel_edges.size(); ++i) {
                                int j = skel_edges[i];
                                int p = shape.parent[j];
                                par[offset[j]] = offset[p] + choice[i];
                            }
                            // rebuild canonical tree from parent array
                            std::vector<std::vector<int>> ch(total);
                            int root = -1;
                            for (int v2 = 0; v2 < total; ++v2) {
                                if (par[v2] < 0)
                                    root = v2;
                                else
                                    ch[par[v2]].push_back(v2);
                            }
                            std::function<RootedTree(int)> canon = [&](int v2) -> RootedTree {
                                std::vector<RootedTree> cs;
                                for (int c : ch[v2]) cs.push_back(canon(c));
                                return RootedTree::b_plus(std::move(cs));
                            };
                            RootedTree u = canon(root);
                            auto [it, fresh] = acc.try_emplace(u.encode(), w);
                            if (!fresh) it->second = it->second + w;
                            return;
                        }
                        int p = shape.parent[skel_edges[e]];
                        for (int c = 0; c < static_cast<int>(pick[p]->size()); ++c) {
                            choice[e] = c;
                            glue(e + 1);
                        }
                    };
                    glue(0);
                    return;
                }
                for (const auto& x : pool) {
                    if (used + static_cast<int>(x.size()) + (k - v - 1) > N) continue;
                    pick[v] = &x;
                    rec(v + 1, used + static_cast<int>(x.size()));
                }
            };
            rec(0, 0);
        }
    }
    PreLieSeries<R> out(N);
    for (auto& [enc, v] : acc) {
        RootedTree u = RootedTree::parse(enc);
        out.set(u, ring_mul_rat(v, Rational(u.aut())));
    }
    return out;
}

}  // namespace treeflow

#pragma once

#include "treeflow/flow_fraction.hpp"
#include "treeflow/flows.hpp"
#include "treeflow/dyck.hpp"
#include "treeflow/report.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace treeflow {

struct NotLinearError : std::invalid_argument {
    NotLinearError() : std::invalid_argument("flow carrier is not a linear tree") {}
};
struct NotClosedError : std::invalid_argument {
    NotClosedError() : std::invalid_argument("flow is not closed") {}
};

/// Raised when the conjectural F_t recursion gives different answers along
/// two different reduction leaves.
struct InconsistentFtError : std::runtime_error {
    InconsistentFtError(const RootedTree& tree, int leaf_a, int leaf_b,
                        const FlowFraction& a, const FlowFraction& b)
        : std::runtime_error("F_t inconsistent on " + tree.encode() + ": leaf " +
                             std::to_string(leaf_a) + " gives " + a.str() + ", leaf " +
                             std::to_string(leaf_b) + " gives " + b.str()),
          tree(tree), leaf_a(leaf_a), leaf_b(leaf_b), value_a(a), value_b(b) {}
    RootedTree tree;
    int leaf_a, leaf_b;
    FlowFraction value_a, value_b;
};

/// Arditti's valor of the root: leaves have valor 1, otherwise
/// max(1, -1 + sum of child valors).
inline long long valor(const RootedTree& t) {
    if (t.is_leaf()) return 1;
    long long s = -1;
    for (const auto& c : t.children()) s += valor(c);
    return std::max(1LL, s);
}

/// Whether T carries a closed connected flow: true for the single vertex,
/// false whenever the root has valency >= 2, and decided by the valor of the
/// unique child otherwise.
inline bool admits_closed_connected(const RootedTree& t) {
    if (t.size() == 1) return true;
    if (t.children().size() != 1) return false;
    return valor(t.children()[0]) == 1;
}

/// Memoized computation of every per-tree generating function in the flow
/// story. All results are exact; the enumeration oracle lives in flows.hpp
/// and is kept out of these recursions so the two routes stay independent.
class FlowCalculator {
  public:
    /// First leaf of maximal height in canonical preorder, or -1 when the
    /// tree is a corolla (no leaf of height >= 2).
    static int pull_leaf(const TreeShape& shape) {
        int best = -1, best_h = 1;
        for (std::size_t v = 0; v < shape.size(); ++v)
            if (shape.is_leaf(static_cast<int>(v)) && shape.height[v] > best_h) {
                best = static_cast<int>(v);
                best_h = shape.height[v];
            }
        return best;
    }

    /// All leaves of height >= 2, canonical preorder.
    static std::vector<int> eligible_leaves(const TreeShape& shape) {
        std::vector<int> out;
        for (std::size_t v = 0; v < shape.size(); ++v)
            if (shape.is_leaf(static_cast<int>(v)) && shape.height[v] >= 2)
                out.push_back(static_cast<int>(v));
        return out;
    }

    /// E_{T,t}: flows counted by size (b) and exit rate (t). Base 1/(1-t),
    /// corollas by the leaf-adjoining identity, everything else by pulling a
    /// maximal-height leaf.
    FlowFraction E(const RootedTree& t) {
        {
            std::scoped_lock lk(mu_);
            auto it = e_.find(t.encode());
            if (it != e_.end()) return it->second;
        }
        FlowFraction r = compute_E(t);
        std::scoped_lock lk(mu_);
        e_.emplace(t.encode(), r);
        return r;
    }

    /// D_{T,t} = product of E over the root subtrees (small flows restrict).
    FlowFraction D(const RootedTree& t) {
        FlowFraction r(Rational(1));
        for (const auto& c : t.children()) r *= E(c);
        return r;
    }

    BPoly E0(const RootedTree& t) { return E(t).eval_t0(); }
    BPoly D0(const RootedTree& t) { return D(t).eval_t0(); }

    /// E pulled through one chosen eligible leaf (for the commuting check).
    FlowFraction E_via_leaf(const RootedTree& t, int leaf) {
        TreeShape shape(t);
        return pullE_term(t, shape, leaf);
    }

    /// F_T: connected flows with exit rate 1, by the pull-up recursion with
    /// corolla base cases 1, 1+b, b, then 0.
    BPoly F(const RootedTree& t) {
        {
            std::scoped_lock lk(mu_);
            auto it = f_.find(t.encode());
            if (it != f_.end()) return it->second;
        }
        BPoly r = compute_F(t);
        std::scoped_lock lk(mu_);
        f_.emplace(t.encode(), r);
        return r;
    }

    /// E^c_{T,t}: connected flows by size and exit rate, as an exact
    /// fraction, through the proved global equation for connected flows
    /// (root an input or an output, subtrees carrying connected flows with
    /// nonzero exit).
    FlowFraction Ec(const RootedTree& t) {
        {
            std::scoped_lock lk(mu_);
            auto it = ec_.find(t.encode());
            if (it != ec_.end()) return it->second;
        }
        FlowFraction r;
        if (t.size() == 1) {
            r = FlowFraction::inv_one_minus_t(1);
        } else {
            FlowFraction prod(Rational(1));
            for (const auto& c : t.children()) {
                FlowFraction ec = Ec(c);
                prod *= ec - FlowFraction(ec.eval_t0());
            }
            FlowFraction over_t = prod.divided_by_t();
            over_t.scale(BPoly::monomial(1));  // b/t * prod
            r = prod * FlowFraction::inv_one_minus_t(1) + over_t;
        }
        std::scoped_lock lk(mu_);
        ec_.emplace(t.encode(), r);
        return r;
    }

    /// Closed connected flows by size (value of E^c at t = 0).
    BPoly Ec0(const RootedTree& t) { return Ec(t).eval_t0(); }

    /// Saturated flows: closed connected with every non-leaf vertex an
    /// output; a pure count times b^(non-leaf vertices).
    BPoly saturated(const RootedTree& t) {
        long long c = static_cast<long long>(enumerate_flows(t, FlowClass::Saturated, 0).size());
        return BPoly::monomial(t.num_nonleaf(), Rational(c));
    }

    /// ca_n = E_{Lnr_n} at t = 0 and its t-refinement.
    BPoly ca(std::size_t n) { return E0(linear_tree(n)); }
    FlowFraction ca_t(std::size_t n) { return E(linear_tree(n)); }

    /// F_{T,t} by the conjectural deformed recursion, computed through every
    /// eligible leaf; throws InconsistentFtError when two leaves disagree.
    FlowFraction Ft(const RootedTree& t) {
        {
            std::scoped_lock lk(mu_);
            auto it = ft_.find(t.encode());
            if (it != ft_.end()) return it->second;
        }
        FlowFraction r = compute_Ft(t);
        std::scoped_lock lk(mu_);
        ft_.emplace(t.encode(), r);
        return r;
    }

  private:
    FlowFraction compute_E(const RootedTree& t) {
        if (t.size() == 1) return FlowFraction::inv_one_minus_t(1);
        if (t.is_corolla()) {
            // E_{B_+(., T_1..T_k),t} = (E_{B_+(T_1..T_k),t} + b prod E_{T_i}) / (1-t)
            std::size_t k = t.children().size();
            FlowFraction inner = E(corolla(k - 1));
            FlowFraction r = inner + FlowFraction(BPoly::monomial(1));
            return r * FlowFraction::inv_one_minus_t(1);
        }
        TreeShape shape(t);
        return pullE_term(t, shape, pull_leaf(shape));
    }

    // E_{T,t} = E_{T'<-_u w,t} + b E_{S,t} prod_i E_{T_i}(0), where w is the
    // pulled leaf, T' = T minus w, v = parent(w), u = parent(v).
    FlowFraction pullE_term(const RootedTree&, const TreeShape& shape, int w) {
        if (w < 0 || !shape.is_leaf(w) || shape.height[w] < 2)
            throw InvalidParamsError("pullE: not a leaf of height >= 2");
        int v = shape.parent[w];
        int u = shape.parent[v];
        RootedTree t_uw = rebuild_moving_leaf(shape, w, u);
        RootedTree bottom = rebuild_bottom(shape, v, w);
        FlowFraction r = E(t_uw);
        FlowFraction graft_part = E(bottom);
        BPoly tops(Rational(1));
        for (int c : shape.children[v])
            if (c != w) tops *= E0(shape.subtree(c));
        graft_part.scale(tops * BPoly::monomial(1));
        return r + graft_part;
    }

    BPoly compute_F(const RootedTree& t) {
        if (t.is_corolla()) {
            std::size_t leaves = t.children().size();  // Crl_k
            if (leaves == 0) return BPoly(Rational(1));            // single vertex
            if (leaves == 1) return BPoly(std::vector<Rational>{1, 1});  // Lnr_2
            if (leaves == 2) return BPoly::monomial(1);            // Crl_2
            return BPoly();                                        // vanishes
        }
        TreeShape shape(t);
        int w = pull_leaf(shape);
        int v = shape.parent[w];
        int u = shape.parent[v];
        RootedTree t_uw = rebuild_moving_leaf(shape, w, u);
        RootedTree bottom = rebuild_bottom(shape, v, w);
        RootedTree s_prime = shape.subtree(v);  // keeps w on top of v
        return F(t_uw) + F(bottom) * F(s_prime);
    }

    FlowFraction compute_Ft(const RootedTree& t) {
        if (t.is_linear()) return E(t);  // conjecture base: F_{Lnr_n,t} = ca_{n,t}
        if (t.is_corolla()) {
            // b (-t)^(k-2) / (1-t)^(k-1) for Crl_k, k >= 2.
            std::size_t k = t.children().size();
            BTPoly num(BPoly::monomial(1));
            BTPoly minus_t(std::vector<BPoly>{BPoly(), BPoly(Rational(-1))});
            for (std::size_t i = 0; i + 2 < k; ++i) num = num * minus_t;
            return FlowFraction(num, static_cast<unsigned>(k - 1));
        }
        TreeShape shape(t);
        std::vector<int> leaves = eligible_leaves(shape);
        std::optional<FlowFraction> result;
        int first_leaf = -1;
        for (int w : leaves) {
            FlowFraction r = pullFt_term(shape, w);
            if (!result) {
                result = r;
                first_leaf = w;
            } else if (*result != r) {
                throw InconsistentFtError(t, first_leaf, w, *result, r);
            }
        }
        return *result;
    }

    FlowFraction pullFt_term(const TreeShape& shape, int w) {
        int v = shape.parent[w];
        int u = shape.parent[v];
        RootedTree t_uw = rebuild_moving_leaf(shape, w, u);
        RootedTree bottom = rebuild_bottom(shape, v, w);
        RootedTree s_prime = shape.subtree(v);
        FlowFraction prod = Ft(bottom) * Ft(s_prime);
        BTPoly one_minus_t(std::vector<BPoly>{BPoly(Rational(1)), BPoly(Rational(-1))});
        return Ft(t_uw) + prod * FlowFraction(one_minus_t, 0);
    }

    // The tree with leaf w re-attached under vertex dest instead of its
    // parent.
    static RootedTree rebuild_moving_leaf(const TreeShape& shape, int w, int dest) {
        std::function<RootedTree(int)> rec = [&](int x) -> RootedTree {
            std::vector<RootedTree> ch;
            for (int c : shape.children[x])
                if (c != w) ch.push_back(rec(c));
            if (x == dest) ch.push_back(RootedTree::leaf());
            return RootedTree::b_plus(std::move(ch));
        };
        return rec(0);
    }

    // S of the pull-up identities: everything above v removed (the pulled
    // leaf w sits above v, so it disappears as well).
    static RootedTree rebuild_bottom(const TreeShape& shape, int v, int /*w*/) {
        std::function<RootedTree(int)> rec = [&](int x) -> RootedTree {
            if (x == v) return RootedTree::leaf();
            std::vector<RootedTree> ch;
            for (int c : shape.children[x]) ch.push_back(rec(c));
            return RootedTree::b_plus(std::move(ch));
        };
        return rec(0);
    }

    std::mutex mu_;
    std::map<std::string, FlowFraction> e_, ec_, ft_;
    std::map<std::string, BPoly> f_;
};

/// The bijection between closed flows on linear trees and Dyck paths:
/// connected components map to indecomposable factors (root component
/// first), a connected closed flow strips its root output and one layer of
/// rate and recurses inside U ... R.
inline DyckPath rho(const RootedTree& carrier, const Flow& f) {
    if (!carrier.is_linear()) throw NotLinearError();
    if (!f.is_closed()) throw NotClosedError();
    std::size_t n = carrier.size();
    // On Lnr_n the preorder indices run root = 0 up to the top = n - 1, and
    // rate[v] sits on the edge v -> v - 1.
    std::function<std::string(std::size_t, std::size_t, std::vector<int>, std::vector<char>)>
        build = [&](std::size_t lo, std::size_t hi, std::vector<int> input,
                    std::vector<char> output) -> std::string {
        // [lo, hi) with its own closed flow.
        if (lo == hi) return "";
        // Rate leaving vertex v within the slice: everything entering at or
        // above v minus the outputs there (the slice is closed, so this is
        // the rate on the edge v -> v-1).
        auto rate_leaving = [&](std::size_t v) {
            long long acc = 0;
            for (std::size_t u = v; u < hi; ++u)
                acc += input[u - lo] - (output[u - lo] ? 1 : 0);
            return acc;
        };
        // Split off the component of lo: the maximal run of positive rates.
        std::size_t mid = lo + 1;
        while (mid < hi && rate_leaving(mid) > 0) ++mid;
        std::vector<int> head_in(input.begin(), input.begin() + (mid - lo));
        std::vector<char> head_out(output.begin(), output.begin() + (mid - lo));
        std::vector<int> tail_in(input.begin() + (mid - lo), input.end());
        std::vector<char> tail_out(output.begin() + (mid - lo), output.end());
        std::string rest = build(mid, hi, tail_in, tail_out);
        // head is a connected closed flow on mid - lo vertices.
        std::size_t m = mid - lo;
        if (m == 1) return "UR" + rest;
        // Root must be an output; strip it and one rate layer: the top
        // vertex loses one input.
        std::vector<int> inner_in(head_in.begin() + 1, head_in.end());
        std::vector<char> inner_out(head_out.begin() + 1, head_out.end());
        inner_in[m - 2] -= 1;
        return "U" + build(0, m - 1, inner_in, inner_out) + "R" + rest;
    };
    std::vector<int> input = f.input;
    std::vector<char> output = f.output;
    return DyckPath(build(0, n, input, output));
}

/// Inverse of rho.
inline Flow rho_inverse(const DyckPath& path) {
    std::size_t n = path.half_length();
    std::function<void(const std::string&, std::vector<int>&, std::vector<char>&)> build =
        [&](const std::string& w, std::vector<int>& input, std::vector<char>& output) {
            // w is a Dyck word; produce the closed flow on Lnr_{|w|/2}.
            std::size_t m = w.size() / 2;
            input.assign(m, 0);
            output.assign(m, 0);
            std::size_t pos = 0;
            std::size_t base = 0;
            while (pos < w.size()) {
                // next indecomposable factor
                int level = 0;
                std::size_t start = pos;
                do {
                    level += w[pos] == 'U' ? 1 : -1;
                    ++pos;
                } while (level != 0);
                std::size_t fm = (pos - start) / 2;
                if (fm == 1) {
                    // empty flow on one vertex
                } else {
                    std::vector<int> inner_in;
                    std::vector<char> inner_out;
                    build(w.substr(start + 1, pos - start - 2), inner_in, inner_out);
                    output[base] = 1;
                    for (std::size_t j = 0; j < fm - 1; ++j) {
                        input[base + 1 + j] = inner_in[j];
                        output[base + 1 + j] = inner_out[j];
                    }
                    input[base + fm - 1] += 1;
                }
                base += fm;
            }
        };
    std::vector<int> input;
    std::vector<char> output;
    build(path.word(), input, output);
    auto f = make_flow(TreeShape(linear_tree(n)), output, input);
    if (!f || !f->is_closed()) throw NotDyckError("rho_inverse: internal mismatch");
    return *f;
}

/// Enumeration-side routes, kept separate from the recursions above so the
/// two can be compared.

/// b-polynomial of the class at fixed exit rate (column of the slice table).
inline BPoly oracle_poly(const RootedTree& t, FlowClass cls, long long exit) {
    auto counts = flow_slice_counts(t, cls, exit);
    std::vector<Rational> v;
    for (const auto& row : counts) v.push_back(Rational(row[exit]));
    return BPoly(std::move(v));
}

/// Truncated t-expansion of the class generating function by enumeration.
inline TruncatedTSeries oracle_expansion(const RootedTree& t, FlowClass cls, std::size_t M) {
    auto counts = flow_slice_counts(t, cls, static_cast<long long>(M));
    std::vector<BPoly> c(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        std::vector<Rational> v;
        for (const auto& row : counts) v.push_back(Rational(row[i]));
        c[i] = BPoly(std::move(v));
    }
    return TruncatedTSeries(std::move(c));
}

/// Exact fraction recovered from enumeration data alone.
inline FlowFraction oracle_fraction(const RootedTree& t, FlowClass cls, unsigned pole_bound,
                                    unsigned numdeg_bound) {
    auto s = oracle_expansion(t, cls, pole_bound + numdeg_bound + 2);
    return ff_reconstruct(s, pole_bound, numdeg_bound);
}

/// Verifies, with coefficients taken from the flow oracle on linear trees,
/// the ordinary generating series equations E = E^c/(1 - E^c),
/// E^c = x(1 + bE), and the t-refined equation
/// E_t = x/(1-t) (1 + E_t) + bx/t (E_t - E).
inline std::vector<IdentityCheck> linear_ordinary_series_check(std::size_t N) {
    std::vector<BPoly> E(N + 1), Ec(N + 1);
    std::vector<FlowFraction> Et(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        RootedTree t = linear_tree(n);
        E[n] = oracle_poly(t, FlowClass::Closed, 0);
        Ec[n] = oracle_poly(t, FlowClass::Connected, 0);
        Et[n] = oracle_fraction(t, FlowClass::All, static_cast<unsigned>(n),
                                static_cast<unsigned>(n));
    }
    std::vector<IdentityCheck> out;
    auto push = [&](const std::string& id, bool ok, const std::string& w) {
        out.push_back({id, ok, ok ? "" : w});
    };
    bool ok1 = true, ok2 = true, ok3 = true;
    std::string w1, w2, w3;
    for (std::size_t n = 1; n <= N; ++n) {
        BPoly rhs1 = Ec[n];
        for (std::size_t a = 1; a < n; ++a) rhs1 += Ec[a] * E[n - a];
        if (E[n] != rhs1 && ok1) { ok1 = false; w1 = "x^" + std::to_string(n); }
        BPoly rhs2 = (n == 1 ? BPoly(Rational(1)) : BPoly()) +
                     (n >= 2 ? BPoly::monomial(1) * E[n - 1] : BPoly());
        if (Ec[n] != rhs2 && ok2) { ok2 = false; w2 = "x^" + std::to_string(n); }
        FlowFraction prev = n >= 2 ? Et[n - 1] : FlowFraction();
        FlowFraction rhs3 =
            (prev + FlowFraction(Rational(n == 1 ? 1 : 0))) * FlowFraction::inv_one_minus_t(1);
        if (n >= 2) {
            FlowFraction over_t = (prev - FlowFraction(E[n - 1])).divided_by_t();
            over_t.scale(BPoly::monomial(1));
            rhs3 += over_t;
        }
        if (Et[n] != rhs3 && ok3) { ok3 = false; w3 = "x^" + std::to_string(n); }
    }
    push("usual_eq: E = E^c + E^c E", ok1, w1);
    push("usual_eq: E^c = x(1 + b E)", ok2, w2);
    push("E_t = x/(1-t)(1+E_t) + bx/t(E_t - E)", ok3, w3);
    return out;
}

/// One row of the fork-formula scan.
struct ForkCheckRow {
    std::size_t stem, total, size;
    long long oracle;
    Int formula;
    bool ok;
};

/// Compares closed-flow counts on Frk_{i,n-i} against
/// C(i,k) C(n,k) - C(i+1,k+1) C(n-1,k-1) for all i and k.
inline std::vector<ForkCheckRow> fork_conjecture_check(std::size_t n) {
    if (n < 2) throw InvalidParamsError("fork check needs n >= 2");
    std::vector<ForkCheckRow> rows;
    for (std::size_t i = 1; i <= n; ++i) {
        RootedTree t = fork(i, n - i);
        auto counts = flow_slice_counts(t, FlowClass::Closed, 0);
        for (std::size_t k = 0; k <= n; ++k) {
            Int formula = binomial(i, k) * binomial(n, k) -
                          binomial(i + 1, k + 1) * binomial(n - 1, k - 1);
            long long oracle = k < counts.size() ? counts[k][0] : 0;
            rows.push_back({i, n, k, oracle, formula, Int(oracle) == formula});
        }
    }
    return rows;
}

}  // namespace treeflow

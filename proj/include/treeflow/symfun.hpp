#pragma once

#include "treeflow/dend_flows.hpp"

#include <optional>

namespace treeflow {

struct DegreeTooLargeError : std::invalid_argument {
    DegreeTooLargeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Homogeneous element of Sym of degree n in the ribbon Schur basis: words
/// over {+,-} of length n - 1.
template <class R>
class RibbonElement {
  public:
    explicit RibbonElement(int n) : n_(n) {}

    int degree() const { return n_; }
    R coeff(const std::string& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? Ring<R>::zero() : it->second;
    }
    void set(const std::string& w, R v) {
        if (static_cast<int>(w.size()) != n_ - 1)
            throw std::invalid_argument("ribbon word of wrong length");
        if (ring_is_zero(v))
            c_.erase(w);
        else
            c_[w] = std::move(v);
    }
    void add(const std::string& w, const R& v) { set(w, coeff(w) + v); }
    const std::map<std::string, R>& raw() const { return c_; }

    friend bool operator==(const RibbonElement& a, const RibbonElement& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const RibbonElement& a, const RibbonElement& b) {
        return !(a == b);
    }

    RibbonElement& scale(const R& x) {
        if (ring_is_zero(x)) c_.clear();
        for (auto& [w, v] : c_) v = v * x;
        return *this;
    }

    static std::string first_difference(const RibbonElement& a, const RibbonElement& b) {
        std::map<std::string, char> keys;
        for (const auto& [w, v] : a.c_) keys[w] = 1;
        for (const auto& [w, v] : b.c_) keys[w] = 1;
        for (const auto& [w, unused] : keys)
            if (a.coeff(w) != b.coeff(w)) return "'" + w + "'";
        return "";
    }

  private:
    int n_;
    std::map<std::string, R> c_;
};

/// The graded product of Sym on ribbons: eps * delta = eps+delta + eps-delta.
template <class R>
RibbonElement<R> ribbon_product(const RibbonElement<R>& x, const RibbonElement<R>& y) {
    RibbonElement<R> r(x.degree() + y.degree());
    for (const auto& [w1, v1] : x.raw())
        for (const auto& [w2, v2] : y.raw()) {
            R v = v1 * v2;
            if (ring_is_zero(v)) continue;
            r.add(w1 + "+" + w2, v);
            r.add(w1 + "-" + w2, v);
        }
    return r;
}

namespace symfun_detail {

// Words <-> descent subsets of {0..n-2} as bitmasks ('-' marks a descent).
inline std::string mask_to_word(unsigned mask, int n) {
    std::string w;
    for (int i = 0; i + 1 < n; ++i) w += (mask >> i & 1) ? '-' : '+';
    return w;
}
inline unsigned word_to_mask(const std::string& w) {
    unsigned m = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == '-') m |= 1u << i;
    return m;
}

// Internal product on the complete basis X_S = sum_{Des subset S}: the
// structure constants come from nonnegative integer matrices with given row
// and column sums, read column by column. Cached per degree.
struct InternalTable {
    int n;
    // product[maskI][maskJ] = list of (maskK, multiplicity)
    std::vector<std::vector<std::vector<std::pair<unsigned, long long>>>> product;
};

inline std::vector<long long> mask_to_composition(unsigned mask, int n) {
    std::vector<long long> parts;
    long long run = 0;
    for (int i = 0; i < n; ++i) {
        ++run;
        if (i + 1 == n || (mask >> i & 1)) {
            parts.push_back(run);
            run = 0;
        }
    }
    return parts;
}
inline unsigned composition_to_mask(const std::vector<long long>& parts) {
    unsigned m = 0;
    long long pos = -1;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        pos += parts[i];
        m |= 1u << pos;
    }
    return m;
}

inline void enumerate_matrices(const std::vector<long long>& rows,
                               const std::vector<long long>& cols,
                               std::vector<std::vector<long long>>& m, std::size_t r,
                               std::vector<long long>& colrem,
                               const std::function<void()>& emit) {
    if (r == rows.size()) {
        for (long long c : colrem)
            if (c != 0) return;
        emit();
        return;
    }
    std::function<void(std::size_t, long long)> fill = [&](std::size_t c, long long rem) {
        if (c == cols.size()) {
            if (rem == 0) enumerate_matrices(rows, cols, m, r + 1, colrem, emit);
            return;
        }
        long long top = std::min(rem, colrem[c]);
        for (long long x = 0; x <= top; ++x) {
            m[r][c] = x;
            colrem[c] -= x;
            fill(c + 1, rem - x);
            colrem[c] += x;
        }
        m[r][c] = 0;
    };
    fill(0, rows[r]);
}

inline const InternalTable& internal_table(int n) {
    static std::mutex mu;
    static std::map<int, InternalTable> cache;
    std::scoped_lock lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    InternalTable table;
    table.n = n;
    unsigned count = 1u << (n - 1);
    table.product.assign(count, std::vector<std::vector<std::pair<unsigned, long long>>>(count));
    for (unsigned mi = 0; mi < count; ++mi) {
        auto I = mask_to_composition(mi, n);
        for (unsigned mj = 0; mj < count; ++mj) {
            auto J = mask_to_composition(mj, n);
            std::map<unsigned, long long> acc;
            std::vector<std::vector<long long>> m(I.size(),
                                                  std::vector<long long>(J.size(), 0));
            std::vector<long long> colrem = J;
            enumerate_matrices(I, J, m, 0, colrem, [&] {
                // read column by column, dropping zeros
                std::vector<long long> comp;
                for (std::size_t c = 0; c < J.size(); ++c)
                    for (std::size_t r = 0; r < I.size(); ++r)
                        if (m[r][c] != 0) comp.push_back(m[r][c]);
                ++acc[composition_to_mask(comp)];
            });
            auto& cell = table.product[mi][mj];
            cell.assign(acc.begin(), acc.end());
        }
    }
    return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace symfun_detail

/// Solomon's internal product of degree-n descent-algebra elements, computed
/// in the ribbon basis through the complete basis X_S = sum_{T subset S} R_T.
template <class R>
RibbonElement<R> ribbon_internal_product(const RibbonElement<R>& x,
                                         const RibbonElement<R>& y) {
    if (x.degree() != y.degree())
        throw std::invalid_argument("internal product needs equal degrees");
    int n = x.degree();
    unsigned count = 1u << (n - 1);
    using symfun_detail::mask_to_word;
    using symfun_detail::word_to_mask;
    // ribbon -> complete basis: R_S = sum_{T subset S} (-1)^{|S \ T|} X_T
    std::vector<R> xs(count, Ring<R>::zero()), ys(count, Ring<R>::zero());
    auto to_complete = [&](const RibbonElement<R>& e, std::vector<R>& out) {
        for (const auto& [w, v] : e.raw()) {
            unsigned s = word_to_mask(w);
            for (unsigned t = s;; t = (t - 1) & s) {
                int sign = __builtin_popcount(s ^ t) % 2 == 0 ? 1 : -1;
                out[t] = out[t] + ring_mul_rat(v, Rational(sign));
                if (t == 0) break;
            }
        }
    };
    to_complete(x, xs);
    to_complete(y, ys);
    const auto& table = symfun_detail::internal_table(n);
    std::vector<R> zs(count, Ring<R>::zero());
    for (unsigned mi = 0; mi < count; ++mi) {
        if (ring_is_zero(xs[mi])) continue;
        for (unsigned mj = 0; mj < count; ++mj) {
            if (ring_is_zero(ys[mj])) continue;
            R v = xs[mi] * ys[mj];
            for (const auto& [mk, mult] : table.product[mi][mj])
                zs[mk] = zs[mk] + ring_mul_rat(v, Rational(mult));
        }
    }
    // complete -> ribbon: X_S = sum_{T subset S} R_T
    RibbonElement<R> out(n);
    for (unsigned s = 0; s < count; ++s) {
        if (ring_is_zero(zs[s])) continue;
        for (unsigned t = s;; t = (t - 1) & s) {
            out.add(mask_to_word(t, n), zs[s]);
            if (t == 0) break;
        }
    }
    return out;
}

/// Result of testing a dendriform series for membership in Sym at one
/// degree: either the ribbon preimage or a witness pair of trees with the
/// same canopy and different coefficients.
template <class R>
struct SymMembership {
    bool in_sym = false;
    std::optional<RibbonElement<R>> ribbon;
    std::string witness_a, witness_b;
};

template <class R>
SymMembership<R> sym_membership(const DendSeries<R>& s, int n) {
    SymMembership<R> out;
    RibbonElement<R> rib(n);
    std::map<std::string, std::string> rep;  // canopy -> first tree
    for (const auto& t : enumerate_pbtrees(n)) {
        std::string w = t.canopy();
        auto it = rep.find(w);
        if (it == rep.end()) {
            rep[w] = t.encode();
            rib.set(w, s.coeff(t));
        } else if (s.coeff(t) != rib.coeff(w)) {
            out.in_sym = false;
            out.witness_a = it->second;
            out.witness_b = t.encode();
            return out;
        }
    }
    out.in_sym = true;
    out.ribbon = std::move(rib);
    return out;
}

/// Sym -> Dend: a ribbon word maps to the sum of all trees with that canopy.
template <class R>
DendSeries<R> sym_embedding(const RibbonElement<R>& x, int N) {
    DendSeries<R> out(N);
    for (const auto& t : enumerate_pbtrees(x.degree())) {
        R v = x.coeff(t.canopy());
        if (!ring_is_zero(v)) out.set(t, v);
    }
    return out;
}

/// Quasi-idempotency x * x = c x in the internal (descent algebra) product,
/// plus the identity-coefficient normalization n [w = (+)^(n-1)] x = c.
template <class R>
std::vector<IdentityCheck> quasi_idempotent_check(const RibbonElement<R>& x, const R& scalar,
                                                  const std::string& label) {
    std::vector<IdentityCheck> out;
    RibbonElement<R> sq = ribbon_internal_product(x, x);
    RibbonElement<R> rhs = x;
    rhs.scale(scalar);
    std::string w = RibbonElement<R>::first_difference(sq, rhs);
    out.push_back({label + ": x.x = c x", w.empty(), w});
    R lead = ring_mul_rat(x.coeff(std::string(x.degree() - 1, '+')),
                          Rational(x.degree()));
    out.push_back({label + ": n (+^(n-1)-coefficient) = c", lead == scalar,
                   lead == scalar ? "" : "identity coefficient off"});
    return out;
}

/// Permutations of {1..n} in one-line notation.
using Permutation = std::vector<int>;

template <class R>
struct GroupRingElement {
    int n;
    std::map<Permutation, R> c;

    R coeff(const Permutation& p) const {
        auto it = c.find(p);
        return it == c.end() ? Ring<R>::zero() : it->second;
    }
    void add(const Permutation& p, const R& v) {
        auto [it, fresh] = c.try_emplace(p, v);
        if (!fresh) {
            it->second = it->second + v;
            if (ring_is_zero(it->second)) c.erase(it);
        }
    }
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.n == b.n && a.c == b.c;
    }
};

namespace symfun_detail {

inline std::vector<Permutation> all_permutations(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    std::vector<Permutation> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline unsigned descent_mask(const Permutation& p) {
    unsigned m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) m |= 1u << i;
    return m;
}

}  // namespace symfun_detail

/// Ribbon word -> sum of the permutations with exactly that descent set.
template <class R>
GroupRingElement<R> groupring_oracle(const RibbonElement<R>& x) {
    if (x.degree() > 7)
        throw DegreeTooLargeError("group-ring oracle capped at degree 7");
    GroupRingElement<R> out{x.degree(), {}};
    for (const auto& p : symfun_detail::all_permutations(x.degree())) {
        R v = x.coeff(symfun_detail::mask_to_word(symfun_detail::descent_mask(p), x.degree()));
        if (!ring_is_zero(v)) out.add(p, v);
    }
    return out;
}

/// Internal product of Q[S_n]: bilinear extension of composition
/// (sigma tau)(i) = sigma(tau(i)).
template <class R>
GroupRingElement<R> groupring_internal_product(const GroupRingElement<R>& a,
                                               const GroupRingElement<R>& b) {
    if (a.n != b.n) throw std::invalid_argument("internal product needs equal degrees");
    GroupRingElement<R> out{a.n, {}};
    for (const auto& [p, v1] : a.c)
        for (const auto& [q, v2] : b.c) {
            Permutation r(a.n);
            for (int i = 0; i < a.n; ++i) r[i] = p[q[i] - 1];
            out.add(r, v1 * v2);
        }
    return out;
}

/// The Lie idempotent families, as degree-n ribbon elements. D and F come
/// from the block-product rules, F_t from the word series, Z from the
/// z-polynomial blocks; all coefficients land in the fraction ring.
enum class IdempotentFamily { D, F, Ft, Z };

inline const char* family_name(IdempotentFamily f) {
    switch (f) {
        case IdempotentFamily::D: return "D";
        case IdempotentFamily::F: return "F";
        case IdempotentFamily::Ft: return "F_t";
        case IdempotentFamily::Z: return "Z";
    }
    return "?";
}

inline RibbonElement<FlowFraction> idempotent_ribbon(IdempotentFamily family, int n,
                                                     FlowCalculator& calc) {
    RibbonElement<FlowFraction> out(n);
    std::optional<WordSeries<FlowFraction>> ft_words;
    if (family == IdempotentFamily::Ft) {
        WordSeries<FlowFraction> w =
            N_series(calc, n + 1, true) * T_series(calc, n + 1) * P_series(calc, n + 1, true);
        BTPoly minus_one_minus_t(std::vector<BPoly>{BPoly(Rational(-1)), BPoly(Rational(1))});
        w.scale(FlowFraction(minus_one_minus_t, 0));
        ft_words = std::move(w);
    }
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::string w = symfun_detail::mask_to_word(mask, n);
        std::string full = "-" + w + "+";
        auto blocks = dend_detail::blocks_of(w.empty() ? std::string() : w);
        FlowFraction v;
        switch (family) {
            case IdempotentFamily::D: {
                v = FlowFraction(Rational(1));
                for (const auto& b : blocks) v *= FlowFraction(calc.ca(b.len));
                std::size_t mb = 0;
                for (const auto& b : blocks)
                    if (b.letter == '-') ++mb;
                if (!blocks.empty() && blocks.back().letter == '-') --mb;
                v.scale(BPoly::monomial(mb));
                if (dend_detail::count_letters(w, '-') % 2 == 1) v.scale(Rational(-1));
                break;
            }
            case IdempotentFamily::F: {
                auto fb = dend_detail::blocks_of(full);
                v = FlowFraction(Rational(1));
                for (const auto& b : fb) v *= FlowFraction(calc.ca(b.len));
                std::size_t mb = 0;
                for (const auto& b : fb)
                    if (b.letter == '-') ++mb;
                v.scale(BPoly::monomial(mb - 1));
                if ((dend_detail::count_letters(full, '-') - 1) % 2 == 1) v.scale(Rational(-1));
                break;
            }
            case IdempotentFamily::Ft:
                v = ft_words->coeff(full);
                break;
            case IdempotentFamily::Z: {
                auto fb = dend_detail::blocks_of(full);
                BPoly prod(Rational(1));
                for (std::size_t i = 0; i < fb.size(); i += 2) {
                    BPoly factor = z_poly(static_cast<long long>(fb[i].len) - 1,
                                          static_cast<long long>(fb[i + 1].len) - 1);
                    if (fb[i].len % 2 == 0) factor = -factor;
                    prod *= factor;
                }
                v = FlowFraction(prod.divexact_b(1));
                break;
            }
        }
        if (!v.is_zero()) out.set(w, v);
    }
    return out;
}

inline FlowFraction idempotent_scalar(IdempotentFamily family, int n, FlowCalculator& calc) {
    Rational nn(n);
    switch (family) {
        case IdempotentFamily::D: {
            BPoly ca = n >= 2 ? calc.ca(n - 1) : BPoly(Rational(1));
            ca.scale(nn);
            return FlowFraction(ca);
        }
        case IdempotentFamily::F: {
            BPoly ca = calc.ca(n);
            ca.scale(nn);
            return FlowFraction(ca);
        }
        case IdempotentFamily::Ft: {
            FlowFraction ca = calc.ca_t(n);
            ca.scale(nn);
            return ca;
        }
        case IdempotentFamily::Z:
            return FlowFraction(BPoly::monomial(n - 1, nn));
    }
    throw UnknownSeriesError("unhandled idempotent family");
}

/// Re-verification of a quasi-idempotency statement inside Q[S_n].
template <class R>
IdentityCheck groupring_idempotent_check(const RibbonElement<R>& x, const R& scalar,
                                         const std::string& label) {
    GroupRingElement<R> img = groupring_oracle(x);
    GroupRingElement<R> sq = groupring_internal_product(img, img);
    GroupRingElement<R> rhs = img;
    for (auto& [p, v] : rhs.c) v = v * scalar;
    bool ok = sq == rhs;
    return {label + ": group-ring x.x = c x", ok, ok ? "" : "group-ring mismatch"};
}

/// Graded (convolution) product of the permutation tower: sigma * tau is the
/// sum of the permutations whose first block standardizes to sigma and whose
/// second block standardizes to tau. Ribbon images multiply by the ribbon
/// rule under this product.
template <class R>
GroupRingElement<R> groupring_convolution(const GroupRingElement<R>& a,
                                          const GroupRingElement<R>& b) {
    int n = a.n + b.n;
    GroupRingElement<R> out{n, {}};
    std::vector<int> pick(a.n);
    for (const auto& [p, v1] : a.c)
        for (const auto& [q, v2] : b.c) {
            R v = v1 * v2;
            // choose the value set of the first block
            std::vector<int> idx(a.n);
            std::iota(idx.begin(), idx.end(), 1);
            while (true) {
                std::vector<char> used(n + 1, 0);
                for (int x : idx) used[x] = 1;
                std::vector<int> rest;
                for (int x = 1; x <= n; ++x)
                    if (!used[x]) rest.push_back(x);
                Permutation w(n);
                for (int i = 0; i < a.n; ++i) w[i] = idx[p[i] - 1];
                for (int j = 0; j < b.n; ++j) w[a.n + j] = rest[q[j] - 1];
                out.add(w, v);
                // next combination of {1..n} of size a.n
                int k = a.n;
                bool more = false;
                for (int j = k; j-- > 0;) {
                    if (idx[j] < n - k + j + 1) {
                        ++idx[j];
                        for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
                        more = true;
                        break;
                    }
                }
                if (!more) break;
            }
        }
    return out;
}

}  // namespace treeflow

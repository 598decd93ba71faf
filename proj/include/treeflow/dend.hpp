#pragma once

#include "treeflow/pbtree.hpp"
#include "treeflow/prelie.hpp"
#include "treeflow/words.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace treeflow {

struct UnitUndefinedError : std::domain_error {
    UnitUndefinedError() : std::domain_error("1 < 1 and 1 > 1 are undefined") {}
};
struct UnknownSeriesError : std::invalid_argument {
    UnknownSeriesError(const std::string& what) : std::invalid_argument(what) {}
};

namespace dend_detail {

/// Integer combination of planar binary trees (values of the half-products
/// on basis trees).
using TreePoly = std::map<std::string, long long>;

enum class HalfOp { Prec, Succ };

inline const TreePoly& tree_half_product(HalfOp op, const PBTree& a, const PBTree& b);

inline TreePoly tree_star(const PBTree& a, const PBTree& b) {
    if (a.is_unit() && b.is_unit()) throw UnitUndefinedError();
    if (a.is_unit()) return {{b.encode(), 1}};
    if (b.is_unit()) return {{a.encode(), 1}};
    TreePoly r = tree_half_product(HalfOp::Prec, a, b);
    for (const auto& [enc, c] : tree_half_product(HalfOp::Succ, a, b)) r[enc] += c;
    return r;
}

inline TreePoly compute_half_product(HalfOp op, const PBTree& a, const PBTree& b) {
    // a < b = a_l v (a_r * b);  a > b = (a * b_l) v b_r; units per convention.
    if (a.is_unit() || b.is_unit()) {
        if (a.is_unit() && b.is_unit()) throw UnitUndefinedError();
        if (op == HalfOp::Prec)
            return b.is_unit() ? TreePoly{{a.encode(), 1}} : TreePoly{};
        return a.is_unit() ? TreePoly{{b.encode(), 1}} : TreePoly{};
    }
    TreePoly r;
    if (op == HalfOp::Prec) {
        TreePoly inner = a.right().is_unit() ? TreePoly{{b.encode(), 1}}
                                             : tree_star(a.right(), b);
        for (const auto& [enc, c] : inner)
            r[PBTree(a.left(), PBTree::parse(enc)).encode()] += c;
    } else {
        TreePoly inner = b.left().is_unit() ? TreePoly{{a.encode(), 1}}
                                            : tree_star(a, b.left());
        for (const auto& [enc, c] : inner)
            r[PBTree(PBTree::parse(enc), b.right()).encode()] += c;
    }
    return r;
}

inline const TreePoly& tree_half_product(HalfOp op, const PBTree& a, const PBTree& b) {
    static std::mutex mu;
    static std::map<std::string, TreePoly> cache;
    std::string key = (op == HalfOp::Prec ? "<" : ">") + a.encode() + "|" + b.encode();
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    TreePoly value = compute_half_product(op, a, b);
    std::scoped_lock lk(mu);
    return cache.emplace(std::move(key), std::move(value)).first->second;
}

}  // namespace dend_detail

/// Series over planar binary trees, truncated at a degree. The coefficient
/// of the degree-0 unit tree is stored separately, for the formal "1 + ..."
/// series the dendriform half-products only partially tolerate.
template <class R>
class DendSeries {
  public:
    explicit DendSeries(int degree) : degree_(degree), unit_(Ring<R>::zero()) {}

    int degree() const { return degree_; }

    static DendSeries one(int degree) {
        DendSeries s(degree);
        s.unit_ = Ring<R>::one();
        return s;
    }
    /// The group unit: the one-vertex tree.
    static DendSeries vertex_series(int degree) {
        DendSeries s(degree);
        s.set(PBTree::vertex(), Ring<R>::one());
        return s;
    }

    const R& unit_coeff() const { return unit_; }
    void set_unit(R v) { unit_ = std::move(v); }

    R coeff(const PBTree& t) const {
        if (t.is_unit()) return unit_;
        auto it = c_.find(t.encode());
        return it == c_.end() ? Ring<R>::zero() : it->second;
    }
    void set(const PBTree& t, R v) {
        if (t.is_unit()) {
            unit_ = std::move(v);
            return;
        }
        if (static_cast<int>(t.degree()) > degree_) return;
        if (ring_is_zero(v))
            c_.erase(t.encode());
        else
            c_[t.encode()] = std::move(v);
    }
    void add(const PBTree& t, const R& v) { set(t, coeff(t) + v); }
    const std::map<std::string, R>& raw() const { return c_; }

    bool has_unit_part() const { return !ring_is_zero(unit_); }

    friend bool operator==(const DendSeries& a, const DendSeries& b) {
        return a.degree_ == b.degree_ && a.unit_ == b.unit_ && a.c_ == b.c_;
    }
    friend bool operator!=(const DendSeries& a, const DendSeries& b) { return !(a == b); }

    DendSeries operator+(const DendSeries& o) const {
        DendSeries r = *this;
        r.unit_ = r.unit_ + o.unit_;
        for (const auto& [enc, v] : o.c_) r.add(PBTree::parse(enc), v);
        return r;
    }
    DendSeries operator-(const DendSeries& o) const {
        DendSeries r = *this;
        r.unit_ = r.unit_ - o.unit_;
        for (const auto& [enc, v] : o.c_) r.add(PBTree::parse(enc), ring_mul_rat(v, Rational(-1)));
        return r;
    }

    DendSeries& scale(const R& x) {
        if (ring_is_zero(x)) return *this = DendSeries(degree_);
        unit_ = unit_ * x;
        for (auto& [enc, v] : c_) v = v * x;
        return *this;
    }
    DendSeries& scale_rat(const Rational& q) {
        if (q.is_zero()) return *this = DendSeries(degree_);
        unit_ = ring_mul_rat(unit_, q);
        for (auto& [enc, v] : c_) v = ring_mul_rat(v, q);
        return *this;
    }

    /// Sign twist (-1)^(n-1) on degree n; fixes the unit coefficient.
    DendSeries suspension() const {
        DendSeries r(degree_);
        r.unit_ = unit_;
        for (const auto& [enc, v] : c_) {
            PBTree t = PBTree::parse(enc);
            r.set(t, t.degree() % 2 == 1 ? v : ring_mul_rat(v, Rational(-1)));
        }
        return r;
    }
    DendSeries reversal() const {
        DendSeries r(degree_);
        r.unit_ = unit_;
        for (const auto& [enc, v] : c_) r.set(PBTree::parse(enc).reversal(), v);
        return r;
    }
    /// Bar involution: suspension composed with left-right reversal.
    DendSeries bar() const { return suspension().reversal(); }

    static std::string first_difference(const DendSeries& a, const DendSeries& b) {
        if (a.unit_ != b.unit_) return "(unit)";
        int n_max = std::min(a.degree_, b.degree_);
        for (int n = 1; n <= n_max; ++n)
            for (const auto& t : enumerate_pbtrees(n))
                if (a.coeff(t) != b.coeff(t)) return t.encode();
        return "";
    }

  private:
    int degree_;
    R unit_;
    std::map<std::string, R> c_;
};

/// x < y. Defined unless both series carry a unit part; t < 1 = t, 1 < t = 0.
template <class R>
DendSeries<R> dend_prec(const DendSeries<R>& x, const DendSeries<R>& y) {
    if (x.has_unit_part() && y.has_unit_part()) throw UnitUndefinedError();
    DendSeries<R> r(x.degree());
    for (const auto& [e1, v1] : x.raw()) {
        if (!ring_is_zero(y.unit_coeff())) r.add(PBTree::parse(e1), v1 * y.unit_coeff());
        PBTree a = PBTree::parse(e1);
        for (const auto& [e2, v2] : y.raw()) {
            PBTree b = PBTree::parse(e2);
            if (static_cast<int>(a.degree() + b.degree()) > r.degree()) continue;
            R w = v1 * v2;
            if (ring_is_zero(w)) continue;
            for (const auto& [enc, c] :
                 dend_detail::tree_half_product(dend_detail::HalfOp::Prec, a, b))
                r.add(PBTree::parse(enc), ring_mul_rat(w, Rational(c)));
        }
    }
    return r;
}

/// x > y, mirror conventions.
template <class R>
DendSeries<R> dend_succ(const DendSeries<R>& x, const DendSeries<R>& y) {
    if (x.has_unit_part() && y.has_unit_part()) throw UnitUndefinedError();
    DendSeries<R> r(x.degree());
    for (const auto& [e2, v2] : y.raw()) {
        if (!ring_is_zero(x.unit_coeff())) r.add(PBTree::parse(e2), x.unit_coeff() * v2);
        PBTree b = PBTree::parse(e2);
        for (const auto& [e1, v1] : x.raw()) {
            PBTree a = PBTree::parse(e1);
            if (static_cast<int>(a.degree() + b.degree()) > r.degree()) continue;
            R w = v1 * v2;
            if (ring_is_zero(w)) continue;
            for (const auto& [enc, c] :
                 dend_detail::tree_half_product(dend_detail::HalfOp::Succ, a, b))
                r.add(PBTree::parse(enc), ring_mul_rat(w, Rational(c)));
        }
    }
    return r;
}

/// The associative product x * y = x < y + x > y (units act as scalars).
template <class R>
DendSeries<R> dend_star(const DendSeries<R>& x, const DendSeries<R>& y) {
    DendSeries<R> r(x.degree());
    r.set_unit(x.unit_coeff() * y.unit_coeff());
    for (const auto& [e, v] : x.raw()) r.add(PBTree::parse(e), v * y.unit_coeff());
    for (const auto& [e, v] : y.raw()) r.add(PBTree::parse(e), x.unit_coeff() * v);
    for (const auto& [e1, v1] : x.raw())
        for (const auto& [e2, v2] : y.raw()) {
            PBTree a = PBTree::parse(e1), b = PBTree::parse(e2);
            if (static_cast<int>(a.degree() + b.degree()) > r.degree()) continue;
            R w = v1 * v2;
            if (ring_is_zero(w)) continue;
            for (const auto& [enc, c] : dend_detail::tree_star(a, b))
                r.add(PBTree::parse(enc), ring_mul_rat(w, Rational(c)));
        }
    return r;
}

/// x v_y z = x > y < z; when y is the one-vertex series this is the join
/// (and the unit parts of x and z are allowed).
template <class R>
DendSeries<R> dend_vee_mid(const DendSeries<R>& x, const DendSeries<R>& y,
                           const DendSeries<R>& z) {
    return dend_prec(dend_succ(x, y), z);
}

/// x v z: bilinear join (a new root below).
template <class R>
DendSeries<R> dend_vee(const DendSeries<R>& x, const DendSeries<R>& z) {
    DendSeries<R> r(x.degree());
    auto items = [](const DendSeries<R>& s) {
        std::vector<std::pair<PBTree, R>> v;
        if (!ring_is_zero(s.unit_coeff())) v.push_back({PBTree::unit(), s.unit_coeff()});
        for (const auto& [enc, c] : s.raw()) v.push_back({PBTree::parse(enc), c});
        return v;
    };
    for (const auto& [a, va] : items(x))
        for (const auto& [b, vb] : items(z)) {
            if (static_cast<int>(a.degree() + b.degree() + 1) > r.degree()) continue;
            r.add(PBTree(a, b), va * vb);
        }
    return r;
}

/// Composition gamma(U; a) of the dendriform group, with the root vertex of
/// every target tree receiving mid and the others receiving rest.
template <class R>
DendSeries<R> dend_diamond(const DendSeries<R>& s, const DendSeries<R>& mid,
                           const DendSeries<R>& rest) {
    if (s.degree() != mid.degree() || s.degree() != rest.degree())
        throw TruncationMismatchError();
    int N = s.degree();
    std::map<std::string, DendSeries<R>> gamma_rest;  // full substitution by rest
    std::function<const DendSeries<R>&(const PBTree&)> gamma =
        [&](const PBTree& u) -> const DendSeries<R>& {
        auto it = gamma_rest.find(u.encode());
        if (it != gamma_rest.end()) return it->second;
        DendSeries<R> val(N);
        if (u.is_unit())
            val = DendSeries<R>::one(N);
        else
            val = dend_vee_mid(gamma(u.left()), rest, gamma(u.right()));
        return gamma_rest.emplace(u.encode(), std::move(val)).first->second;
    };
    DendSeries<R> out(N);
    out.set_unit(s.unit_coeff());
    for (const auto& [enc, v] : s.raw()) {
        PBTree u = PBTree::parse(enc);
        DendSeries<R> g = dend_vee_mid(gamma(u.left()), mid, gamma(u.right()));
        g.scale(v);
        out = out + g;
    }
    return out;
}

/// Group law of the dendriform series group.
template <class R>
DendSeries<R> dend_compose(const DendSeries<R>& s, const DendSeries<R>& t) {
    return dend_diamond(s, t, t);
}

/// R: the positive sum of all right combs (solution of R = . + . < R).
template <class R>
DendSeries<R> right_comb_series(int N) {
    DendSeries<R> s(N);
    for (int n = 1; n <= N; ++n) s.set(right_comb(n), Ring<R>::one());
    return s;
}
/// L: the alternating sum of all left combs (solution of L = -. - L > .).
template <class R>
DendSeries<R> left_comb_series(int N) {
    DendSeries<R> s(N);
    for (int n = 1; n <= N; ++n)
        s.set(left_comb(n), Ring<R>::from_rational(Rational(n % 2 == 1 ? -1 : 1)));
    return s;
}

enum class CanopyMode { RightCompleted, LeftCompleted, Full };

/// Lift a word series to trees through the requested canopy variant.
template <class R>
DendSeries<R> lift_by_canopy(const WordSeries<R>& w, CanopyMode mode, int N) {
    DendSeries<R> out(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_pbtrees(n)) {
            std::string key;
            switch (mode) {
                case CanopyMode::RightCompleted: key = t.right_completed_canopy(); break;
                case CanopyMode::LeftCompleted: key = t.left_completed_canopy(); break;
                case CanopyMode::Full: key = t.full_canopy(); break;
            }
            R v = w.coeff(key);
            if (!ring_is_zero(v)) out.set(t, std::move(v));
        }
    return out;
}

namespace dend_detail {

using RatPoly = std::map<std::string, Rational>;  // PBTree combinations over Q

inline RatPoly rat_half(HalfOp op, const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    for (const auto& [e1, v1] : a)
        for (const auto& [e2, v2] : b) {
            Rational w = v1 * v2;
            if (w.is_zero()) continue;
            for (const auto& [enc, c] :
                 tree_half_product(op, PBTree::parse(e1), PBTree::parse(e2))) {
                Rational add = w * Rational(c);
                auto [it, fresh] = r.try_emplace(enc, add);
                if (!fresh) {
                    it->second += add;
                    if (it->second.is_zero()) r.erase(it);
                }
            }
        }
    return r;
}

/// phi on a single rooted tree, through the grafting factorization
/// B_+(T_1..T_k) = B_+(T_1..T_{k-1}) <- T_k - sum_i B_+(.. T_i <- T_k ..)
/// and phi(x <- y) = phi(y) > phi(x) - phi(x) < phi(y).
inline const RatPoly& phi_tree(const RootedTree& t) {
    static std::mutex mu;
    static std::map<std::string, RatPoly> cache;
    {
        std::scoped_lock lk(mu);
        auto it = cache.find(t.encode());
        if (it != cache.end()) return it->second;
    }
    RatPoly value;
    if (t.size() == 1) {
        value[PBTree::vertex().encode()] = Rational(1);
    } else {
        const auto& children = t.children();
        std::size_t k = children.size();
        std::vector<RootedTree> rest(children.begin(), children.end() - 1);
        RootedTree head = RootedTree::b_plus(rest);
        const RootedTree& last = children.back();
        RatPoly a = phi_tree(head);
        RatPoly b = phi_tree(last);
        // phi(head <- last)
        value = rat_half(HalfOp::Succ, b, a);
        for (const auto& [enc, v] : rat_half(HalfOp::Prec, a, b)) {
            auto [it, fresh] = value.try_emplace(enc, -v);
            if (!fresh) {
                it->second -= v;
                if (it->second.is_zero()) value.erase(it);
            }
        }
        // minus the grafts inside the first k-1 subtrees
        for (std::size_t i = 0; i + 1 < k; ++i) {
            TreeShape shape(rest[i]);
            for (std::size_t v2 = 0; v2 < shape.size(); ++v2) {
                std::vector<RootedTree> mod = rest;
                mod[i] = graft_at(rest[i], static_cast<int>(v2), last);
                RootedTree g = RootedTree::b_plus(std::move(mod));
                for (const auto& [enc, v] : phi_tree(g)) {
                    auto [it, fresh] = value.try_emplace(enc, -v);
                    if (!fresh) {
                        it->second -= v;
                        if (it->second.is_zero()) value.erase(it);
                    }
                }
            }
        }
    }
    std::scoped_lock lk(mu);
    return cache.emplace(t.encode(), std::move(value)).first->second;
}

}  // namespace dend_detail

/// The injective operad morphism from Pre-Lie to Dendriform, applied to a
/// series (the aut normalization of the Pre-Lie side is consumed here).
template <class R>
DendSeries<R> phi(const PreLieSeries<R>& s) {
    DendSeries<R> out(s.degree());
    for (const auto& [enc, v] : s.raw()) {
        RootedTree t = RootedTree::parse(enc);
        R w = ring_mul_rat(v, Rational(1, t.aut()));
        for (const auto& [penc, q] : dend_detail::phi_tree(t))
            out.add(PBTree::parse(penc), ring_mul_rat(w, q));
    }
    return out;
}

}  // namespace treeflow

#pragma once

#include "treeflow/bpoly.hpp"

#include <string>
#include <vector>

namespace treeflow {

struct NotDivisibleError : std::domain_error {
    NotDivisibleError(const char* what) : std::domain_error(what) {}
};
struct ReconstructionFailed : std::runtime_error {
    ReconstructionFailed(const std::string& what) : std::runtime_error(what) {}
};
struct NotInvertibleError : std::domain_error {
    NotInvertibleError() : std::domain_error("FlowFraction: not invertible") {}
};

/// Polynomial in b and t, stored by t-degree: t_[i] is the BPoly coefficient
/// of t^i. Trailing zero entries stripped.
class BTPoly {
  public:
    BTPoly() = default;
    BTPoly(const BPoly& p) {
        if (!p.is_zero()) t_.push_back(p);
    }
    BTPoly(const Rational& c) : BTPoly(BPoly(c)) {}
    explicit BTPoly(std::vector<BPoly> tcoeffs) : t_(std::move(tcoeffs)) { strip(); }

    bool is_zero() const { return t_.empty(); }
    int tdeg() const { return static_cast<int>(t_.size()) - 1; }
    const BPoly& tcoeff(std::size_t i) const {
        static const BPoly kZero;
        return i < t_.size() ? t_[i] : kZero;
    }
    int bdeg() const {
        int d = -1;
        for (const auto& p : t_) d = std::max(d, p.degree());
        return d;
    }

    BPoly eval_t0() const { return tcoeff(0); }
    BPoly eval_t1() const {
        BPoly s;
        for (const auto& p : t_) s += p;
        return s;
    }

    BTPoly operator-() const {
        BTPoly r(*this);
        for (auto& p : r.t_) p = -p;
        return r;
    }
    BTPoly& operator+=(const BTPoly& o) {
        if (t_.size() < o.t_.size()) t_.resize(o.t_.size());
        for (std::size_t i = 0; i < o.t_.size(); ++i) t_[i] += o.t_[i];
        strip();
        return *this;
    }
    BTPoly& operator-=(const BTPoly& o) { return *this += -o; }
    friend BTPoly operator+(BTPoly a, const BTPoly& b) { return a += b; }
    friend BTPoly operator-(BTPoly a, const BTPoly& b) { return a -= b; }
    friend BTPoly operator*(const BTPoly& a, const BTPoly& b) {
        if (a.is_zero() || b.is_zero()) return BTPoly();
        std::vector<BPoly> v(a.t_.size() + b.t_.size() - 1);
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            for (std::size_t j = 0; j < b.t_.size(); ++j) v[i + j] += a.t_[i] * b.t_[j];
        return BTPoly(std::move(v));
    }
    friend bool operator==(const BTPoly& a, const BTPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BTPoly& a, const BTPoly& b) { return !(a == b); }

    BTPoly& scale(const BPoly& c) {
        if (c.is_zero()) {
            t_.clear();
            return *this;
        }
        for (auto& p : t_) p *= c;
        return *this;
    }

    /// Multiply by t^k.
    BTPoly shifted_t(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<BPoly> v(t_.size() + k);
        std::copy(t_.begin(), t_.end(), v.begin() + k);
        return BTPoly(std::move(v));
    }

    bool divisible_by_t() const { return is_zero() || t_[0].is_zero(); }
    BTPoly divexact_t() const {
        if (!divisible_by_t()) throw NotDivisibleError("BTPoly: nonzero at t = 0");
        if (is_zero()) return *this;
        return BTPoly(std::vector<BPoly>(t_.begin() + 1, t_.end()));
    }

    bool divisible_by_one_minus_t() const { return eval_t1().is_zero(); }
    /// Exact quotient by (1 - t); requires the numerator to vanish at t = 1.
    BTPoly divexact_one_minus_t() const {
        if (is_zero()) return *this;
        if (!divisible_by_one_minus_t())
            throw NotDivisibleError("BTPoly: nonzero at t = 1");
        // p = (1 - t) q  <=>  q_i = p_i + q_{i-1}.
        std::vector<BPoly> q(t_.size() - 1);
        BPoly acc;
        for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
            acc += t_[i];
            q[i] = acc;
        }
        return BTPoly(std::move(q));
    }
    BTPoly times_one_minus_t() const {
        if (is_zero()) return *this;
        std::vector<BPoly> v(t_.size() + 1);
        for (std::size_t i = 0; i < t_.size(); ++i) {
            v[i] += t_[i];
            v[i + 1] -= t_[i];
        }
        return BTPoly(std::move(v));
    }

  private:
    void strip() {
        while (!t_.empty() && t_.back().is_zero()) t_.pop_back();
    }
    std::vector<BPoly> t_;
};

/// Degree-truncated series in t with BPoly coefficients; coeffs()[i] is the
/// coefficient of t^i and order() = coeffs().size() - 1. Binary operations
/// truncate to the smaller order.
class TruncatedTSeries {
  public:
    TruncatedTSeries() = default;
    explicit TruncatedTSeries(std::vector<BPoly> coeffs) : c_(std::move(coeffs)) {}
    static TruncatedTSeries zero(std::size_t order) {
        return TruncatedTSeries(std::vector<BPoly>(order + 1));
    }
    static TruncatedTSeries constant(const BPoly& p, std::size_t order) {
        std::vector<BPoly> v(order + 1);
        v[0] = p;
        return TruncatedTSeries(std::move(v));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BPoly>& coeffs() const { return c_; }
    const BPoly& coeff(std::size_t i) const { return c_.at(i); }
    BPoly& coeff(std::size_t i) { return c_.at(i); }
    BPoly eval_t0() const { return c_.empty() ? BPoly() : c_[0]; }

    bool is_zero() const {
        for (const auto& p : c_)
            if (!p.is_zero()) return false;
        return true;
    }

    TruncatedTSeries truncated(std::size_t order) const {
        std::vector<BPoly> v(c_.begin(), c_.begin() + std::min(c_.size(), order + 1));
        return TruncatedTSeries(std::move(v));
    }

    TruncatedTSeries operator-() const {
        TruncatedTSeries r(*this);
        for (auto& p : r.c_) p = -p;
        return r;
    }
    friend TruncatedTSeries operator+(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        std::size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<BPoly> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = a.c_[i] + b.c_[i];
        return TruncatedTSeries(std::move(v));
    }
    friend TruncatedTSeries operator-(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        return a + (-b);
    }
    friend TruncatedTSeries operator*(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        std::size_t n = std::min(a.c_.size(), b.c_.size());
        std::vector<BPoly> v(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) v[i + j] += a.c_[i] * b.c_[j];
        return TruncatedTSeries(std::move(v));
    }
    friend bool operator==(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const TruncatedTSeries& a, const TruncatedTSeries& b) {
        return !(a == b);
    }

    TruncatedTSeries& scale(const BPoly& c) {
        for (auto& p : c_) p *= c;
        return *this;
    }

    /// Exact division by t; drops one order and requires coeff(0) == 0.
    TruncatedTSeries divexact_t() const {
        if (c_.empty() || !c_[0].is_zero())
            throw NotDivisibleError("TruncatedTSeries: nonzero at t = 0");
        return TruncatedTSeries(std::vector<BPoly>(c_.begin() + 1, c_.end()));
    }

    /// Multiplication by the geometric series 1/(1-t)^m.
    TruncatedTSeries times_inv_one_minus_t_pow(unsigned m) const {
        if (m == 0) return *this;
        std::vector<BPoly> v(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) {
            for (std::size_t i = 0; i <= j; ++i) {
                Rational w(binomial(m - 1 + (j - i), m - 1));
                v[j] += w * c_[i];
            }
        }
        return TruncatedTSeries(std::move(v));
    }

  private:
    std::vector<BPoly> c_;
};

/// numerator / (1-t)^pole with exact rational coefficients.
/// Normalized: pole == 0 or the numerator is not divisible by (1-t);
/// equality of normalized forms is genuine equality of rational functions.
class FlowFraction {
  public:
    FlowFraction() = default;
    FlowFraction(const Rational& c) : num_(c) {}
    FlowFraction(long long c) : num_(Rational(c)) {}
    FlowFraction(const BPoly& p) : num_(p) {}
    FlowFraction(BTPoly num, unsigned pole) : num_(std::move(num)), pole_(pole) {
        normalize();
    }

    /// 1/(1-t)^m.
    static FlowFraction inv_one_minus_t(unsigned m) {
        return FlowFraction(BTPoly(Rational(1)), m);
    }

    const BTPoly& numerator() const { return num_; }
    unsigned pole() const { return pole_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const FlowFraction& a, const FlowFraction& b) {
        return a.pole_ == b.pole_ && a.num_ == b.num_;
    }
    friend bool operator!=(const FlowFraction& a, const FlowFraction& b) {
        return !(a == b);
    }

    FlowFraction operator-() const {
        FlowFraction r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend FlowFraction operator+(const FlowFraction& a, const FlowFraction& b) {
        unsigned m = std::max(a.pole_, b.pole_);
        BTPoly na = a.num_, nb = b.num_;
        for (unsigned i = a.pole_; i < m; ++i) na = na.times_one_minus_t();
        for (unsigned i = b.pole_; i < m; ++i) nb = nb.times_one_minus_t();
        return FlowFraction(na + nb, m);
    }
    friend FlowFraction operator-(const FlowFraction& a, const FlowFraction& b) {
        return a + (-b);
    }
    friend FlowFraction operator*(const FlowFraction& a, const FlowFraction& b) {
        return FlowFraction(a.num_ * b.num_, a.pole_ + b.pole_);
    }
    FlowFraction& operator+=(const FlowFraction& o) { return *this = *this + o; }
    FlowFraction& operator-=(const FlowFraction& o) { return *this = *this - o; }
    FlowFraction& operator*=(const FlowFraction& o) { return *this = *this * o; }

    FlowFraction& scale(const Rational& c) {
        if (c.is_zero()) return *this = FlowFraction();
        num_.scale(BPoly(c));
        return *this;
    }
    FlowFraction& scale(const BPoly& c) {
        if (c.is_zero()) return *this = FlowFraction();
        num_.scale(c);
        return *this;
    }

    /// Exact quotient by t; requires numerator(b, 0) == 0.
    FlowFraction divided_by_t() const { return FlowFraction(num_.divexact_t(), pole_); }

    /// Value at t = 0 (the denominator is 1 there).
    BPoly eval_t0() const { return num_.eval_t0(); }

    /// t-adic expansion to order M by long division against (1-t)^pole.
    TruncatedTSeries expand(std::size_t M) const {
        std::vector<BPoly> v(M + 1);
        for (std::size_t i = 0; i <= std::min<std::size_t>(M, std::max(num_.tdeg(), 0)); ++i)
            v[i] = num_.tcoeff(i);
        return TruncatedTSeries(std::move(v)).times_inv_one_minus_t_pow(pole_);
    }

    /// Inverse, defined only for fractions of the form c (1-t)^j / (1-t)^m.
    FlowFraction inverse() const {
        if (is_zero()) throw NotInvertibleError();
        BTPoly n = num_;
        unsigned j = 0;
        while (n.tdeg() > 0) {
            if (!n.divisible_by_one_minus_t()) throw NotInvertibleError();
            n = n.divexact_one_minus_t();
            ++j;
        }
        if (n.eval_t0().degree() != 0) throw NotInvertibleError();
        Rational c = n.eval_t0().coeff(0);
        BTPoly one_minus_t(std::vector<BPoly>{BPoly(Rational(1)), BPoly(Rational(-1))});
        BTPoly numer(BPoly(c.inverse()));
        for (unsigned i = 0; i < pole_; ++i) numer = numer * one_minus_t;
        return FlowFraction(numer, j);
    }

    std::string str() const;

  private:
    void normalize() {
        if (num_.is_zero()) {
            pole_ = 0;
            return;
        }
        while (pole_ > 0 && num_.divisible_by_one_minus_t()) {
            num_ = num_.divexact_one_minus_t();
            --pole_;
        }
    }

    BTPoly num_;
    unsigned pole_ = 0;
};

inline std::string FlowFraction::str() const {
    if (pole_ == 0 && num_.tdeg() <= 0) return num_.eval_t0().str();
    std::string s = "(";
    bool first = true;
    if (num_.is_zero()) s += "0";
    for (int i = 0; i <= num_.tdeg(); ++i) {
        const BPoly& p = num_.tcoeff(i);
        if (p.is_zero()) continue;
        if (!first) s += " + ";
        first = false;
        s += "(" + p.str() + ")";
        if (i >= 1) {
            s += "*t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    s += ")";
    if (pole_ > 0) {
        s += "/(1-t)";
        if (pole_ > 1) s += "^" + std::to_string(pole_);
    }
    return s;
}

/// Generic fraction arithmetic entry point.
enum class FFOp { Add, Sub, Mul };
inline FlowFraction ff_arith(const FlowFraction& x, const FlowFraction& y, FFOp op) {
    switch (op) {
        case FFOp::Add: return x + y;
        case FFOp::Sub: return x - y;
        case FFOp::Mul: return x * y;
    }
    return FlowFraction();
}

/// The unique fraction with pole <= pole_bound and numerator t-degree <=
/// numdeg_bound matching the expansion s, verified against every available
/// coefficient. Requires s.order() >= pole_bound + numdeg_bound + 2 so that
/// at least two guard coefficients are checked beyond the determined ones.
inline FlowFraction ff_reconstruct(const TruncatedTSeries& s, unsigned pole_bound,
                                   unsigned numdeg_bound) {
    if (s.order() < static_cast<int>(pole_bound + numdeg_bound + 2))
        throw ReconstructionFailed("ff_reconstruct: expansion order too small for bounds");
    // numerator = s * (1-t)^pole truncated; everything above numdeg_bound must vanish.
    TruncatedTSeries prod = s;
    BTPoly one_minus_t(std::vector<BPoly>{BPoly(Rational(1)), BPoly(Rational(-1))});
    std::vector<BPoly> pm(prod.coeffs());
    for (unsigned r = 0; r < pole_bound; ++r) {
        std::vector<BPoly> next(pm.size());
        for (std::size_t i = 0; i < pm.size(); ++i) {
            next[i] += pm[i];
            if (i + 1 < pm.size()) next[i + 1] -= pm[i];
        }
        pm = std::move(next);
    }
    for (std::size_t i = numdeg_bound + 1; i < pm.size(); ++i)
        if (!pm[i].is_zero())
            throw ReconstructionFailed(
                "ff_reconstruct: guard coefficient mismatch at t^" + std::to_string(i));
    pm.resize(numdeg_bound + 1);
    return FlowFraction(BTPoly(std::move(pm)), pole_bound);
}

}  // namespace treeflow

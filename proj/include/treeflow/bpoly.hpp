#pragma once

#include "treeflow/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace treeflow {

/// Polynomial in the flow-size variable b with rational coefficients.
/// Trailing zero coefficients are always stripped; the zero polynomial has
/// degree() == -1 (distinguished sentinel).
class BPoly {
  public:
    BPoly() = default;
    BPoly(const Rational& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    BPoly(long long c) : BPoly(Rational(c)) {}
    explicit BPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { strip(); }

    static BPoly monomial(std::size_t k, const Rational& c = Rational(1)) {
        if (c.is_zero()) return BPoly();
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return BPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& coeff(std::size_t k) const {
        static const Rational kZero(0);
        return k < c_.size() ? c_[k] : kZero;
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    BPoly operator-() const {
        BPoly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    BPoly& operator+=(const BPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        strip();
        return *this;
    }
    BPoly& operator-=(const BPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        strip();
        return *this;
    }

    friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
    friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }

    friend BPoly operator*(const BPoly& a, const BPoly& b) {
        if (a.is_zero() || b.is_zero()) return BPoly();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return BPoly(std::move(v));
    }
    BPoly& operator*=(const BPoly& o) { return *this = *this * o; }

    BPoly& scale(const Rational& c) {
        if (c.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= c;
        return *this;
    }
    friend BPoly operator*(const Rational& c, BPoly p) { return p.scale(c); }

    friend bool operator==(const BPoly& a, const BPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BPoly& a, const BPoly& b) { return !(a == b); }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    BPoly derivative() const {
        if (c_.size() <= 1) return BPoly();
        std::vector<Rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rational((long long)i) * c_[i];
        return BPoly(std::move(v));
    }

    /// Multiply by b^k.
    BPoly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<Rational> v(c_.size() + k);
        std::copy(c_.begin(), c_.end(), v.begin() + k);
        return BPoly(std::move(v));
    }

    /// Exact division by b^k; throws if any lower coefficient is nonzero.
    BPoly divexact_b(std::size_t k) const {
        if (is_zero()) return BPoly();
        if (c_.size() <= k) throw std::domain_error("BPoly: not divisible by b^k");
        for (std::size_t i = 0; i < k; ++i)
            if (!c_[i].is_zero()) throw std::domain_error("BPoly: not divisible by b^k");
        return BPoly(std::vector<Rational>(c_.begin() + k, c_.end()));
    }

    /// Substitute b -> -b.
    BPoly flip_sign() const {
        BPoly r(*this);
        for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += c_[i].sign() > 0 ? " + " : " - ";
            else if (c_[i].sign() < 0) s += "-";
            Rational a = c_[i].sign() < 0 ? -c_[i] : c_[i];
            if (i == 0) {
                s += a.str();
            } else {
                if (!a.is_one()) s += a.str() + "*";
                s += "b";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void strip() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Quotient and remainder of exact polynomial division over Q.
inline std::pair<BPoly, BPoly> divmod(const BPoly& a, const BPoly& b) {
    if (b.is_zero()) throw std::domain_error("BPoly: division by zero polynomial");
    BPoly r = a;
    std::vector<Rational> q;
    int db = b.degree();
    if (r.degree() >= db) q.resize(r.degree() - db + 1);
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rational c = r.leading() / b.leading();
        q[k] = c;
        r -= BPoly::monomial(k, c) * b;
    }
    return {BPoly(std::move(q)), r};
}

/// Monic gcd over Q.
inline BPoly poly_gcd(BPoly a, BPoly b) {
    while (!b.is_zero()) {
        BPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a.scale(a.leading().inverse());
    return a;
}

/// p / gcd(p, p'): same distinct roots, all simple.
inline BPoly squarefree_part(const BPoly& p) {
    if (p.is_zero()) return p;
    BPoly g = poly_gcd(p, p.derivative());
    return divmod(p, g).first;
}

/// Narayana polynomial ca_n = sum_k N(n,k+1) b^k (closed form, used as an
/// independent cross-check against the flow enumeration).
inline BPoly narayana_poly(long long n) {
    std::vector<Rational> v;
    for (long long k = 0; k + 1 <= n; ++k)
        v.push_back(Rational(binomial(n, k) * binomial(n, k + 1), Int(n)));
    return BPoly(std::move(v));
}

}  // namespace treeflow

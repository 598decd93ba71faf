#pragma once

#include "treeflow/flow_fraction.hpp"

namespace treeflow {

/// Uniform access to the coefficient rings the series code is templated on
/// (Rational, BPoly, FlowFraction).
template <class R>
struct Ring {
    static R zero() { return R(); }
    static R one() { return R(Rational(1)); }
    static R from_rational(const Rational& q) { return R(q); }
};

template <>
struct Ring<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_rational(const Rational& q) { return q; }
};

template <class R>
bool ring_is_zero(const R& x) {
    return x.is_zero();
}

template <class R>
R ring_mul_rat(R x, const Rational& q) {
    x.scale(q);
    return x;
}
inline Rational ring_mul_rat(Rational x, const Rational& q) { return x * q; }

/// Multiplicative inverse where one exists (rationals; degree-0 polynomials;
/// fractions of the shape c (1-t)^j / (1-t)^m).
inline Rational ring_inverse(const Rational& x) { return x.inverse(); }
inline BPoly ring_inverse(const BPoly& x) {
    if (x.degree() != 0) throw std::domain_error("BPoly: not invertible");
    return BPoly(x.coeff(0).inverse());
}
inline FlowFraction ring_inverse(const FlowFraction& x) { return x.inverse(); }

}  // namespace treeflow

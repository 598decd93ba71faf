#include "doctest.h"

#include "treeflow/flow_fraction.hpp"

#include <random>

using namespace treeflow;

namespace {
BPoly poly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.push_back(Rational(c));
    return BPoly(std::move(v));
}
// num[i] = coefficient of t^i.
FlowFraction frac(std::vector<BPoly> num, unsigned pole) {
    return FlowFraction(BTPoly(std::move(num)), pole);
}
FlowFraction one_over(unsigned m) { return FlowFraction::inv_one_minus_t(m); }

// ca_{2,t} = (1 + b - t b)/(1-t)^2
FlowFraction ca2t() { return frac({poly({1, 1}), poly({0, -1})}, 2); }
// The paper's fork fraction:
// (1+5b+3b^2 - t(9b+8b^2) + t^2(5b+7b^2) - t^3(b+2b^2)) / (1-t)^4.
FlowFraction fork22() {
    return frac({poly({1, 5, 3}), poly({0, -9, -8}), poly({0, 5, 7}), poly({0, -1, -2})}, 4);
}

FlowFraction random_fraction(std::mt19937& rng) {
    std::uniform_int_distribution<long long> d(-3, 3);
    std::uniform_int_distribution<int> deg(0, 2), pol(0, 3);
    int tb = deg(rng), bb = deg(rng);
    std::vector<BPoly> num;
    for (int i = 0; i <= tb; ++i) {
        std::vector<Rational> row;
        for (int j = 0; j <= bb; ++j) row.push_back(Rational(d(rng)));
        num.push_back(BPoly(std::move(row)));
    }
    return frac(std::move(num), pol(rng));
}
}  // namespace

TEST_CASE("like terms, cancellation, denominator law") {
    CHECK(one_over(1) + one_over(1) == frac({poly({2})}, 1));
    CHECK((ca2t() - ca2t()).is_zero());
    CHECK((ca2t() - ca2t()).pole() == 0);
    CHECK(one_over(1) * one_over(1) == one_over(2));
}

TEST_CASE("normalization strips (1-t) factors") {
    // (1-t)/(1-t)^2 == 1/(1-t)
    FlowFraction x = frac({poly({1}), poly({-1})}, 2);
    CHECK(x == one_over(1));
    CHECK(x.pole() == 1);
    // (1-t) with pole 0 stays put, but multiplying by 1/(1-t) cancels.
    FlowFraction y = frac({poly({1}), poly({-1})}, 0);
    CHECK((y * one_over(1)) == FlowFraction(Rational(1)));
}

TEST_CASE("divide by t") {
    FlowFraction tb = frac({BPoly(), poly({0, 1})}, 1);  // t b/(1-t)
    CHECK(tb.divided_by_t() == frac({poly({0, 1})}, 1));
    // ca_{2,t} - ca_2, divided by t, has value 2 + b at t = 0.
    FlowFraction diff = ca2t() - FlowFraction(poly({1, 1}));
    CHECK(diff.divided_by_t().eval_t0() == poly({2, 1}));
    CHECK_THROWS_AS(frac({poly({1, 1})}, 1).divided_by_t(), NotDivisibleError);
}

TEST_CASE("value at t = 0") {
    CHECK(ca2t().eval_t0() == poly({1, 1}));
    for (unsigned k = 0; k <= 5; ++k) CHECK(one_over(k).eval_t0() == poly({1}));
    CHECK(fork22().eval_t0() == poly({1, 5, 3}));
}

TEST_CASE("expansion") {
    auto geo = one_over(1).expand(2);
    CHECK(geo.coeffs() == std::vector<BPoly>{poly({1}), poly({1}), poly({1})});
    auto e = ca2t().expand(1);
    CHECK(e.coeff(0) == poly({1, 1}));
    CHECK(e.coeff(1) == poly({2, 1}));
    CHECK(FlowFraction().expand(3).is_zero());
}

TEST_CASE("reconstruction") {
    CHECK(ff_reconstruct(one_over(1).expand(3), 1, 0) == one_over(1));
    CHECK(ff_reconstruct(fork22().expand(9), 4, 3) == fork22());
    // constant sequence [1+b, 1+b, ...] with bounds (0,0)
    TruncatedTSeries konst = TruncatedTSeries::constant(poly({1, 1}), 4);
    for (std::size_t i = 1; i <= 4; ++i) konst.coeff(i) = poly({1, 1});
    // that's (1+b)/(1-t) actually; with bounds (0,0) reconstruction must fail
    CHECK_THROWS_AS(ff_reconstruct(konst, 0, 0), ReconstructionFailed);
    // the true constant expansion [1+b, 0, 0, ...]:
    CHECK(ff_reconstruct(TruncatedTSeries::constant(poly({1, 1}), 4), 0, 0) ==
          FlowFraction(poly({1, 1})));
    CHECK(ff_reconstruct(konst, 1, 0) == frac({poly({1, 1})}, 1));
    CHECK_THROWS_AS(ff_reconstruct(one_over(1).expand(2), 1, 0), ReconstructionFailed);
}

TEST_CASE("ring properties on random triples") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 80; ++it) {
        FlowFraction a = random_fraction(rng), b = random_fraction(rng),
                     c = random_fraction(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(ff_arith(a, b, FFOp::Sub) + b == a);
        // value at t=0 is multiplicative
        CHECK((a * b).eval_t0() == a.eval_t0() * b.eval_t0());
        // reconstruct . expand is the identity at known bounds
        unsigned nd = static_cast<unsigned>(std::max(a.numerator().tdeg(), 0));
        CHECK(ff_reconstruct(a.expand(a.pole() + nd + 2), a.pole(), nd) == a);
    }
}

TEST_CASE("inverse of monomial-type fractions") {
    CHECK(one_over(3).inverse() == frac({poly({1}), poly({-1}), BPoly(), BPoly()}, 0) *
                                       frac({poly({1}), poly({-1})}, 0) *
                                       frac({poly({1}), poly({-1})}, 0));
    FlowFraction x = one_over(2);
    CHECK(x * x.inverse() == FlowFraction(Rational(1)));
    FlowFraction half(Rational(1, 2));
    CHECK(half.inverse() == FlowFraction(Rational(2)));
    CHECK_THROWS_AS(ca2t().inverse(), NotInvertibleError);
    CHECK_THROWS_AS(FlowFraction().inverse(), NotInvertibleError);
}

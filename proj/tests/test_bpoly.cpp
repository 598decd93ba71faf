#include "doctest.h"

#include "treeflow/bpoly.hpp"

#include <random>

using namespace treeflow;

namespace {
BPoly poly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.push_back(Rational(c));
    return BPoly(std::move(v));
}
}  // namespace

TEST_CASE("degree sentinel and stripping") {
    CHECK(BPoly().degree() == -1);
    CHECK(poly({0, 0, 0}).degree() == -1);
    CHECK(poly({1, 0, 2, 0}).degree() == 2);
    CHECK((poly({1, 1}) - poly({1, 1})).is_zero());
}

TEST_CASE("arithmetic") {
    BPoly p = poly({1, 1});       // 1 + b
    BPoly q = poly({1, 3, 1});    // 1 + 3b + b^2
    CHECK(p * p == poly({1, 2, 1}));
    CHECK(p + q == poly({2, 4, 1}));
    CHECK(p.eval(Rational(2)) == Rational(3));
    CHECK(q.derivative() == poly({3, 2}));
    CHECK(p.shifted(2) == poly({0, 0, 1, 1}));
    CHECK(poly({0, 0, 2, 2}).divexact_b(2) == poly({2, 2}));
    CHECK_THROWS_AS(poly({1, 2}).divexact_b(1), std::domain_error);
    CHECK(poly({1, -2, 3}).flip_sign() == poly({1, 2, 3}));
}

TEST_CASE("divmod and gcd") {
    BPoly a = poly({-1, 0, 1});  // (b-1)(b+1)
    BPoly b = poly({1, 1});
    auto [q, r] = divmod(a, b);
    CHECK(r.is_zero());
    CHECK(q == poly({-1, 1}));
    CHECK(poly_gcd(a, b) == poly({1, 1}));
    CHECK(poly_gcd(poly({2, 2}), poly({4, 4})) == poly({1, 1}));  // monic
    BPoly sq = poly({1, 1}) * poly({1, 1}) * poly({0, 1});
    CHECK(squarefree_part(sq) == poly({0, 1, 1}));
}

TEST_CASE("narayana closed form") {
    CHECK(narayana_poly(1) == poly({1}));
    CHECK(narayana_poly(2) == poly({1, 1}));
    CHECK(narayana_poly(3) == poly({1, 3, 1}));
    CHECK(narayana_poly(4) == poly({1, 6, 6, 1}));
    // row sums are Catalan numbers
    for (long long n = 1; n <= 9; ++n) {
        BPoly ca = narayana_poly(n);
        Rational s(0);
        for (const auto& c : ca.coeffs()) s += c;
        CHECK(s == Rational(catalan(n)));
    }
}

TEST_CASE("str forms") {
    CHECK(poly({1, 5, 3}).str() == "1 + 5*b + 3*b^2");
    CHECK(poly({0, -1}).str() == "-b");
    CHECK(BPoly().str() == "0");
}

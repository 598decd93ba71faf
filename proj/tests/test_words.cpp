#include "doctest.h"

#include "treeflow/words.hpp"

using namespace treeflow;

namespace {
BPoly poly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.push_back(Rational(c));
    return BPoly(std::move(v));
}
}  // namespace

TEST_CASE("concatenation algebra") {
    using WS = WordSeries<Rational>;
    WS a = WS::letter('+', 4), b = WS::letter('-', 4);
    WS ab = a * b;
    CHECK(ab.coeff("+-") == Rational(1));
    CHECK(ab.coeff("-+") == Rational(0));
    CHECK((a * a * a * a * a).raw().empty());  // truncated at length 4
    WS e = WS::empty_word(4);
    CHECK(e * a == a);
    CHECK(a * e == a);
    CHECK(a * b != b * a);
}

TEST_CASE("bar involution on words") {
    using WS = WordSeries<Rational>;
    WS s(5);
    s.set("+-+", Rational(2));
    WS b = s.bar();
    CHECK(b.coeff("-+-") == Rational(-2));
    CHECK(b.bar() == s);
    WS x = WS::letter('+', 5) * WS::letter('+', 5);
    CHECK(x.bar().coeff("--") == Rational(1));
}

TEST_CASE("P and N series values") {
    FlowCalculator calc;
    auto P = P_series(calc, 4, true);
    CHECK(P.coeff("+") == FlowFraction::inv_one_minus_t(1));
    CHECK(P.coeff("++") == calc.ca_t(2));
    auto N = N_series(calc, 4, true);
    FlowFraction minus_ca1 = calc.ca_t(1);
    minus_ca1.scale(Rational(-1));
    CHECK(N.coeff("-") == minus_ca1);
    CHECK(N.coeff("--") == calc.ca_t(2));
}

TEST_CASE("U_t and V_t first terms match the displays") {
    FlowCalculator calc;
    auto U = U_series(calc, 2, true);
    CHECK(U.coeff("+") == calc.ca_t(1));
    CHECK(U.coeff("++") == calc.ca_t(2));
    FlowFraction minus_b_ca1 = calc.ca_t(1);
    minus_b_ca1.scale(BPoly::monomial(1));
    minus_b_ca1.scale(Rational(-1));
    CHECK(U.coeff("-+") == minus_b_ca1);
    CHECK(U.coeff("--").is_zero());
    auto V = V_series(calc, 2, true);
    FlowFraction minus_ca1 = calc.ca_t(1);
    minus_ca1.scale(Rational(-1));
    CHECK(V.coeff("-") == minus_ca1);
    CHECK(V.coeff("--") == calc.ca_t(2));
    CHECK(V.coeff("-+") == minus_b_ca1);
}

TEST_CASE("T collects b-weighted PN pairs") {
    FlowCalculator calc;
    auto T = T_series(calc, 4);
    CHECK(T.coeff("") == FlowFraction(Rational(1)));
    // ++--: b ca_2 ca_2 with the even N sign
    BPoly expect = poly({0, 1}) * calc.ca(2) * calc.ca(2);
    CHECK(T.coeff("++--") == FlowFraction(expect));
    // +-: b ca_1 ca_1 with the odd N sign
    CHECK(T.coeff("+-") == FlowFraction(poly({0, -1})));
    CHECK(T.coeff("+").is_zero());
}

TEST_CASE("section-5 relations") {
    FlowCalculator calc;
    for (const auto& check : verify_word_identities(calc, 6)) {
        INFO(check.name, " witness ", check.witness);
        CHECK(check.ok);
    }
}

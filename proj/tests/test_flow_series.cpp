#include "doctest.h"

#include "treeflow/flow_series.hpp"
#include "treeflow/sturm.hpp"

#include <set>

using namespace treeflow;

namespace {
BPoly poly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.push_back(Rational(c));
    return BPoly(std::move(v));
}
FlowFraction frac(std::vector<BPoly> num, unsigned pole) {
    return FlowFraction(BTPoly(std::move(num)), pole);
}
FlowFraction paper_fork22() {
    return frac({poly({1, 5, 3}), poly({0, -9, -8}), poly({0, 5, 7}), poly({0, -1, -2})}, 4);
}
}  // namespace

TEST_CASE("E on the basic trees") {
    FlowCalculator calc;
    CHECK(calc.E(RootedTree()) == FlowFraction::inv_one_minus_t(1));
    CHECK(calc.E(linear_tree(2)) == frac({poly({1, 1}), poly({0, -1})}, 2));
    CHECK(calc.E(linear_tree(3)) ==
          frac({poly({1, 3, 1}), poly({0, -4, -2}), poly({0, 1, 1})}, 3));
    CHECK(calc.E(fork(2, 2)) == paper_fork22());
    CHECK(calc.ca(2) == poly({1, 1}));
    CHECK(calc.ca(3) == poly({1, 3, 1}));
}

TEST_CASE("E structure: b-degree and constant term") {
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            FlowFraction e = calc.E(t);
            CHECK(e.numerator().bdeg() == static_cast<int>(t.num_nonleaf()));
            CHECK(e.pole() == n);
            // the b-constant term is 1/(1-t)^n: check via expansion
            auto s = e.expand(4);
            for (std::size_t i = 0; i <= 4; ++i)
                CHECK(s.coeff(i).coeff(0) ==
                      Rational(binomial(n - 1 + i, n - 1)));
        }
}

TEST_CASE("E matches the enumeration oracle") {
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            auto lhs = calc.E(t).expand(6);
            auto rhs = oracle_expansion(t, FlowClass::All, 6);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("D is the product over root subtrees and matches small flows") {
    FlowCalculator calc;
    CHECK(calc.D(RootedTree()) == FlowFraction(Rational(1)));
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            auto lhs = calc.D(t).expand(5);
            auto rhs = oracle_expansion(t, FlowClass::Small, 5);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("per-tree master equation") {
    // E_{T,t} = D_{T,t}/(1-t) + b/t (D_{T,t} - D_T)
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            FlowFraction d = calc.D(t);
            FlowFraction over_t = (d - FlowFraction(d.eval_t0())).divided_by_t();
            over_t.scale(BPoly::monomial(1));
            CHECK(calc.E(t) == d * FlowFraction::inv_one_minus_t(1) + over_t);
        }
}

TEST_CASE("the pull-up recursion commutes over the choice of leaf") {
    FlowCalculator calc;
    for (std::size_t n = 5; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            if (t.is_corolla()) continue;
            TreeShape shape(t);
            auto leaves = FlowCalculator::eligible_leaves(shape);
            FlowFraction ref = calc.E(t);
            for (int w : leaves) CHECK(calc.E_via_leaf(t, w) == ref);
        }
}

TEST_CASE("pulling a leaf up grows coefficients at t = 0") {
    FlowCalculator calc;
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            for (std::size_t v = 1; v < n; ++v) {
                auto ctx = surgery(t, static_cast<int>(v));
                BPoly lo = calc.E0(ctx.t_uw), hi = calc.E0(ctx.t_vw);
                for (int k = 0; k <= hi.degree(); ++k)
                    CHECK(!(hi.coeff(k) < lo.coeff(k)));
            }
}

TEST_CASE("F on forks and corollas") {
    FlowCalculator calc;
    CHECK(calc.F(fork(2, 2)) == poly({0, 2, 2}));  // 2b(1+b)
    CHECK(calc.F(RootedTree()) == poly({1}));
    CHECK(calc.F(linear_tree(2)) == poly({1, 1}));
    CHECK(calc.F(corolla(2)) == poly({0, 1}));
    for (std::size_t k = 3; k <= 6; ++k) CHECK(calc.F(corolla(k)).is_zero());
    // linear trees give Narayana
    for (std::size_t n = 1; n <= 6; ++n) CHECK(calc.F(linear_tree(n)) == narayana_poly(n));
}

TEST_CASE("F matches the connected-exit-1 oracle") {
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            CHECK(calc.F(t) == oracle_poly(t, FlowClass::ConnectedExitOne, 1));
}

TEST_CASE("F is palindromic with nonnegative coefficients") {
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 7; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            BPoly f = calc.F(t);
            for (int k = 0; k <= f.degree(); ++k) CHECK(f.coeff(k).sign() >= 0);
            for (std::size_t k = 0; k < n; ++k)
                CHECK(f.coeff(k) == f.coeff(n - 1 - k));
        }
}

TEST_CASE("connected fractions match the enumeration oracle") {
    FlowCalculator calc;
    CHECK(calc.Ec(RootedTree()) == FlowFraction::inv_one_minus_t(1));
    CHECK(calc.Ec(RootedTree()).expand(2).coeffs() ==
          std::vector<BPoly>{poly({1}), poly({1}), poly({1})});
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            CHECK(calc.Ec(t).expand(6) == oracle_expansion(t, FlowClass::Connected, 6));
    // closed connected flows of size 1 on Lnr_2: exactly one
    CHECK(calc.Ec0(linear_tree(2)) == poly({0, 1}));
    // no closed connected flow on Crl_2 (root valency 2)
    CHECK(calc.Ec0(corolla(2)).is_zero());
}

TEST_CASE("closed connected flows factor through F") {
    // E^c at t=0 on B_+(T) is b F_T; zero on root valency >= 2.
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            CHECK(calc.Ec0(RootedTree::b_plus({t})) == BPoly::monomial(1) * calc.F(t));
            if (t.children().size() >= 2) CHECK(calc.Ec0(t).is_zero());
        }
}

TEST_CASE("valor") {
    CHECK(valor(RootedTree()) == 1);
    CHECK(valor(corolla(3)) == 2);
    CHECK(valor(linear_tree(4)) == 1);
    CHECK_FALSE(admits_closed_connected(RootedTree::b_plus({corolla(3)})));
    CHECK(admits_closed_connected(linear_tree(3)));
    CHECK(admits_closed_connected(RootedTree()));
    CHECK_FALSE(admits_closed_connected(corolla(2)));
}

TEST_CASE("valor is the minimal nonzero exit rate of connected flows") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            long long best = -1;
            for (const auto& f : enumerate_flows(t, FlowClass::Connected, 6))
                if (f.exit_rate > 0 && (best < 0 || f.exit_rate < best)) best = f.exit_rate;
            REQUIRE(best > 0);
            CHECK(best == valor(t));
        }
}

TEST_CASE("admits_closed_connected agrees with the oracle") {
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            bool oracle = false;
            for (const auto& f : enumerate_flows(t, FlowClass::Closed, 0))
                if (flow_is_connected(TreeShape(t), f)) oracle = true;
            CHECK(oracle == admits_closed_connected(t));
        }
}

TEST_CASE("saturated series") {
    FlowCalculator calc;
    CHECK(calc.saturated(RootedTree()) == poly({1}));
    CHECK(calc.saturated(linear_tree(2)) == poly({0, 1}));
    CHECK(calc.saturated(corolla(2)).is_zero());
    // support equals the closed-connected support
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            CHECK(calc.saturated(t).is_zero() == !admits_closed_connected(t));
}

TEST_CASE("conjectural F_t") {
    FlowCalculator calc;
    // the paper's fork value: b/(1-t)^2 + b(1+2b)/(1-t)
    FlowFraction expect = frac({poly({0, 1})}, 2) +
                          frac({poly({0, 1, 2})}, 1);
    CHECK(calc.Ft(fork(2, 2)) == expect);
    CHECK(calc.Ft(linear_tree(3)) == calc.E(linear_tree(3)));
    // value at t=0 is F, and no inconsistency arises through 6 vertices
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n))
            CHECK(calc.Ft(t).eval_t0() == calc.F(t));
    // the reduction applied to a linear tree agrees with the base case
    for (std::size_t n = 3; n <= 6; ++n) {
        RootedTree t = linear_tree(n);
        TreeShape shape(t);
        // reduce via the unique eligible leaf by hand: compare with ca_t
        CHECK(calc.Ft(t) == calc.ca_t(n));
    }
    // F_t does not have nonnegative coefficients in general (the paper's
    // remark about B_+(Crl_2, ., .)): just confirm it computes consistently
    RootedTree remark = RootedTree::b_plus({corolla(2), RootedTree(), RootedTree()});
    CHECK(calc.Ft(remark).eval_t0() == calc.F(remark));
}

TEST_CASE("rho bijection basics") {
    RootedTree lnr2 = linear_tree(2);
    TreeShape shape(lnr2);
    auto empty = make_flow(shape, {0, 0}, {0, 0});
    CHECK(rho(lnr2, *empty).word() == "URUR");
    auto closed1 = make_flow(shape, {1, 0}, {0, 1});
    CHECK(rho(lnr2, *closed1).word() == "UURR");
    auto open1 = make_flow(shape, {0, 0}, {1, 0});
    CHECK_THROWS_AS(rho(lnr2, *open1), NotClosedError);
    CHECK_THROWS_AS(rho(corolla(2), *make_flow(TreeShape(corolla(2)), {0, 0, 0}, {0, 0, 0})),
                    NotLinearError);
}

TEST_CASE("rho is a bijection carrying the statistics") {
    for (std::size_t n = 1; n <= 6; ++n) {
        RootedTree t = linear_tree(n);
        auto flows = enumerate_flows(t, FlowClass::Closed, 0);
        CHECK(flows.size() == static_cast<std::size_t>(catalan(n)));
        std::set<std::string> words;
        TreeShape shape(t);
        for (const auto& f : flows) {
            DyckPath p = rho(t, f);
            CHECK(p.half_length() == n);
            words.insert(p.word());
            // outputs <-> matched non-peak pairs
            CHECK(f.size == p.matched_nonpeak_pairs());
            // components <-> indecomposable factors
            std::size_t comps = 0;
            {
                // count components: maximal runs of positive rates
                std::size_t v = 1;
                comps = 1;
                for (; v < n; ++v)
                    if (f.rate[v] == 0) ++comps;
            }
            CHECK(comps == p.indecomposable_factors().size());
            // round trip
            Flow back = rho_inverse(p);
            CHECK(back.input == f.input);
            CHECK(back.output == f.output);
        }
        CHECK(words.size() == flows.size());
    }
}

TEST_CASE("fork conjecture rows") {
    for (std::size_t n = 2; n <= 6; ++n) {
        auto rows = fork_conjecture_check(n);
        for (const auto& r : rows) CHECK(r.ok);
        // k = 0 gives 1 for every fork
        for (const auto& r : rows)
            if (r.size == 0) CHECK(r.oracle == 1);
    }
}

TEST_CASE("linear ordinary series") {
    auto checks = linear_ordinary_series_check(6);
    for (const auto& c : checks) {
        INFO(c.name, " witness ", c.witness);
        CHECK(c.ok);
    }
}

TEST_CASE("real-root scan through 6 vertices") {
    FlowCalculator calc;
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) {
            CHECK(all_roots_real_nonpositive(calc.E0(t)));
            BPoly f = calc.F(t);
            if (!f.is_zero()) CHECK(all_roots_real_nonpositive(f));
        }
}

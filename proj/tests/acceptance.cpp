// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is exact equality in exact arithmetic; each criterion also
// carries a wall-clock budget.

#include "treeflow/verify.hpp"

#include <chrono>
#include <cstdio>
#include <set>

using namespace treeflow;

namespace {

int failures = 0;

template <class Fn>
void criterion(int number, const std::string& label, double budget_seconds, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto result = fn();
        ok = result.first;
        detail = result.second;
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += "over budget of " + std::to_string(budget_seconds) + " s";
    }
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::pair<bool, std::string> pass() { return {true, ""}; }
std::pair<bool, std::string> fail(const std::string& w) { return {false, w}; }

std::pair<bool, std::string> from_checks(const std::vector<IdentityCheck>& checks) {
    for (const auto& c : checks)
        if (!c.ok) return fail(c.name + " @ " + c.witness);
    return pass();
}

BPoly ipoly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.push_back(Rational(c));
    return BPoly(std::move(v));
}

}  // namespace

int main() {
    FlowCalculator calc;

    criterion(1, "fork fraction reproduction (exact)", 1.0, [&] {
        FlowFraction expect(
            BTPoly(std::vector<BPoly>{ipoly({1, 5, 3}), ipoly({0, -9, -8}), ipoly({0, 5, 7}),
                                      ipoly({0, -1, -2})}),
            4);
        if (calc.E(fork(2, 2)) != expect) return fail("E(Frk_{2,2}) differs");
        return pass();
    });

    criterion(2, "Narayana identification via the Dyck bijection, n <= 8 (exact)", 10.0, [&] {
        for (int n = 1; n <= 8; ++n) {
            RootedTree t = linear_tree(n);
            auto flows = enumerate_flows(t, FlowClass::Closed, 0);
            if (flows.size() != static_cast<std::size_t>(catalan(n)))
                return fail("closed-flow count at n = " + std::to_string(n));
            BPoly by_rho;
            std::set<std::string> images;
            for (const auto& f : flows) {
                DyckPath p = rho(t, f);
                images.insert(p.word());
                by_rho += BPoly::monomial(p.matched_nonpeak_pairs());
            }
            if (images.size() != flows.size())
                return fail("rho not injective at n = " + std::to_string(n));
            BPoly by_peaks;
            for (const auto& p : enumerate_dyck_paths(n))
                by_peaks += BPoly::monomial(n - p.peaks());
            if (calc.ca(n) != by_peaks || calc.ca(n) != by_rho)
                return fail("peak polynomial differs at n = " + std::to_string(n));
        }
        return pass();
    });

    criterion(3, "recursion vs brute-force oracle, all trees n <= 6, t-order 8 (exact)",
              120.0, [&] {
        for (int n = 1; n <= 6; ++n)
            for (const auto& t : enumerate_rooted_trees(n)) {
                if (calc.E(t).expand(8) != oracle_expansion(t, FlowClass::All, 8))
                    return fail("E @ " + t.encode());
                if (calc.D(t).expand(8) != oracle_expansion(t, FlowClass::Small, 8))
                    return fail("D @ " + t.encode());
                if (calc.F(t) != oracle_poly(t, FlowClass::ConnectedExitOne, 1))
                    return fail("F @ " + t.encode());
            }
        return pass();
    });

    criterion(4, "group laws: H_k composition, labelled oracle, rooted-monoid axiom (exact)",
              120.0, [&] {
        for (auto [k, l] : std::vector<std::pair<long long, long long>>{{1, 1}, {2, 3}, {1, -1}})
            if (compose(hk_series(k, 6), hk_series(l, 6)) != hk_series(k + l, 6))
                return fail("H_k o H_l at (" + std::to_string(k) + "," + std::to_string(l) + ")");
        for (int n1 = 1; n1 <= 4; ++n1)
            for (const auto& t1 : enumerate_rooted_trees(n1))
                for (int n2 = 1; n2 <= 4; ++n2)
                    for (const auto& t2 : enumerate_rooted_trees(n2)) {
                        PreLieSeries<Rational> s(4), t(4);
                        s.set(t1, Rational(1));
                        t.set(t2, Rational(1));
                        if (labelled_compose_oracle(s, t) != compose(s, t))
                            return fail(t1.encode() + " o " + t2.encode());
                    }
        std::mt19937 rng(20240);
        std::uniform_int_distribution<long long> d(-4, 4);
        auto rnd = [&] {
            PreLieSeries<Rational> s(4);
            for (int n = 1; n <= 4; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) s.set(t, Rational(d(rng)));
            return s;
        };
        for (int it = 0; it < 10; ++it) {
            auto s = rnd(), t = rnd(), u = rnd(), v = rnd(), w = rnd();
            if (diamond(diamond(s, t, u), v, w) != diamond(s, diamond(t, v, w), compose(u, w)))
                return fail("rooted-monoid axiom, case " + std::to_string(it));
        }
        return pass();
    });

    criterion(5, "phi images: Crls and H_1 at N=6; E_t, D_t, E^c_t at N=5 (exact fractions)",
              300.0, [&] {
        using DS = DendSeries<Rational>;
        DS one = DS::one(6);
        auto R = right_comb_series<Rational>(6), L = left_comb_series<Rational>(6);
        if (phi(crls_series<Rational>(6)) != dend_vee(one + R, one + L))
            return fail("phi(Crls) != (1+R) v (1+L)");
        if (phi(hk_series(1, 6)) != dend_vee(one - L.suspension(), one - R.suspension()))
            return fail("phi(H_1) != (1-SL) v (1-SR)");
        if (phi(Et_series(calc, 5)) != sEt_series(calc, 5)) return fail("phi(E_t) != sE_t");
        if (phi(Dt_series(calc, 5)) != sDt_series(calc, 5)) return fail("phi(D_t) != sD_t");
        if (phi(Ect_series(calc, 5)) != sEct_series(calc, 5))
            return fail("phi(E^c_t) differs from the closed formula");
        return pass();
    });

    criterion(6, "Lie idempotent relations for D_n and F_n, n <= 6 (exact)", 120.0, [&] {
        for (int n = 2; n <= 6; ++n)
            for (auto family : {IdempotentFamily::D, IdempotentFamily::F}) {
                auto x = idempotent_ribbon(family, n, calc);
                auto c = idempotent_scalar(family, n, calc);
                std::string label = std::string(family_name(family)) + "_" + std::to_string(n);
                auto checks = quasi_idempotent_check(x, c, label);
                for (const auto& ch : checks)
                    if (!ch.ok) return fail(ch.name);
                if (n <= 5) {
                    auto gr = groupring_idempotent_check(x, c, label);
                    if (!gr.ok) return fail(gr.name);
                }
            }
        return pass();
    });

    criterion(7, "conjecture reproductions at the paper's scale", 900.0, [&] {
        // F_{n,t} quasi-idempotency, n <= 6
        for (int n = 2; n <= 6; ++n) {
            auto x = idempotent_ribbon(IdempotentFamily::Ft, n, calc);
            auto c = idempotent_scalar(IdempotentFamily::Ft, n, calc);
            for (const auto& ch : quasi_idempotent_check(x, c, "F_t"))
                if (!ch.ok) return fail("counterexample: " + ch.name + " at n = " +
                                        std::to_string(n));
        }
        // fork formula, n <= 10
        for (int n = 2; n <= 10; ++n)
            for (const auto& row : fork_conjecture_check(n))
                if (!row.ok)
                    return fail("counterexample: fork (" + std::to_string(row.stem) + "," +
                                std::to_string(row.total - row.stem) + "), k = " +
                                std::to_string(row.size));
        // Y_T = (-1)^(L(T)-1) E^s_T, n <= 7
        auto y_checks = y_conjecture_scan(calc, 7);
        for (const auto& ch : y_checks)
            if (!ch.ok) return fail("counterexample: " + ch.name + " @ " + ch.witness);
        // sZ canopy description vs phi(Z), n <= 6
        auto img = phi(Z_series(calc, 6));
        auto sz = sZ_series(6);
        std::string w = DendSeries<BPoly>::first_difference(img, sz);
        if (!w.empty()) return fail("counterexample: phi(Z) vs sZ @ " + w);
        return pass();
    });

    criterion(8, "randomized property suites, 100 cases each at degrees <= 5", 600.0, [&] {
        std::mt19937 rng(777);
        std::uniform_int_distribution<long long> d(-3, 3);
        std::uniform_int_distribution<int> deg(1, 5);
        auto rnd = [&] {
            DendSeries<Rational> s(5);
            for (int i = 0; i < 8; ++i) {
                int n = deg(rng);
                auto trees = enumerate_pbtrees(n);
                std::uniform_int_distribution<std::size_t> pick(0, trees.size() - 1);
                s.add(trees[pick(rng)], Rational(d(rng)));
            }
            return s;
        };
        for (int it = 0; it < 100; ++it) {
            auto x = rnd(), y = rnd(), z = rnd();
            if (dend_prec(dend_prec(x, y), z) != dend_prec(x, dend_star(y, z)))
                return fail("dendriform axiom 1, case " + std::to_string(it));
            if (dend_prec(dend_succ(x, y), z) != dend_succ(x, dend_prec(y, z)))
                return fail("dendriform axiom 2, case " + std::to_string(it));
            if (dend_succ(dend_star(x, y), z) != dend_succ(x, dend_succ(y, z)))
                return fail("dendriform axiom 3, case " + std::to_string(it));
            if (dend_prec(dend_vee(x, y), z) != dend_vee(x, dend_star(y, z)))
                return fail("vee_star, case " + std::to_string(it));
            if (dend_succ(x, dend_vee(y, z)) != dend_vee(dend_star(x, y), z))
                return fail("vee_star mirror, case " + std::to_string(it));
            auto t2 = rnd(), u2 = rnd();
            if (dend_vee_mid(x, dend_vee_mid(y, z, t2), u2) !=
                dend_vee_mid(dend_star(x, y), z, dend_star(t2, u2)))
                return fail("double inversion, case " + std::to_string(it));
        }
        // suspension / phi commutation and bar relations
        std::uniform_int_distribution<long long> dc(-4, 4);
        for (int it = 0; it < 100; ++it) {
            PreLieSeries<Rational> a(4);
            for (int n = 1; n <= 4; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) a.set(t, Rational(dc(rng)));
            if (phi(a.suspension()) != phi(a).suspension())
                return fail("suspension commutation, case " + std::to_string(it));
        }
        {
            auto Ut = sUt_series(calc, 5), Vt = sVt_series(calc, 5);
            auto mVt = Vt;
            mVt.scale_rat(Rational(-1));
            if (Ut.bar() != mVt) return fail("bar(sU_t) != -sV_t");
            auto Et = sEt_series(calc, 5), Dt = sDt_series(calc, 5);
            if (Et.bar() != Et || Dt.bar() != Dt) return fail("bar fixedness of sE_t/sD_t");
            auto R = right_comb_series<Rational>(5), L = left_comb_series<Rational>(5);
            auto mL = L;
            mL.scale_rat(Rational(-1));
            if (R.bar() != mL) return fail("bar(R) != -L");
        }
        // Sym membership canopy constancy for sD and sF through degree 6
        auto D0 = sDt_series(calc, 6, false);
        auto F0 = sF_series(calc, 6);
        for (int n = 2; n <= 6; ++n) {
            if (!sym_membership(D0, n).in_sym) return fail("sD leaves Sym at " + std::to_string(n));
            if (!sym_membership(F0, n).in_sym) return fail("sF leaves Sym at " + std::to_string(n));
        }
        return pass();
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}

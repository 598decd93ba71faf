#pragma once

#include "treeflow/dend_verify.hpp"
#include "treeflow/parallel.hpp"
#include "treeflow/sturm.hpp"
#include "treeflow/symfun.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <set>

namespace treeflow {

enum class CheckStatus {
    ProvedPass,
    ProvedFail,
    ConjectureConsistent,
    ConjectureCounterexample,
};

inline const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::ProvedPass: return "proved-identity-pass";
        case CheckStatus::ProvedFail: return "proved-identity-FAIL";
        case CheckStatus::ConjectureConsistent: return "conjecture-consistent";
        case CheckStatus::ConjectureCounterexample: return "conjecture-COUNTEREXAMPLE";
    }
    return "?";
}

/// One executed check. A FAIL on a proved identity is a build-breaking
/// condition; a conjecture counterexample is a reportable result.
struct CheckReport {
    std::string id;
    CheckStatus status = CheckStatus::ProvedFail;
    std::string scope;
    std::string witness;
    double seconds = 0;

    bool ok() const {
        return status == CheckStatus::ProvedPass ||
               status == CheckStatus::ConjectureConsistent;
    }
};

struct VerifyOptions {
    int degree = 5;          // N for the series identity suites
    int t_order = 8;         // M for truncated comparisons
    int oracle_degree = 6;   // recursion-vs-enumeration scan
    int dyck_max = 8;        // rho bijection scan
    int fork_max = 10;       // fork-formula scan
    int y_max = 7;           // Y conjecture scan
    int ft_max = 6;          // deformed-F consistency scan
    int z_max = 6;           // phi(Z) vs sZ scan
    int idempotent_max = 6;  // ribbon idempotency degree
    int groupring_max = 5;   // group-ring oracle degree
    int realroot_max = 7;    // Sturm scan over E_T, F_T
    int random_cases = 100;  // randomized property cases per identity
    unsigned seed = 12345;
    unsigned parallel = 0;   // 0 = hardware concurrency
};

namespace verify_detail {

using Clock = std::chrono::steady_clock;

template <class Fn>
CheckReport timed(const std::string& id, const std::string& scope, bool conjecture, Fn&& fn) {
    CheckReport r;
    r.id = id;
    r.scope = scope;
    auto start = Clock::now();
    try {
        std::pair<bool, std::string> result = fn();
        r.witness = result.second;
        if (conjecture)
            r.status = result.first ? CheckStatus::ConjectureConsistent
                                    : CheckStatus::ConjectureCounterexample;
        else
            r.status = result.first ? CheckStatus::ProvedPass : CheckStatus::ProvedFail;
    } catch (const std::exception& e) {
        r.status = conjecture ? CheckStatus::ConjectureCounterexample : CheckStatus::ProvedFail;
        r.witness = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

inline std::pair<bool, std::string> all_pass(const std::vector<IdentityCheck>& checks) {
    for (const auto& c : checks)
        if (!c.ok) return {false, c.name + " @ " + c.witness};
    return {true, ""};
}

inline PreLieSeries<Rational> random_prelie(int N, std::mt19937& rng) {
    std::uniform_int_distribution<long long> d(-4, 4);
    PreLieSeries<Rational> s(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_rooted_trees(n)) s.set(t, Rational(d(rng)));
    return s;
}

inline DendSeries<Rational> random_dend(int N, std::mt19937& rng) {
    std::uniform_int_distribution<long long> d(-3, 3);
    std::uniform_int_distribution<int> deg(1, N);
    DendSeries<Rational> s(N);
    for (int i = 0; i < 8; ++i) {
        int n = deg(rng);
        auto trees = enumerate_pbtrees(n);
        std::uniform_int_distribution<std::size_t> pick(0, trees.size() - 1);
        s.add(trees[pick(rng)], Rational(d(rng)));
    }
    return s;
}

}  // namespace verify_detail

/// Every proved statement, executed as a check. Any failure here is a defect.
inline std::vector<CheckReport> run_theorem_suite(const VerifyOptions& opt) {
    namespace vd = verify_detail;
    auto calc = std::make_shared<FlowCalculator>();
    std::vector<std::function<CheckReport()>> jobs;
    std::string nm = "N=" + std::to_string(opt.degree) + ", M=" + std::to_string(opt.t_order);

    jobs.push_back([=] {
        return vd::timed("prelie.Hk_composition", "N=6, (k,l) in {(1,1),(2,3),(1,-1)}", false, [&] {
            for (auto [k, l] :
                 std::vector<std::pair<long long, long long>>{{1, 1}, {2, 3}, {1, -1}})
                if (compose(hk_series(k, 6), hk_series(l, 6)) != hk_series(k + l, 6))
                    return std::pair{false, "(k,l)=(" + std::to_string(k) + "," +
                                                std::to_string(l) + ")"};
            if (inverse(hk_series(1, 6)) != hk_series(-1, 6))
                return std::pair{false, std::string("inverse(H_1) != H_{-1}")};
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("prelie.edge_subset_vs_labelled_oracle", "all tree pairs, N<=4", false, [&] {
            for (int n1 = 1; n1 <= 4; ++n1)
                for (const auto& t1 : enumerate_rooted_trees(n1))
                    for (int n2 = 1; n2 <= 4; ++n2)
                        for (const auto& t2 : enumerate_rooted_trees(n2)) {
                            PreLieSeries<Rational> s(4), t(4);
                            s.set(t1, Rational(1));
                            t.set(t2, Rational(1));
                            if (labelled_compose_oracle(s, t) != compose(s, t))
                                return std::pair{false, t1.encode() + " o " + t2.encode()};
                        }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("prelie.rooted_monoid_axioms", "random triples, N=4", false, [&] {
            std::mt19937 rng(opt.seed);
            for (int it = 0; it < std::max(3, opt.random_cases / 10); ++it) {
                auto s = vd::random_prelie(4, rng), t = vd::random_prelie(4, rng);
                auto u = vd::random_prelie(4, rng), v = vd::random_prelie(4, rng);
                auto w = vd::random_prelie(4, rng);
                if (diamond(diamond(s, t, u), v, w) !=
                    diamond(s, diamond(t, v, w), compose(u, w)))
                    return std::pair{false, "radixe axiom, case " + std::to_string(it)};
                if (diamond(s, t, t) != compose(s, t))
                    return std::pair{false, "diamond(s,t,t) != compose, case " +
                                                std::to_string(it)};
                if (compose(compose(s, t), w) != compose(s, compose(t, w)))
                    return std::pair{false, "associativity, case " + std::to_string(it)};
            }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("flows.prelie_identities", nm, false, [&] {
            return vd::all_pass(verify_prelie_identities(*calc, opt.degree));
        });
    });

    jobs.push_back([=] {
        return vd::timed("flows.recursion_vs_oracle",
                         "all trees n<=" + std::to_string(opt.oracle_degree) +
                             ", t-order " + std::to_string(opt.t_order),
                         false, [&] {
            for (int n = 1; n <= opt.oracle_degree; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) {
                    if (calc->E(t).expand(opt.t_order) !=
                        oracle_expansion(t, FlowClass::All, opt.t_order))
                        return std::pair{false, "E @ " + t.encode()};
                    if (calc->D(t).expand(opt.t_order) !=
                        oracle_expansion(t, FlowClass::Small, opt.t_order))
                        return std::pair{false, "D @ " + t.encode()};
                    if (calc->F(t) != oracle_poly(t, FlowClass::ConnectedExitOne, 1))
                        return std::pair{false, "F @ " + t.encode()};
                }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("flows.pull_up_commutes", "n in {5,6}", false, [&] {
            for (int n = 5; n <= 6; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) {
                    if (t.is_corolla()) continue;
                    TreeShape shape(t);
                    FlowFraction ref = calc->E(t);
                    for (int w : FlowCalculator::eligible_leaves(shape))
                        if (calc->E_via_leaf(t, w) != ref)
                            return std::pair{false, t.encode() + " leaf " + std::to_string(w)};
                }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("flows.dyck_bijection",
                         "Lnr_n, n<=" + std::to_string(opt.dyck_max), false, [&] {
            for (int n = 1; n <= opt.dyck_max; ++n) {
                RootedTree t = linear_tree(n);
                auto flows = enumerate_flows(t, FlowClass::Closed, 0);
                if (flows.size() != static_cast<std::size_t>(catalan(n)))
                    return std::pair{false, "closed-flow count on Lnr_" + std::to_string(n)};
                std::set<std::string> words;
                BPoly by_size;
                for (const auto& f : flows) {
                    DyckPath p = rho(t, f);
                    if (f.size != p.matched_nonpeak_pairs())
                        return std::pair{false, "statistic at " + p.word()};
                    Flow back = rho_inverse(p);
                    if (back.input != f.input || back.output != f.output)
                        return std::pair{false, "round trip at " + p.word()};
                    words.insert(p.word());
                    by_size += BPoly::monomial(f.size);
                }
                if (words.size() != flows.size())
                    return std::pair{false, "rho not injective on Lnr_" + std::to_string(n)};
                // E_{Lnr_n} equals both the peak-statistic polynomial and the
                // closed-form Narayana polynomial
                BPoly by_peaks;
                for (const auto& p : enumerate_dyck_paths(n))
                    by_peaks += BPoly::monomial(n - p.peaks());
                if (calc->ca(n) != by_size || calc->ca(n) != by_peaks ||
                    calc->ca(n) != narayana_poly(n))
                    return std::pair{false, "Narayana identification at n = " + std::to_string(n)};
            }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("flows.linear_ordinary_series", "x-order 6", false, [&] {
            return vd::all_pass(linear_ordinary_series_check(6));
        });
    });

    jobs.push_back([=] {
        return vd::timed("words.section5_relations", "length <= 6", false, [&] {
            return vd::all_pass(verify_word_identities(*calc, 6));
        });
    });

    jobs.push_back([=] {
        return vd::timed("dend.comb_identities", "N=6", false,
                         [&] { return vd::all_pass(verify_comb_identities(6)); });
    });

    jobs.push_back([=] {
        return vd::timed("dend.axioms_random", "degrees <= 5", false, [&] {
            std::mt19937 rng(opt.seed + 1);
            for (int it = 0; it < opt.random_cases; ++it) {
                auto x = vd::random_dend(5, rng), y = vd::random_dend(5, rng),
                     z = vd::random_dend(5, rng);
                if (dend_prec(dend_prec(x, y), z) != dend_prec(x, dend_star(y, z)))
                    return std::pair{false, "axiom 1, case " + std::to_string(it)};
                if (dend_prec(dend_succ(x, y), z) != dend_succ(x, dend_prec(y, z)))
                    return std::pair{false, "axiom 2, case " + std::to_string(it)};
                if (dend_succ(dend_star(x, y), z) != dend_succ(x, dend_succ(y, z)))
                    return std::pair{false, "axiom 3, case " + std::to_string(it)};
                if (dend_prec(dend_vee(x, y), z) != dend_vee(x, dend_star(y, z)))
                    return std::pair{false, "vee_star left, case " + std::to_string(it)};
                if (dend_succ(x, dend_vee(y, z)) != dend_vee(dend_star(x, y), z))
                    return std::pair{false, "vee_star right, case " + std::to_string(it)};
                auto t2 = vd::random_dend(5, rng), u2 = vd::random_dend(5, rng);
                auto mid = dend_vee_mid(y, z, t2);
                if (dend_vee_mid(x, mid, u2) !=
                    dend_vee_mid(dend_star(x, y), z, dend_star(t2, u2)))
                    return std::pair{false, "double inversion, case " + std::to_string(it)};
            }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("dend.phi_functoriality", "random series, N=4", false, [&] {
            std::mt19937 rng(opt.seed + 2);
            for (int it = 0; it < std::max(3, opt.random_cases / 10); ++it) {
                auto a = vd::random_prelie(4, rng), b = vd::random_prelie(4, rng),
                     c = vd::random_prelie(4, rng);
                if (phi(compose(a, b)) != dend_compose(phi(a), phi(b)))
                    return std::pair{false, "phi(s o t), case " + std::to_string(it)};
                if (phi(diamond(a, b, c)) != dend_diamond(phi(a), phi(b), phi(c)))
                    return std::pair{false, "phi(s <>(t,u)), case " + std::to_string(it)};
                if (phi(a.suspension()) != phi(a).suspension())
                    return std::pair{false, "suspension, case " + std::to_string(it)};
            }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("dend.flow_identities", "N=" + std::to_string(opt.degree), false, [&] {
            std::vector<IdentityCheck> proved;
            for (auto& c : verify_dend_identities(*calc, opt.degree))
                if (c.name.rfind("conjecture:", 0) != 0) proved.push_back(c);
            return vd::all_pass(proved);
        });
    });

    jobs.push_back([=] {
        return vd::timed("sym.membership_sD_sF",
                         "n <= " + std::to_string(opt.idempotent_max), false, [&] {
            auto D0 = sDt_series(*calc, opt.idempotent_max, false);
            auto F0 = sF_series(*calc, opt.idempotent_max);
            for (int n = 2; n <= opt.idempotent_max; ++n) {
                auto md = sym_membership(D0, n);
                if (!md.in_sym)
                    return std::pair{false, "sD @ " + md.witness_a + " vs " + md.witness_b};
                auto mf = sym_membership(F0, n);
                if (!mf.in_sym)
                    return std::pair{false, "sF @ " + mf.witness_a + " vs " + mf.witness_b};
            }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("sym.lie_idempotents_D_F",
                         "ribbon n <= " + std::to_string(opt.idempotent_max) +
                             ", group ring n <= " + std::to_string(opt.groupring_max),
                         false, [&] {
            for (int n = 2; n <= opt.idempotent_max; ++n)
                for (auto family : {IdempotentFamily::D, IdempotentFamily::F}) {
                    auto x = idempotent_ribbon(family, n, *calc);
                    auto c = idempotent_scalar(family, n, *calc);
                    std::string label =
                        std::string(family_name(family)) + "_" + std::to_string(n);
                    auto checks = quasi_idempotent_check(x, c, label);
                    for (const auto& ch : checks)
                        if (!ch.ok) return std::pair{false, ch.name};
                    if (n <= opt.groupring_max) {
                        auto gr = groupring_idempotent_check(x, c, label);
                        if (!gr.ok) return std::pair{false, gr.name};
                    }
                }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("sym.groupring_oracle_consistency",
                         "n <= " + std::to_string(opt.groupring_max), false, [&] {
            std::mt19937 rng(opt.seed + 3);
            std::uniform_int_distribution<long long> d(-2, 2);
            for (int n = 2; n <= opt.groupring_max; ++n) {
                for (int it = 0; it < 5; ++it) {
                    RibbonElement<Rational> x(n), y(n);
                    for (unsigned m = 0; m < (1u << (n - 1)); ++m) {
                        x.set(symfun_detail::mask_to_word(m, n), Rational(d(rng)));
                        y.set(symfun_detail::mask_to_word(m, n), Rational(d(rng)));
                    }
                    if (groupring_oracle(ribbon_internal_product(x, y)) !=
                        groupring_internal_product(groupring_oracle(x), groupring_oracle(y)))
                        return std::pair{false, "internal product at n = " + std::to_string(n)};
                }
                // descent classes partition the group
                GroupRingElement<Rational> total{n, {}};
                for (unsigned m = 0; m < (1u << (n - 1)); ++m) {
                    RibbonElement<Rational> r(n);
                    r.set(symfun_detail::mask_to_word(m, n), Rational(1));
                    for (const auto& [p, v] : groupring_oracle(r).c) total.add(p, v);
                }
                for (const auto& [p, v] : total.c)
                    if (v != Rational(1))
                        return std::pair{false, "partition of S_" + std::to_string(n)};
            }
            return std::pair{true, std::string()};
        });
    });

    auto reports = run_jobs(std::move(jobs), opt.parallel);
    return reports;
}

/// The paper's conjectures and open questions, re-tested at the stated
/// scales. Counterexamples are reported with witnesses, never suppressed.
inline std::vector<CheckReport> run_conjecture_scan(const VerifyOptions& opt) {
    namespace vd = verify_detail;
    auto calc = std::make_shared<FlowCalculator>();
    std::vector<std::function<CheckReport()>> jobs;

    jobs.push_back([=] {
        return vd::timed("conjecture.fork_formula",
                         "n <= " + std::to_string(opt.fork_max), true, [&] {
            for (int n = 2; n <= opt.fork_max; ++n)
                for (const auto& row : fork_conjecture_check(n))
                    if (!row.ok)
                        return std::pair{false, "Frk_{" + std::to_string(row.stem) + "," +
                                                    std::to_string(row.total - row.stem) +
                                                    "}, k = " + std::to_string(row.size) +
                                                    ": oracle " + std::to_string(row.oracle) +
                                                    " vs formula " + row.formula.str()};
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.deformed_F_recursion",
                         "all trees n <= " + std::to_string(opt.ft_max), true, [&] {
            // consistency over every reduction leaf, the paper's fork value,
            // agreement with the linear base cases, and F at t = 0
            for (int n = 1; n <= opt.ft_max; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) {
                    FlowFraction ft = calc->Ft(t);  // throws on inconsistency
                    if (ft.eval_t0() != calc->F(t))
                        return std::pair{false, "t = 0 mismatch at " + t.encode()};
                }
            for (int n = 3; n <= opt.ft_max; ++n) {
                RootedTree t = linear_tree(n);
                TreeShape shape(t);
                // reduce the linear tree instead of using the base case
                FlowFraction via_base = calc->Ft(t);
                auto ctx = surgery(shape.without_subtree(static_cast<int>(shape.size()) - 1),
                                   static_cast<int>(shape.size()) - 2);
                FlowFraction one_minus_t(
                    BTPoly(std::vector<BPoly>{BPoly(Rational(1)), BPoly(Rational(-1))}), 0);
                FlowFraction lhs = calc->Ft(ctx.t_uw) +
                                   calc->Ft(ctx.bottom) * calc->Ft(ctx.s_prime) * one_minus_t;
                if (lhs != via_base)
                    return std::pair{false, "linear reduction disagrees at n = " +
                                                std::to_string(n)};
            }
            FlowFraction fork_expect =
                FlowFraction(BTPoly(BPoly::monomial(1)), 2) +
                FlowFraction(BTPoly(BPoly(std::vector<Rational>{0, 1, 2})), 1);
            if (calc->Ft(fork(2, 2)) != fork_expect)
                return std::pair{false, std::string("fork value differs from the paper")};
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.Y_saturated",
                         "n <= " + std::to_string(opt.y_max), true,
                         [&] { return vd::all_pass(y_conjecture_scan(*calc, opt.y_max)); });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.sZ_canopy_blocks",
                         "n <= " + std::to_string(opt.z_max), true, [&] {
            auto img = phi(Z_series(*calc, opt.z_max));
            auto sz = sZ_series(opt.z_max);
            std::string w = DendSeries<BPoly>::first_difference(img, sz);
            return std::pair{w.empty(), w};
        });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.sFt_is_phi_of_Ft", "n <= 5", true, [&] {
            int N = std::min(5, opt.ft_max);
            PreLieSeries<FlowFraction> ftp(N);
            for (int n = 1; n <= N; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) ftp.set(t, calc->Ft(t));
            auto img = phi(ftp);
            auto sft = sFt_series(*calc, N);
            std::string w = DendSeries<FlowFraction>::first_difference(img, sft);
            return std::pair{w.empty(), w};
        });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.lie_idempotents_Ft_Z",
                         "n <= " + std::to_string(opt.idempotent_max), true, [&] {
            for (int n = 2; n <= opt.idempotent_max; ++n)
                for (auto family : {IdempotentFamily::Ft, IdempotentFamily::Z}) {
                    auto x = idempotent_ribbon(family, n, *calc);
                    auto c = idempotent_scalar(family, n, *calc);
                    std::string label =
                        std::string(family_name(family)) + "_" + std::to_string(n);
                    for (const auto& ch : quasi_idempotent_check(x, c, label))
                        if (!ch.ok) return std::pair{false, ch.name};
                }
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("question.real_nonpositive_roots",
                         "E_T, F_T for n <= " + std::to_string(opt.realroot_max) +
                             "; z_{p,q} for p,q <= 6",
                         true, [&] {
            for (int n = 1; n <= opt.realroot_max; ++n)
                for (const auto& t : enumerate_rooted_trees(n)) {
                    if (!all_roots_real_nonpositive(calc->E0(t)))
                        return std::pair{false, "E @ " + t.encode()};
                    BPoly f = calc->F(t);
                    if (!f.is_zero() && !all_roots_real_nonpositive(f))
                        return std::pair{false, "F @ " + t.encode()};
                }
            for (long long p = 0; p <= 6; ++p)
                for (long long q = 0; q <= 6; ++q)
                    if (!all_roots_real(z_poly(p, q)))
                        return std::pair{false, "z_{" + std::to_string(p) + "," +
                                                    std::to_string(q) + "}"};
            return std::pair{true, std::string()};
        });
    });

    jobs.push_back([=] {
        return vd::timed("conjecture.phi_Z_from_dend_suite",
                         "N=" + std::to_string(opt.z_max), true, [&] {
            std::vector<IdentityCheck> conj;
            for (auto& c : verify_dend_identities(*calc, std::min(4, opt.z_max)))
                if (c.name.rfind("conjecture:", 0) == 0) conj.push_back(c);
            return vd::all_pass(conj);
        });
    });

    return run_jobs(std::move(jobs), opt.parallel);
}

inline bool any_proved_failure(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (r.status == CheckStatus::ProvedFail) return true;
    return false;
}

}  // namespace treeflow

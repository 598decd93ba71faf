#pragma once

#include "treeflow/dend_flows.hpp"

namespace treeflow {

namespace dend_detail {

template <class R>
IdentityCheck compare(const std::string& name, const DendSeries<R>& a,
                      const DendSeries<R>& b) {
    std::string witness = DendSeries<R>::first_difference(a, b);
    return {name, witness.empty(), witness};
}

inline DendSeries<FlowFraction> embed(const DendSeries<BPoly>& s) {
    DendSeries<FlowFraction> out(s.degree());
    out.set_unit(FlowFraction(s.unit_coeff()));
    for (const auto& [enc, v] : s.raw()) out.set(PBTree::parse(enc), FlowFraction(v));
    return out;
}
inline DendSeries<FlowFraction> embed_rat(const DendSeries<Rational>& s) {
    DendSeries<FlowFraction> out(s.degree());
    out.set_unit(FlowFraction(s.unit_coeff()));
    for (const auto& [enc, v] : s.raw()) out.set(PBTree::parse(enc), FlowFraction(v));
    return out;
}

}  // namespace dend_detail

/// phi applied to the sum of all linear trees (aut = 1 throughout).
template <class R>
DendSeries<R> phi_linear_sum(int N) {
    PreLieSeries<R> s(N);
    for (int n = 1; n <= N; ++n) s.set(linear_tree(n), Ring<R>::one());
    return phi(s);
}

/// The comb identities of section 4.
inline std::vector<IdentityCheck> verify_comb_identities(int N) {
    using DS = DendSeries<Rational>;
    std::vector<IdentityCheck> out;
    DS one = DS::one(N), vert = DS::vertex_series(N);
    DS R = right_comb_series<Rational>(N), L = left_comb_series<Rational>(N);

    out.push_back(dend_detail::compare("R = . + . < R", R, vert + dend_prec(vert, R)));
    {
        DS rhs = vert + dend_succ(L, vert);
        rhs.scale_rat(Rational(-1));
        out.push_back(dend_detail::compare("L = -. - L > .", L, rhs));
    }
    out.push_back(dend_detail::compare("(1+L)(1+R) = 1", dend_star(one + L, one + R), one));
    {
        DS lhs = dend_compose(R.suspension(), dend_vee(one + L, one + R));
        DS rhs = L;
        rhs.scale_rat(Rational(-1));
        out.push_back(dend_detail::compare("Sigma R o ((1+L) v (1+R)) = -L", lhs, rhs));
    }
    {
        DS big = dend_vee(one - L.suspension(), one - R.suspension());
        DS small = dend_vee(one + L, one + R);
        out.push_back(dend_detail::compare("inverse of (1-SL) v (1-SR) is (1+L) v (1+R)",
                                           dend_compose(big, small), vert));
        out.push_back(dend_detail::compare("two-sided inverse",
                                           dend_compose(small, big), vert));
    }
    {
        DS phil = phi_linear_sum<Rational>(N);
        DS nl(N);
        for (int n = 1; n <= N; ++n) nl.set(left_comb(n), Rational(n));
        out.push_back(dend_detail::compare("(1 - Sigma L) phi(sum Lnr) = sum n L_n",
                                           dend_star(one - L.suspension(), phil), nl));
        out.push_back(dend_detail::compare(
            "(sum n L_n)(1 - Sigma R) = (1-SL) v (1-SR)",
            dend_star(nl, one - R.suspension()),
            dend_vee(one - L.suspension(), one - R.suspension())));
        out.push_back(dend_detail::compare(
            "phi(H_1) = (1-SL) phi(sum Lnr) (1-SR)", phi(hk_series(1, N)),
            dend_star(dend_star(one - L.suspension(), phil), one - R.suspension())));
    }
    out.push_back(dend_detail::compare("phi(H_1) = (1-SL) v (1-SR)", phi(hk_series(1, N)),
                                       dend_vee(one - L.suspension(), one - R.suspension())));
    out.push_back(dend_detail::compare("phi(Crls) = (1+R) v (1+L)",
                                       phi(crls_series<Rational>(N)),
                                       dend_vee(one + R, one + L)));
    {
        DS rhs = L;
        rhs.scale_rat(Rational(-1));
        out.push_back(dend_detail::compare("bar(R) = -L", R.bar(), rhs));
    }
    return out;
}

/// The dendriform flow-series identities of sections 5 and 6, on exact
/// fraction coefficients.
inline std::vector<IdentityCheck> verify_dend_identities(FlowCalculator& calc, int N) {
    using DS = DendSeries<FlowFraction>;
    std::vector<IdentityCheck> out;
    DS one = DS::one(N), vert = DS::vertex_series(N);
    DS Ut = sUt_series(calc, N), U0 = sUt_series(calc, N, false);
    DS Vt = sVt_series(calc, N), V0 = sVt_series(calc, N, false);
    DS Dt = sDt_series(calc, N), Et = sEt_series(calc, N);
    DS Ect = sEct_series(calc, N);
    DS Rc = dend_detail::embed_rat(right_comb_series<Rational>(N));
    DS Lc = dend_detail::embed_rat(left_comb_series<Rational>(N));

    // lemmeVU on the sample grid (u, v) in {(t,0), (0,t), (t,t)}
    {
        auto lift_full = [&](bool left_refined, bool right_refined) {
            return lift_by_canopy(N_series(calc, N + 1, left_refined) *
                                      T_series(calc, N + 1) *
                                      P_series(calc, N + 1, right_refined),
                                  CanopyMode::Full, N);
        };
        FlowFraction t = dend_detail::t_fraction();
        // u = t, v = 0: (1+V)(1+U_t) = 1 - t (N T P_t)
        {
            DS lhs = dend_star(one + V0, one + Ut);
            DS rhs = lift_full(false, true);
            rhs.scale(t);
            rhs.scale_rat(Rational(-1));
            rhs = one + rhs;
            out.push_back(dend_detail::compare("lemmeVU at (u,v) = (t,0)", lhs, rhs));
        }
        // u = 0, v = t: (1+V_t)(1+U) = 1 + t (N_t T P)
        {
            DS lhs = dend_star(one + Vt, one + U0);
            DS rhs = lift_full(true, false);
            rhs.scale(t);
            rhs = one + rhs;
            out.push_back(dend_detail::compare("lemmeVU at (u,v) = (0,t)", lhs, rhs));
        }
        // u = v = t: inverse relation
        out.push_back(dend_detail::compare("lemmeVU at u = v: (1+V_t)(1+U_t) = 1",
                                           dend_star(one + Vt, one + Ut), one));
    }

    out.push_back(dend_detail::compare("sU_t = R o sE_t", Ut, dend_compose(Rc, Et)));
    out.push_back(dend_detail::compare("sV_t = L o sE_t", Vt, dend_compose(Lc, Et)));
    out.push_back(dend_detail::compare(
        "sD_t = ((1+R) v (1+L)) <>(., sE_t)", Dt,
        dend_diamond(dend_vee(one + Rc, one + Lc), vert, Et)));

    // bar fixedness and exchange
    out.push_back(dend_detail::compare("bar(sE_t) = sE_t", Et.bar(), Et));
    out.push_back(dend_detail::compare("bar(sD_t) = sD_t", Dt.bar(), Dt));
    {
        DS rhs = Vt;
        rhs.scale_rat(Rational(-1));
        out.push_back(dend_detail::compare("bar(sU_t) = -sV_t", Ut.bar(), rhs));
    }

    // dendriform images of the Pre-Lie flow series
    out.push_back(dend_detail::compare("phi(E_t) = sE_t", phi(Et_series(calc, N)), Et));
    out.push_back(dend_detail::compare("phi(D_t) = sD_t", phi(Dt_series(calc, N)), Dt));
    out.push_back(
        dend_detail::compare("phi(E^c_t) = closed formula", phi(Ect_series(calc, N)), Ect));
    out.push_back(dend_detail::compare("phi(F) = sF (= -NTP)", phi(F_series(calc, N)),
                                       sF_series(calc, N)));
    out.push_back(dend_detail::compare("conjecture: phi(Z) = sZ (canopy blocks)",
                                       phi(Z_series(calc, N)), sZ_series(N)));

    // block-product coefficients agree with the built series
    {
        bool ok = true;
        std::string witness;
        DS D0 = sDt_series(calc, N, false);
        DendSeries<BPoly> F0 = sF_series(calc, N);
        for (int n = 1; n <= N && ok; ++n)
            for (const auto& tau : enumerate_pbtrees(n)) {
                auto bad = [&](const char* tag) {
                    ok = false;
                    witness = std::string(tag) + " at " + tau.encode();
                };
                if (canopy_coefficient(tau, CanopySeries::sUt, calc) != Ut.coeff(tau))
                    { bad("sU_t"); break; }
                if (canopy_coefficient(tau, CanopySeries::sVt, calc) != Vt.coeff(tau))
                    { bad("sV_t"); break; }
                if (canopy_coefficient(tau, CanopySeries::sDt, calc) != Dt.coeff(tau))
                    { bad("sD_t"); break; }
                if (canopy_coefficient(tau, CanopySeries::sD, calc) != D0.coeff(tau))
                    { bad("sD"); break; }
                if (canopy_coefficient(tau, CanopySeries::sEt, calc) != Et.coeff(tau))
                    { bad("sE_t"); break; }
                if (canopy_coefficient(tau, CanopySeries::sF, calc) !=
                    FlowFraction(F0.coeff(tau)))
                    { bad("sF"); break; }
            }
        out.push_back({"block-product coefficients match the series", ok, witness});
    }
    return out;
}

}  // namespace treeflow

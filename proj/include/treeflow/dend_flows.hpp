#pragma once

#include "treeflow/dend.hpp"

namespace treeflow {

namespace dend_detail {

struct Block {
    char letter;
    std::size_t len;
};

inline std::vector<Block> blocks_of(const std::string& w) {
    std::vector<Block> out;
    for (char c : w) {
        if (!out.empty() && out.back().letter == c)
            ++out.back().len;
        else
            out.push_back({c, 1});
    }
    return out;
}

inline std::size_t count_letters(const std::string& w, char c) {
    std::size_t n = 0;
    for (char x : w)
        if (x == c) ++n;
    return n;
}

// Split the canopy of a join tree at the root: the left part is the
// right-completed canopy of the left subtree, the right part the
// left-completed canopy of the right subtree (empty for unit subtrees).
inline std::pair<std::string, std::string> root_cut(const PBTree& t) {
    std::string left, right;
    if (!t.left().is_unit()) left = t.left().right_completed_canopy();
    if (!t.right().is_unit()) right = t.right().left_completed_canopy();
    return {left, right};
}

// t/(1-t) + b
inline FlowFraction t_over_one_minus_t_plus_b() {
    return FlowFraction(BTPoly(std::vector<BPoly>{BPoly(), BPoly(Rational(1))}), 1) +
           FlowFraction(BPoly::monomial(1));
}

inline FlowFraction t_fraction() {
    return FlowFraction(BTPoly(std::vector<BPoly>{BPoly(), BPoly(Rational(1))}), 0);
}

}  // namespace dend_detail

/// sU_t, sV_t: lifts of the word series U_t, V_t by completed canopies.
inline DendSeries<FlowFraction> sUt_series(FlowCalculator& calc, int N, bool refined = true) {
    return lift_by_canopy(U_series(calc, N, refined), CanopyMode::RightCompleted, N);
}
inline DendSeries<FlowFraction> sVt_series(FlowCalculator& calc, int N, bool refined = true) {
    return lift_by_canopy(V_series(calc, N, refined), CanopyMode::LeftCompleted, N);
}

/// sD_t = (1 + sU_t) v (1 + sV_t).
inline DendSeries<FlowFraction> sDt_series(FlowCalculator& calc, int N, bool refined = true) {
    DendSeries<FlowFraction> one = DendSeries<FlowFraction>::one(N);
    return dend_vee(one + sUt_series(calc, N, refined), one + sVt_series(calc, N, refined));
}

/// sE_t = sD_t/(1-t) + b/t (sD_t - sD).
inline DendSeries<FlowFraction> sEt_series(FlowCalculator& calc, int N) {
    DendSeries<FlowFraction> dt = sDt_series(calc, N, true);
    DendSeries<FlowFraction> d0 = sDt_series(calc, N, false);
    DendSeries<FlowFraction> diff = dt - d0;
    DendSeries<FlowFraction> out(N);
    for (const auto& [enc, v] : dt.raw()) {
        PBTree t = PBTree::parse(enc);
        FlowFraction over_t = diff.coeff(t).divided_by_t();
        over_t.scale(BPoly::monomial(1));
        out.set(t, v * FlowFraction::inv_one_minus_t(1) + over_t);
    }
    return out;
}

/// sF = -(full-canopy lift of N T P).
inline DendSeries<BPoly> sF_series(FlowCalculator& calc, int N) {
    WordSeries<FlowFraction> w =
        N_series(calc, N + 1, false) * T_series(calc, N + 1) * P_series(calc, N + 1, false);
    DendSeries<FlowFraction> lift = lift_by_canopy(w, CanopyMode::Full, N);
    DendSeries<BPoly> out(N);
    for (const auto& [enc, v] : lift.raw()) out.set(PBTree::parse(enc), -v.eval_t0());
    return out;
}

/// sF_t = -(1-t) N_t T P_t, lifted by the full canopy; sF at t = 0.
inline DendSeries<FlowFraction> sFt_series(FlowCalculator& calc, int N) {
    WordSeries<FlowFraction> w =
        N_series(calc, N + 1, true) * T_series(calc, N + 1) * P_series(calc, N + 1, true);
    BTPoly minus_one_minus_t(std::vector<BPoly>{BPoly(Rational(-1)), BPoly(Rational(1))});
    w.scale(FlowFraction(minus_one_minus_t, 0));
    return lift_by_canopy(w, CanopyMode::Full, N);
}

/// sE^c_t by the closed formula
///   ./(1-t) + (t/(1-t)+b) 1 v (N_t T P) - (t/(1-t)+b) (N T P_t) v 1
///   - t (t/(1-t)+b) (N T P_t) v (N_t T P).
inline DendSeries<FlowFraction> sEct_series(FlowCalculator& calc, int N) {
    using DS = DendSeries<FlowFraction>;
    int M = N + 1;  // full canopies are one longer than the degree
    DS right = lift_by_canopy(
        N_series(calc, M, true) * T_series(calc, M) * P_series(calc, M, false),
        CanopyMode::Full, N);
    DS left = lift_by_canopy(
        N_series(calc, M, false) * T_series(calc, M) * P_series(calc, M, true),
        CanopyMode::Full, N);
    DS one = DS::one(N);
    FlowFraction coef = dend_detail::t_over_one_minus_t_plus_b();
    DS out = DS::vertex_series(N);
    out.scale(FlowFraction::inv_one_minus_t(1));
    DS term = dend_vee(one, right);
    term.scale(coef);
    out = out + term;
    term = dend_vee(left, one);
    term.scale(coef);
    out = out - term;
    term = dend_vee(left, right);
    term.scale(coef * dend_detail::t_fraction());
    out = out - term;
    return out;
}

/// sE^c = . + b 1 v (N T P) - b (N T P) v 1 (value of the above at t = 0).
inline DendSeries<BPoly> sEc_series(FlowCalculator& calc, int N) {
    DendSeries<BPoly> f = sF_series(calc, N);
    DendSeries<BPoly> one = DendSeries<BPoly>::one(N);
    DendSeries<BPoly> out = DendSeries<BPoly>::vertex_series(N);
    DendSeries<BPoly> lower = dend_vee(one, f);  // 1 v (-NTP is f)
    lower.scale(BPoly::monomial(1));
    DendSeries<BPoly> upper = dend_vee(f, one);
    upper.scale(BPoly::monomial(1));
    return out - lower + upper;
}

/// z_{p,q} = sum_k C(p,k) C(q,k) b^{p+q+1-k} (Narayana of type B on the
/// diagonal); defined for p, q >= 0.
inline BPoly z_poly(long long p, long long q) {
    BPoly out;
    for (long long k = 0; k <= std::min(p, q); ++k)
        out += BPoly::monomial(p + q + 1 - k, Rational(binomial(p, k) * binomial(q, k)));
    return out;
}

/// The conjectural description of sZ: decompose the full canopy into blocks
/// (-)^p (+)^q, take (-1)^(p-1) z_{p-1,q-1} per block, divide the product
/// by b.
inline BPoly sZ_coefficient(const PBTree& t) {
    BPoly prod(Rational(1));
    std::string w = t.full_canopy();
    auto blocks = dend_detail::blocks_of(w);
    for (std::size_t i = 0; i < blocks.size(); i += 2) {
        long long p = blocks[i].len, q = blocks[i + 1].len;
        BPoly factor = z_poly(p - 1, q - 1);
        if (p % 2 == 0) factor = -factor;
        prod *= factor;
    }
    return prod.divexact_b(1);
}

inline DendSeries<BPoly> sZ_series(int N) {
    DendSeries<BPoly> out(N);
    for (int n = 1; n <= N; ++n)
        for (const auto& t : enumerate_pbtrees(n)) out.set(t, sZ_coefficient(t));
    return out;
}

/// Per-tree coefficients straight from the block-product descriptions of
/// section 6 (the series builders above are the independent constructions).
enum class CanopySeries { sUt, sVt, sDt, sD, sEt, sF, sZ };

inline FlowFraction canopy_coefficient(const PBTree& t, CanopySeries which,
                                       FlowCalculator& calc) {
    using dend_detail::blocks_of;
    using dend_detail::count_letters;
    if (t.is_unit()) throw UnknownSeriesError("canopy coefficient of the unit tree");
    switch (which) {
        case CanopySeries::sUt: {
            std::string w = t.right_completed_canopy();
            auto blocks = blocks_of(w);
            FlowFraction r(Rational(1));
            for (std::size_t i = 0; i < blocks.size(); ++i)
                r *= (i + 1 == blocks.size()) ? calc.ca_t(blocks[i].len)
                                              : FlowFraction(calc.ca(blocks[i].len));
            std::size_t minus_blocks = 0;
            for (const auto& b : blocks)
                if (b.letter == '-') ++minus_blocks;
            r.scale(BPoly::monomial(minus_blocks));
            if (count_letters(w, '-') % 2 == 1) r.scale(Rational(-1));
            return r;
        }
        case CanopySeries::sVt: {
            std::string w = t.left_completed_canopy();
            auto blocks = blocks_of(w);
            FlowFraction r(Rational(1));
            for (std::size_t i = 0; i < blocks.size(); ++i)
                r *= (i == 0) ? calc.ca_t(blocks[i].len)
                              : FlowFraction(calc.ca(blocks[i].len));
            std::size_t plus_blocks = 0;
            for (const auto& b : blocks)
                if (b.letter == '+') ++plus_blocks;
            r.scale(BPoly::monomial(plus_blocks));
            if (count_letters(w, '-') % 2 == 1) r.scale(Rational(-1));
            return r;
        }
        case CanopySeries::sDt:
        case CanopySeries::sD: {
            auto [lw, rw] = dend_detail::root_cut(t);
            auto lb = blocks_of(lw), rb = blocks_of(rw);
            bool refined = which == CanopySeries::sDt;
            FlowFraction r(Rational(1));
            for (std::size_t i = 0; i < lb.size(); ++i)
                r *= (refined && i + 1 == lb.size()) ? calc.ca_t(lb[i].len)
                                                     : FlowFraction(calc.ca(lb[i].len));
            for (std::size_t i = 0; i < rb.size(); ++i)
                r *= (refined && i == 0) ? calc.ca_t(rb[i].len)
                                         : FlowFraction(calc.ca(rb[i].len));
            std::size_t bpow = 0;
            for (const auto& b : lb)
                if (b.letter == '-') ++bpow;
            for (const auto& b : rb)
                if (b.letter == '+') ++bpow;
            r.scale(BPoly::monomial(bpow));
            if ((count_letters(lw, '-') + count_letters(rw, '-')) % 2 == 1)
                r.scale(Rational(-1));
            return r;
        }
        case CanopySeries::sEt: {
            auto [lw, rw] = dend_detail::root_cut(t);
            auto lb = blocks_of(lw), rb = blocks_of(rw);
            // central blocks: the + run ending the left part and the - run
            // starting the right part
            std::size_t k = lb.empty() ? 0 : lb.back().len;
            std::size_t l = rb.empty() ? 0 : rb.front().len;
            std::vector<RootedTree> kids;
            if (k > 0) kids.push_back(linear_tree(k));
            if (l > 0) kids.push_back(linear_tree(l));
            FlowFraction r = calc.E(RootedTree::b_plus(std::move(kids)));
            for (std::size_t i = 0; i + 1 < lb.size(); ++i)
                r *= FlowFraction(calc.ca(lb[i].len));
            for (std::size_t i = 1; i < rb.size(); ++i)
                r *= FlowFraction(calc.ca(rb[i].len));
            std::size_t bpow = 0;
            for (const auto& b : lb)
                if (b.letter == '-') ++bpow;
            for (const auto& b : rb)
                if (b.letter == '+') ++bpow;
            r.scale(BPoly::monomial(bpow));
            if ((count_letters(lw, '-') + count_letters(rw, '-')) % 2 == 1)
                r.scale(Rational(-1));
            return r;
        }
        case CanopySeries::sF: {
            std::string w = t.full_canopy();
            auto blocks = blocks_of(w);
            FlowFraction r(Rational(1));
            for (const auto& b : blocks) r *= FlowFraction(calc.ca(b.len));
            std::size_t minus_blocks = 0;
            for (const auto& b : blocks)
                if (b.letter == '-') ++minus_blocks;
            r.scale(BPoly::monomial(minus_blocks - 1));
            if ((count_letters(w, '-') - 1) % 2 == 1) r.scale(Rational(-1));
            return r;
        }
        case CanopySeries::sZ:
            return FlowFraction(sZ_coefficient(t));
    }
    throw UnknownSeriesError("unhandled canopy series");
}

}  // namespace treeflow

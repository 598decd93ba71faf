#pragma once

#include "treeflow/bpoly.hpp"

#include <vector>

namespace treeflow {

struct ZeroPolynomialError : std::domain_error {
    ZeroPolynomialError() : std::domain_error("Sturm: zero polynomial") {}
};

enum class RootInterval { AllReals, NegativesOnly };

namespace detail {

inline std::vector<BPoly> sturm_chain(const BPoly& p) {
    std::vector<BPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        const BPoly& a = chain[chain.size() - 2];
        const BPoly& b = chain.back();
        chain.push_back(-divmod(a, b).second);
    }
    chain.pop_back();
    return chain;
}

// Sign variations in the chain evaluated at -inf, 0, or +inf; zeros skipped.
enum class ChainPoint { MinusInf, Zero, PlusInf };

inline int sign_at(const BPoly& p, ChainPoint where) {
    if (p.is_zero()) return 0;
    switch (where) {
        case ChainPoint::Zero:
            return p.coeff(0).sign();
        case ChainPoint::PlusInf:
            return p.leading().sign();
        case ChainPoint::MinusInf:
            return p.degree() % 2 == 0 ? p.leading().sign() : -p.leading().sign();
    }
    return 0;
}

inline int variations(const std::vector<BPoly>& chain, ChainPoint where) {
    int count = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, where);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace detail

/// Number of distinct real roots of p, over all reals or restricted to b < 0,
/// by Sturm's theorem over exact rationals.
inline int count_real_roots(const BPoly& p, RootInterval interval) {
    if (p.is_zero()) throw ZeroPolynomialError();
    // Factor out b^k so the chain endpoints avoid a root at 0.
    std::size_t k = 0;
    while (p.coeff(k).is_zero()) ++k;
    BPoly q = p.divexact_b(k);
    if (q.degree() == 0)
        return interval == RootInterval::AllReals && k > 0 ? 1 : 0;
    auto chain = detail::sturm_chain(q);
    using detail::ChainPoint;
    int at_minus_inf = detail::variations(chain, ChainPoint::MinusInf);
    if (interval == RootInterval::NegativesOnly)
        return at_minus_inf - detail::variations(chain, ChainPoint::Zero);
    int distinct = at_minus_inf - detail::variations(chain, ChainPoint::PlusInf);
    return distinct + (k > 0 ? 1 : 0);
}

/// True when every complex root of p is real; vacuously true in degree <= 0.
inline bool all_roots_real(const BPoly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    BPoly h = squarefree_part(p);
    if (h.degree() <= 0) return true;
    return count_real_roots(h, RootInterval::AllReals) == h.degree();
}

/// True when every root of p is real and <= 0 (the paper's sign question).
inline bool all_roots_real_nonpositive(const BPoly& p) {
    if (!all_roots_real(p)) return false;
    // No positive roots: positives of p(b) are negatives of p(-b).
    BPoly flipped = p.flip_sign();
    return count_real_roots(flipped, RootInterval::NegativesOnly) == 0;
}

}  // namespace treeflow

#ifndef G2CERT_TESTS_TESTUTIL_HPP
#define G2CERT_TESTS_TESTUTIL_HPP

#include <vector>

#include "g2cert/symcore.hpp"

namespace g2cert::testutil {

// Random sparse polynomial over the given symbols.
inline Polynomial random_poly(SplitMix64& rng, const std::vector<SymbolId>& syms,
                              unsigned max_terms = 4, unsigned max_deg = 3) {
    Polynomial p;
    unsigned terms = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m;
        for (SymbolId s : syms) {
            unsigned e = static_cast<unsigned>(rng.below(max_deg + 1));
            if (rng.below(2) == 0) e = 0;  // keep monomials sparse
            if (e) m = m * Monomial(s, e);
        }
        p += Polynomial::term(m, rng.rational());
    }
    return p;
}

inline RationalExpr random_expr(SplitMix64& rng, const std::vector<SymbolId>& syms,
                                unsigned max_terms = 4, unsigned max_deg = 3) {
    Polynomial num = random_poly(rng, syms, max_terms, max_deg);
    Polynomial den;
    do {
        den = random_poly(rng, syms, 2, 2);
    } while (den.is_zero());
    return RationalExpr(num, den);
}

}  // namespace g2cert::testutil

#endif

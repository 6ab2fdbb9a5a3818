#pragma once

// Deterministic random generators shared by the property-style suites.

#include "tamesl2/poly.hpp"

#include <random>

namespace testgen {

using tamesl2::Coeff;
using tamesl2::Exponent4;
using tamesl2::Poly;

using Rng = std::mt19937_64;

inline Coeff small_coeff(Rng& rng, bool allow_imag = false) {
    std::uniform_int_distribution<int> d(-2, 2);
    long re = d(rng);
    if (!allow_imag) return Coeff(re);
    long im = (d(rng) > 1) ? d(rng) : 0;
    return Coeff(mpq_class(re), mpq_class(im));
}

inline Coeff nonzero_coeff(Rng& rng, bool allow_imag = false) {
    for (;;) {
        Coeff c = small_coeff(rng, allow_imag);
        if (!c.is_zero()) return c;
    }
}

// Sparse polynomial with a handful of terms, raw degree <= max_deg.
inline Poly random_poly(Rng& rng, int max_terms = 4, uint32_t max_deg = 3,
                        bool allow_imag = false) {
    std::uniform_int_distribution<int> nt(1, max_terms);
    std::uniform_int_distribution<uint32_t> de(0, max_deg);
    Poly p;
    int n = nt(rng);
    for (int t = 0; t < n; ++t) {
        Exponent4 m;
        uint32_t budget = max_deg;
        for (int v = 0; v < 4; ++v) {
            uint32_t e = de(rng) % (budget + 1);
            m.e[v] = e;
            budget -= e;
        }
        p = p + Poly::monomial(m, small_coeff(rng, allow_imag));
    }
    return p;
}

inline Poly random_nonzero_poly(Rng& rng, int max_terms = 4, uint32_t max_deg = 3) {
    for (;;) {
        Poly p = random_poly(rng, max_terms, max_deg);
        if (!p.is_zero()) return p;
    }
}

// Random two-variable polynomial in formal variables (X,Y) stored on (x1,x2),
// raw degree <= max_deg, coefficients in {-2..2}.
inline Poly random_poly2(Rng& rng, int max_terms = 3, uint32_t max_deg = 3,
                         bool nonzero = false) {
    std::uniform_int_distribution<int> nt(1, max_terms);
    std::uniform_int_distribution<uint32_t> de(0, max_deg);
    for (;;) {
        Poly p;
        int n = nt(rng);
        for (int t = 0; t < n; ++t) {
            Exponent4 m;
            m.e[0] = de(rng);
            m.e[1] = de(rng) % (max_deg - m.e[0] + 1);
            p = p + Poly::monomial(m, small_coeff(rng));
        }
        if (!nonzero || !p.is_zero()) return p;
    }
}

} // namespace testgen

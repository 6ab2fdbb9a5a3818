#pragma once

// Random tame words for the reduction and complex suites.

#include "tamesl2/tame.hpp"
#include "support/gen.hpp"

namespace testgen {

using namespace tamesl2;

inline ElementaryAuto random_elementary(Rng& rng, uint32_t max_deg = 3, bool nonconstant = false) {
    std::uniform_int_distribution<int> fam(0, 3);
    static const ElementaryFamily fams[4] = {ElementaryFamily::E12, ElementaryFamily::E34,
                                             ElementaryFamily::E13, ElementaryFamily::E24};
    for (;;) {
        Poly P = random_poly2(rng, 3, max_deg, true);
        if (nonconstant && P.raw_degree() == 0) continue;
        return ElementaryAuto{fams[fam(rng)], P};
    }
}

inline std::array<Coeff, 4> random_sl2(Rng& rng, int len = 3) {
    std::array<Coeff, 4> m{Coeff(1), Coeff(0), Coeff(0), Coeff(1)};
    std::uniform_int_distribution<int> t(-2, 2);
    std::uniform_int_distribution<int> side(0, 1);
    for (int i = 0; i < len; ++i) {
        long v = t(rng);
        std::array<Coeff, 4> s = side(rng)
                                     ? std::array<Coeff, 4>{Coeff(1), Coeff(v), Coeff(0), Coeff(1)}
                                     : std::array<Coeff, 4>{Coeff(1), Coeff(0), Coeff(v), Coeff(1)};
        m = {m[0] * s[0] + m[1] * s[2], m[0] * s[1] + m[1] * s[3], m[2] * s[0] + m[3] * s[2],
             m[2] * s[1] + m[3] * s[3]};
    }
    return m;
}

inline Mat4 random_orth(Rng& rng) {
    Mat4 m = so4_from_sl2_pair(random_sl2(rng), random_sl2(rng));
    std::uniform_int_distribution<int> flip(0, 1);
    if (flip(rng)) m = mat_tau() * m;
    return m;
}

// Word of <= max_len factors mixing elementary and orthogonal letters,
// elementary P of raw degree <= max_deg with coefficients in {-2..2}.
// Evaluations above the term cap are rejected and redrawn: stacked cubic
// substitutions otherwise produce polynomials with millions of terms,
// which exact arithmetic cannot reduce in useful time.
inline TameWord random_word(Rng& rng, int max_len = 6, uint32_t max_deg = 3,
                            size_t term_cap = 2500, TameAuto* value = nullptr) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> kind(0, 3);
    for (;;) {
        TameWord w;
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            if (kind(rng) == 0)
                w.factors.push_back(random_orth(rng));
            else
                w.factors.push_back(random_elementary(rng, max_deg));
        }
        // incremental evaluation with early bail-out on the term cap; the
        // product-size estimate rejects monsters before multiplying them out
        TameAuto acc = TameAuto::identity();
        bool ok = true;
        for (auto it = w.factors.rbegin(); it != w.factors.rend() && ok; ++it) {
            if (std::holds_alternative<ElementaryAuto>(*it)) {
                const auto& e = std::get<ElementaryAuto>(*it);
                FamilyShape sh = family_shape(e.family);
                double su = (double)acc.c[sh.u].size(), sv = (double)acc.c[sh.v].size();
                double est = 0;
                for (const auto& t : e.P.terms()) {
                    double m = su;
                    for (uint32_t k = 0; k < t.m.e[0]; ++k) m *= su;
                    for (uint32_t k = 0; k < t.m.e[1]; ++k) m *= sv;
                    est += m;
                }
                if (est > 120000) {
                    ok = false;
                    break;
                }
                acc = compose_elementary(e, acc);
            } else {
                acc = compose_linear(std::get<Mat4>(*it), acc);
            }
            size_t total = 0;
            for (const auto& c : acc.c) total += c.size();
            if (total > term_cap) ok = false;
        }
        if (!ok) continue;
        if (value) *value = acc;
        return w;
    }
}

} // namespace testgen

#pragma once

// Named automorphisms and generator families used as fixtures throughout the
// library, the tests and the CLI `examples` subcommand.

#include "tamesl2/tame.hpp"

namespace tamesl2::catalog {

// g = (x4 + x3 x1^2 + x2 x1^2 + x1^5, x2 + x1^3, x3 + x1^3, x1)
TameAuto example_g();
// its printed inverse
TameAuto example_g_inverse();

// (x1, x2 + x1 q, x3, x4 + x3 q): preserves q, not tame
TameAuto anick();

// (x1 - x2(x1+x4), x2, x3 + (x1-x4)(x1+x4) - x2(x1+x4)^2, x4 + x2(x1+x4)):
// quadric-preserving automorphism whose restriction is not the restriction
// of any tame element
TameAuto nontame_restriction();

// Henon-like factor (b^-1 x2, a x1 + a x2 P(x2,x4), -a^-1 x4, -b x3 - b x4 P(x2,x4)),
// P a two-variable polynomial on formal (X,Y); raw degree >= 2 required.
struct HenonParams {
    Coeff a, b;
    Poly P;
};
TameAuto henon_factor(const HenonParams& p);
// The factor as a two-letter word: linear part o E13-elementary.
TameWord henon_factor_word(const HenonParams& p);
// Word of the composition g_r o ... o g_1.
TameWord henon_word(const std::vector<HenonParams>& params);

// Linear diagonal automorphism (a x1, b^-1 x2, b x3, a^-1 x4).
Mat4 diag_auto(const Coeff& a, const Coeff& b);

} // namespace tamesl2::catalog

#include "tamesl2/catalog.hpp"

#include <stdexcept>

namespace tamesl2::catalog {

namespace {
Poly X(int i) { return Poly::variable(i); }
} // namespace

TameAuto example_g() {
    Poly x1 = X(0), x2 = X(1), x3 = X(2), x4 = X(3);
    return TameAuto{{x4 + x3 * x1.pow(2) + x2 * x1.pow(2) + x1.pow(5), x2 + x1.pow(3),
                     x3 + x1.pow(3), x1}};
}

TameAuto example_g_inverse() {
    Poly x1 = X(0), x2 = X(1), x3 = X(2), x4 = X(3);
    return TameAuto{{x4, x2 - x4.pow(3), x3 - x4.pow(3),
                     x1 - x4.pow(5) - x4.pow(2) * (x2 - x4.pow(3)) -
                         (x3 - x4.pow(3)) * x4.pow(2)}};
}

TameAuto anick() {
    Poly x1 = X(0), x2 = X(1), x3 = X(2), x4 = X(3);
    return TameAuto{{x1, x2 + x1 * Poly::q(), x3, x4 + x3 * Poly::q()}};
}

TameAuto nontame_restriction() {
    Poly x1 = X(0), x2 = X(1), x3 = X(2), x4 = X(3);
    Poly s = x1 + x4;
    return TameAuto{{x1 - x2 * s, x2, x3 + (x1 - x4) * s - x2 * s * s, x4 + x2 * s}};
}

TameAuto henon_factor(const HenonParams& p) {
    if (p.P.raw_degree() < 2) throw std::domain_error("henon_factor: P must have degree >= 2");
    if (p.a.is_zero() || p.b.is_zero()) throw std::domain_error("henon_factor: a, b nonzero");
    return evaluate_word(henon_factor_word(p));
}

TameWord henon_factor_word(const HenonParams& p) {
    if (p.P.raw_degree() < 2) throw std::domain_error("henon_factor: P must have degree >= 2");
    Mat4 lin = Mat4::zero();
    lin.m[0][1] = p.b.inverse();
    lin.m[1][0] = p.a;
    lin.m[2][3] = -p.a.inverse();
    lin.m[3][2] = -p.b;
    TameWord w;
    w.factors.push_back(lin);
    w.factors.push_back(ElementaryAuto{ElementaryFamily::E13, p.P});
    return w;
}

TameWord henon_word(const std::vector<HenonParams>& params) {
    // composition g_r o ... o g_1: factors listed from g_r down to g_1
    TameWord w;
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
        TameWord f = henon_factor_word(*it);
        w.factors.insert(w.factors.end(), f.factors.begin(), f.factors.end());
    }
    return w;
}

Mat4 diag_auto(const Coeff& a, const Coeff& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("diag_auto: a, b nonzero");
    Mat4 d = Mat4::zero();
    d.m[0][0] = a;
    d.m[1][1] = b.inverse();
    d.m[2][2] = b;
    d.m[3][3] = a.inverse();
    return d;
}

} // namespace tamesl2::catalog

#include <doctest.h>

#include "tamesl2/poly.hpp"
#include "support/gen.hpp"

using namespace tamesl2;
using testgen::Rng;

namespace {

Poly X(int i) { return Poly::variable(i); }

Poly mono(uint32_t i, uint32_t j, uint32_t k, uint32_t l, long c = 1) {
    return Poly::monomial(Exponent4{{i, j, k, l}}, Coeff(c));
}

} // namespace

TEST_CASE("weight matrix rows are the degrees of the variables") {
    auto rows = WeightVec::weight_matrix();
    for (int v = 0; v < 4; ++v) {
        Exponent4 m;
        m.e[v] = 1;
        CHECK(WeightVec::of_monomial(m) ==
              WeightVec::of(rows[v][0], rows[v][1], rows[v][2], rows[v][3]));
    }
}

TEST_CASE("wdeg fixtures") {
    CHECK((X(0) + X(1) + X(2) + X(3)).wdeg() == WeightVec::of(2, 1, 1, 0));
    CHECK((X(0) * X(1) + X(2) * X(2)).wdeg() == WeightVec::of(3, 3, 1, 1));
    CHECK(Poly::zero().wdeg() == WeightVec::minus_infinity());
    CHECK(Poly::q().wdeg() == WeightVec::of(2, 2, 2, 2));
    CHECK((X(0) * X(3)).wdeg() == WeightVec::of(2, 2, 2, 2));
    CHECK((X(1) * X(2)).wdeg() == WeightVec::of(2, 2, 2, 2));
}

TEST_CASE("weight order basics") {
    CHECK(WeightVec::minus_infinity() < WeightVec::of(0, 0, 0, 0));
    // sums first, lex on ties
    CHECK(WeightVec::of(2, 1, 1, 0) < WeightVec::of(2, 2, 2, 2));
    CHECK(WeightVec::of(1, 2, 0, 1) < WeightVec::of(2, 1, 1, 0));
    CHECK(WeightVec::of(6, 3, 3, 0) > WeightVec::of(1, 2, 0, 1));
}

TEST_CASE("leading_part fixtures") {
    CHECK(Poly::q().leading_part() == Poly::q());
    CHECK((X(1) + X(0).pow(3)).leading_part() == X(0).pow(3));
    Poly fivex1 = Poly::constant(Coeff(5)) * X(0);
    CHECK(fivex1.leading_part() == fivex1);
    CHECK_THROWS(Poly::zero().leading_part());
}

TEST_CASE("ring arithmetic fixtures") {
    CHECK(X(0) * X(3) - X(1) * X(2) == Poly::q());
    CHECK((X(0) * X(3)).wdeg() == WeightVec::of(2, 2, 2, 2));
    Rng rng(7);
    Poly p = testgen::random_poly(rng);
    CHECK((p * Poly::zero()).is_zero());
}

TEST_CASE("degree is a grading: multiplicativity of wdeg and hom") {
    Rng rng(20240801);
    for (int it = 0; it < 300; ++it) {
        Poly p = testgen::random_nonzero_poly(rng);
        Poly r = testgen::random_nonzero_poly(rng);
        Poly pr = p * r;
        REQUIRE(!pr.is_zero()); // integral domain
        CHECK(pr.wdeg() == p.wdeg() + r.wdeg());
        CHECK(pr.leading_part() == p.leading_part() * r.leading_part());
    }
}

TEST_CASE("wdeg of a sum") {
    Rng rng(20240802);
    for (int it = 0; it < 300; ++it) {
        Poly p = testgen::random_poly(rng);
        Poly r = testgen::random_poly(rng);
        WeightVec m = std::max(p.wdeg(), r.wdeg());
        CHECK((p + r).wdeg() <= m);
        if (p.wdeg() != r.wdeg()) CHECK((p + r).wdeg() == m);
    }
}

TEST_CASE("substitute fixtures") {
    std::array<Poly, 4> id = {X(0), X(1), X(2), X(3)};
    CHECK(X(0).substitute(id) == X(0));

    // elementary maps preserve q, for sample P in C[x1,x3]
    Poly P = X(0) * X(2) + X(0).pow(2) - Poly::constant(Coeff(3)) * X(2);
    std::array<Poly, 4> elem = {X(0), X(1) + X(0) * P, X(2), X(3) + X(2) * P};
    CHECK(Poly::q().substitute(elem) == Poly::q());

    // Anick quadruple
    std::array<Poly, 4> anick = {X(0), X(1) + X(0) * Poly::q(), X(2), X(3) + X(2) * Poly::q()};
    CHECK(Poly::q().substitute(anick) == Poly::q());
}

TEST_CASE("divrem fixtures") {
    auto dr = Poly::q_minus_1().divrem(Poly::q_minus_1());
    CHECK(dr.quo == Poly::constant(Coeff::one()));
    CHECK(dr.rem.is_zero());

    auto dr2 = (X(0) * X(3)).divrem(Poly::q_minus_1());
    CHECK(dr2.rem == X(1) * X(2) + Poly::constant(Coeff::one()));

    auto dr3 = X(0).divrem(Poly::q_minus_1());
    CHECK(dr3.quo.is_zero());
    CHECK(dr3.rem == X(0));

    CHECK_THROWS(X(0).divrem(Poly::zero()));
}

TEST_CASE("divrem is exact and remainder-canonical") {
    Rng rng(20240803);
    for (int it = 0; it < 200; ++it) {
        Poly p = testgen::random_poly(rng, 5, 4);
        Poly d = testgen::random_nonzero_poly(rng, 3, 2);
        auto dr = p.divrem(d);
        CHECK(dr.quo * d + dr.rem == p);
        const Exponent4& lead = d.division_leading_term().m;
        for (const auto& t : dr.rem.terms()) CHECK(!lead.divides(t.m));
        // canonicity under re-association of the input construction
        Poly h = testgen::random_poly(rng, 3, 2);
        Poly p2 = (p + h) - h;
        auto dr2 = p2.divrem(d);
        CHECK(dr2.rem == dr.rem);
    }
}

TEST_CASE("quotient_normal_form fixtures") {
    CHECK(quotient_normal_form(Poly::q()) == Poly::constant(Coeff::one()));
    CHECK(quotient_normal_form(X(0) * Poly::q()) == X(0));
    CHECK(quotient_normal_form(X(0) * X(3)) == X(0) * X(3));
}

TEST_CASE("quotient_normal_form properties") {
    Rng rng(20240804);
    for (int it = 0; it < 150; ++it) {
        Poly p = testgen::random_poly(rng, 4, 3);
        // throw in some q-multiples so the loop actually fires
        if (it % 3 == 0) p = p * Poly::q() + testgen::random_poly(rng, 2, 2);
        Poly r = quotient_normal_form(p);
        CHECK(quotient_normal_form(r) == r);
        CHECK((p - r).divrem(Poly::q_minus_1()).rem.is_zero());
        CHECK(r.wdeg() <= p.wdeg());
        if (!r.is_zero()) CHECK(!r.leading_part().divrem(Poly::q()).rem.is_zero());
    }
}

TEST_CASE("eq_mod_quadric fixtures") {
    CHECK(eq_mod_quadric(Poly::q(), Poly::constant(Coeff::one())));
    CHECK(eq_mod_quadric(X(0) * X(3), X(1) * X(2) + Poly::constant(Coeff::one())));
    CHECK(!eq_mod_quadric(X(0), X(1)));
}

TEST_CASE("jacobian fixtures") {
    CHECK(jacobian(X(0), X(1), X(2), X(3)) == Poly::constant(Coeff::one()));
    CHECK(jacobian(X(1), X(0), X(2), X(3)) == Poly::constant(Coeff(-1)));
    Poly P = X(0).pow(2) - X(2);
    CHECK(jacobian(X(0), X(1) + X(0) * P, X(2), X(3) + X(2) * P) ==
          Poly::constant(Coeff::one()));
}

TEST_CASE("pseudo-jacobian fixtures") {
    CHECK(pseudo_jacobian(X(1), X(2), X(3)) == X(3));
    Rng rng(11);
    Poly f = testgen::random_nonzero_poly(rng);
    Poly g = testgen::random_poly(rng);
    CHECK(pseudo_jacobian(f, f, g).is_zero());
    // q, f1, q*f1 are algebraically dependent
    Poly f1 = X(0) + X(1) * X(2);
    for (int k = 0; k < 4; ++k) CHECK(jj_k(k, f1, Poly::q() * f1).is_zero());
}

TEST_CASE("pseudo-jacobian degree bound (Lemma A)") {
    Rng rng(20240805);
    WeightVec two = WeightVec::of(2, 2, 2, 2);
    for (int it = 0; it < 200; ++it) {
        Poly f1 = testgen::random_nonzero_poly(rng);
        Poly f2 = testgen::random_nonzero_poly(rng);
        Poly f3 = testgen::random_nonzero_poly(rng);
        Poly jj = pseudo_jacobian(f1, f2, f3);
        CHECK(jj.wdeg() <= f1.wdeg() + f2.wdeg() + f3.wdeg() - two);
    }
}

TEST_CASE("pretty printer") {
    Poly p = X(0).pow(2) * X(2) - Poly::constant(Coeff(3, 2)) * X(3);
    CHECK(p.str() == "x1^2*x3 - 3/2*x4");
    CHECK(Poly::zero().str() == "0");
}

#include <doctest.h>

#include "tamesl2/grouplab.hpp"
#include "tamesl2/io.hpp"
#include "support/gen.hpp"

using namespace tamesl2;
using testgen::Rng;

namespace {
Poly X(int i) { return Poly::variable(i); }

TameAuto e24_with(const Poly& formalP) {
    return ElementaryAuto{ElementaryFamily::E24, formalP}.to_auto();
}
} // namespace

TEST_CASE("finite subgroup closure") {
    FiniteSubgroup trivial = FiniteSubgroup::generate({});
    CHECK(trivial.elements.size() == 1);

    TameAuto sigma = TameAuto::from_mat(mat_sigma());
    FiniteSubgroup z2 = FiniteSubgroup::generate({sigma});
    CHECK(z2.elements.size() == 2);
}

TEST_CASE("mean_linearize fixtures") {
    LinearizeReport r0 = mean_linearize(FiniteSubgroup::generate({}));
    CHECK(r0.verified);
    CHECK(r0.conjugator == TameAuto::identity());

    // conjugate of an order-2 linear element by an E24 shear
    TameAuto m0 = e24_with(X(0)); // P = x1
    TameAuto m0i = e24_with(-X(0));
    TameAuto sigma = TameAuto::from_mat(mat_sigma());
    TameAuto twisted = compose(compose(m0, sigma), m0i);
    LinearizeReport r1 = mean_linearize(FiniteSubgroup::generate({twisted}));
    CHECK(r1.verified);
    CHECK(r1.linear_images.size() == 2);

    // an order-3 element already linear: the mean of identities is id
    Mat4 order3 = Mat4::zero();
    order3.m[0][2] = Coeff(-1);               // f1 = -x3
    order3.m[2][0] = Coeff(1);                // f3 = x1 - x3
    order3.m[2][2] = Coeff(-1);
    order3.m[1][3] = Coeff(-1);               // f2 = -x4 (delta = 1)
    order3.m[3][1] = Coeff(1);                // f4 = x2 - x4
    order3.m[3][3] = Coeff(-1);
    REQUIRE(is_orthogonal(order3) != OrthVerdict::No);
    FiniteSubgroup g3 = FiniteSubgroup::generate({TameAuto::from_mat(order3)});
    CHECK(g3.elements.size() == 3);
    LinearizeReport r2 = mean_linearize(g3);
    CHECK(r2.verified);
    CHECK(r2.conjugator == TameAuto::identity());

    // an element moving [x1,x3] must be rejected
    TameAuto bad = ElementaryAuto{ElementaryFamily::E13, X(0)}.to_auto();
    CHECK_THROWS(mean_linearize(FiniteSubgroup{{bad}}));
}

TEST_CASE("mean_linearize on randomized conjugates") {
    Rng rng(2024);
    int done = 0;
    while (done < 8) {
        Poly p = testgen::random_poly2(rng, 2, 2, true);
        TameAuto m0 = e24_with(p), m0i = e24_with(-p);
        TameAuto twisted = compose(compose(m0, TameAuto::from_mat(mat_sigma())), m0i);
        LinearizeReport r = mean_linearize(FiniteSubgroup::generate({twisted}));
        CHECK(r.verified);
        ++done;
    }
}

TEST_CASE("diagonalize_triangular fixtures") {
    TriMap id{{X(0), X(1), X(2)}};
    DiagonalizeReport r0 = diagonalize_triangular(TriangularGroup::generate({}));
    CHECK(r0.verified);
    CHECK(r0.conjugator == id);

    TriMap invol{{-X(0), X(1), X(2)}};
    DiagonalizeReport r1 = diagonalize_triangular(TriangularGroup::generate({invol}));
    CHECK(r1.verified);

    // conjugate of diag(-1,1,1) by a unipotent translation map
    TriMap u{{X(0) + X(1) * X(1), X(1) + Poly::constant(Coeff(2)), X(2)}};
    TriMap uinv{{X(0) - (X(1) - Poly::constant(Coeff(2))) * (X(1) - Poly::constant(Coeff(2))),
                 X(1) - Poly::constant(Coeff(2)), X(2)}};
    REQUIRE(compose_tri(u, uinv) == id);
    TriMap d{{-X(0), X(1), X(2)}};
    TriMap twisted = compose_tri(compose_tri(u, d), uinv);
    REQUIRE(is_triangular(twisted));
    DiagonalizeReport r2 = diagonalize_triangular(TriangularGroup::generate({twisted}));
    CHECK(r2.verified);
    for (const TriMap& img : r2.diagonal_images)
        for (int i = 0; i < 3; ++i) CHECK(img.c[i].size() == 1);

    TriMap bad{{X(0) + X(1), X(1), X(2) + X(0)}};
    CHECK_THROWS(diagonalize_triangular(TriangularGroup{{bad}}));
}

TEST_CASE("resonance fixtures") {
    auto r1 = resonant(Coeff(2), Coeff(1, 2));
    REQUIRE(r1.has_value());
    CHECK(r1->p == 1);
    CHECK(r1->q == 1);

    CHECK(!resonant(Coeff(2), Coeff(3)).has_value());

    auto r2 = resonant(Coeff(4), Coeff(1, 2));
    REQUIRE(r2.has_value());
    CHECK(r2->p == 1);
    CHECK(r2->q == 2);

    auto r3 = resonant(Coeff::i(), Coeff::i());
    CHECK(r3.has_value());

    auto r4 = resonant(Coeff(2, 3), Coeff(9, 4));
    REQUIRE(r4.has_value()); // (2/3)^2 * (9/4) = 1
    CHECK(Coeff(2, 3).pow(r4->p) * Coeff(9, 4).pow(r4->q) == Coeff::one());
}

TEST_CASE("resonance is invariant under inverting both scalars") {
    std::vector<std::pair<Coeff, Coeff>> samples = {
        {Coeff(2), Coeff(1, 2)}, {Coeff(2), Coeff(3)},    {Coeff(4), Coeff(1, 2)},
        {Coeff(6, 5), Coeff(5, 6)}, {Coeff(2), Coeff(-1, 2)},
        {Coeff(mpq_class(1), mpq_class(1)), Coeff(mpq_class(1), mpq_class(-1))}};
    for (auto& [a, b] : samples)
        CHECK(resonant(a, b).has_value() == resonant(a.inverse(), b.inverse()).has_value());
}

TEST_CASE("resonant_poly and the conjugation identity") {
    Poly xy = Poly::monomial(Exponent4{{1, 1, 0, 0}}, Coeff::one());
    CHECK(resonant_poly(xy, Coeff(2), Coeff(1, 2)));
    CHECK(!resonant_poly(xy, Coeff(2), Coeff(3)));
    CHECK(!resonant_poly(Poly::constant(Coeff(5)), Coeff(2), Coeff(1, 2)));

    // R resonant in a,b and nonconstant => a b R(a x, b y) = R(x, y)
    std::vector<std::tuple<Poly, Coeff, Coeff>> cases = {
        {xy, Coeff(2), Coeff(1, 2)},
        {xy * xy + xy, Coeff(-1), Coeff(-1)},
        {Poly::monomial(Exponent4{{1, 3, 0, 0}}, Coeff(2)), Coeff::i(), Coeff::i()}};
    for (auto& [r, a, b] : cases) {
        if (!resonant_poly(r, a, b)) continue;
        Poly scaled = r.substitute({X(0).scale(a), X(1).scale(b), Poly::zero(), Poly::zero()});
        CHECK(scaled.scale(a * b) == r);
    }
}

TEST_CASE("gen_hyperelliptic resonant form") {
    HyperellipticReport rep = gen_hyperelliptic(Coeff(2), Coeff(1, 2));
    CHECK(rep.kind == HyperellipticForm::Resonant);
    CHECK(rep.commutation_verified);
    TameAuto w = evaluate_word(rep.witness);
    CHECK(compose(rep.f, w) == compose(w, rep.f));

    // mixed-sign witness goes through the tau conjugation
    HyperellipticReport rep2 = gen_hyperelliptic(Coeff(2), Coeff(2));
    CHECK(rep2.commutation_verified);

    CHECK_THROWS(gen_hyperelliptic(Coeff(2), Coeff(3)));
}

TEST_CASE("gen_hyperelliptic elementary form") {
    Poly xy = Poly::monomial(Exponent4{{1, 1, 0, 0}}, Coeff::one());
    HyperellipticReport rep =
        gen_hyperelliptic(Coeff::i(), Coeff::i(), HyperellipticForm::ElementaryRoots, xy);
    CHECK(rep.kind == HyperellipticForm::ElementaryRoots);
    CHECK(rep.commutation_verified);
    CHECK(rep.f.quadric_holds());
    CHECK(evaluate_word(rep.witness).quadric_holds());

    CHECK_THROWS(
        gen_hyperelliptic(Coeff(2), Coeff(2), HyperellipticForm::ElementaryRoots, xy));
}

TEST_CASE("gen_parabolic") {
    ParabolicReport r0 = gen_parabolic(0);
    CHECK(r0.phi.factors.empty());
    CHECK(!r0.generators.empty());
    for (bool ok : r0.commutation_checks) CHECK(ok);

    ParabolicReport r1 = gen_parabolic(1);
    CHECK(evaluate_word(r1.phi).quadric_holds());
    for (bool ok : r1.commutation_checks) CHECK(ok);
    for (const TameWord& g : r1.generators) CHECK(evaluate_word(g).quadric_holds());

    ParabolicReport r2 = gen_parabolic(2);
    for (bool ok : r2.commutation_checks) CHECK(ok);
}

TEST_CASE("parabolic level-1 drift of [id] is 4 skeleton steps") {
    ParabolicReport rep = gen_parabolic(1);
    SubComplex s;
    s.insert_big_square(TameAuto::identity(), 1);
    const auto& letters = rep.phi.factors;
    for (size_t i = 0; i < letters.size(); ++i) {
        TameAuto acc = TameAuto::identity();
        for (size_t j = i + 1; j-- > 0;) {
            if (std::holds_alternative<ElementaryAuto>(letters[j]))
                acc = compose_elementary(std::get<ElementaryAuto>(letters[j]), acc);
            else
                acc = compose_linear(std::get<Mat4>(letters[j]), acc);
            s.insert_big_square(acc, 0);
        }
    }
    auto vid = s.find_vertex(VertexT3{TameAuto::identity()});
    auto vphi = s.find_vertex(VertexT3{evaluate_word(rep.phi)});
    REQUIRE(vid.has_value());
    REQUIRE(vphi.has_value());
    CHECK(s.edge_distance(*vid, *vphi) == 4);
}

TEST_CASE("stab_x1_normal_form fixtures") {
    // an H2 element: single factor
    TameAuto h = ElementaryAuto{ElementaryFamily::E24,
                                Poly::monomial(Exponent4{{1, 2, 0, 0}}, Coeff(1))}
                     .to_auto(); // f2 = x2 + x1*(x1 x3^2)
    StabNormalForm nf1 = stab_x1_normal_form(h);
    CHECK(nf1.factors.size() == 1);
    CHECK(nf1.factors[0].in_h2);

    // tau alone: single K1 factor
    StabNormalForm nf2 = stab_x1_normal_form(TameAuto::from_mat(mat_tau()));
    CHECK(nf2.factors.size() == 1);

    // tau o h o tau: three alternating factors
    TameAuto tau = TameAuto::from_mat(mat_tau());
    TameAuto f = compose(compose(tau, h), tau);
    StabNormalForm nf3 = stab_x1_normal_form(f);
    CHECK(nf3.factors.size() == 3);
    CHECK(nf3.alternating);

    // longer alternations round-trip
    TameAuto h2 = ElementaryAuto{ElementaryFamily::E24,
                                 Poly::monomial(Exponent4{{0, 3, 0, 0}}, Coeff(-2))}
                      .to_auto();
    TameAuto big = compose(compose(h, tau), compose(h2, tau));
    StabNormalForm nf4 = stab_x1_normal_form(big);
    CHECK(nf4.alternating);
    CHECK(nf4.factors.size() >= 3);

    CHECK_THROWS(stab_x1_normal_form(catalog::example_g())); // f1 != a x1
}

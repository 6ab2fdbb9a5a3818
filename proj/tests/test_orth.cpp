#include <doctest.h>

#include "tamesl2/orth.hpp"
#include "support/gen.hpp"

using namespace tamesl2;
using testgen::Rng;

namespace {
Poly X(int i) { return Poly::variable(i); }

Mat4 random_so4(Rng& rng) {
    // random SL2 matrices from products of elementary shears
    auto rand_sl2 = [&](int len) {
        std::array<Coeff, 4> m{Coeff(1), Coeff(0), Coeff(0), Coeff(1)};
        std::uniform_int_distribution<int> t(-3, 3);
        std::uniform_int_distribution<int> side(0, 1);
        for (int i = 0; i < len; ++i) {
            long v = t(rng);
            std::array<Coeff, 4> s = side(rng) ? std::array<Coeff, 4>{Coeff(1), Coeff(v), Coeff(0), Coeff(1)}
                                               : std::array<Coeff, 4>{Coeff(1), Coeff(0), Coeff(v), Coeff(1)};
            std::array<Coeff, 4> r{m[0] * s[0] + m[1] * s[2], m[0] * s[1] + m[1] * s[3],
                                   m[2] * s[0] + m[3] * s[2], m[2] * s[1] + m[3] * s[3]};
            m = r;
        }
        return m;
    };
    return so4_from_sl2_pair(rand_sl2(3), rand_sl2(3));
}

Mat4 random_o4(Rng& rng) {
    Mat4 m = random_so4(rng);
    std::uniform_int_distribution<int> flip(0, 1);
    if (flip(rng)) m = mat_tau() * m;
    return m;
}
} // namespace

TEST_CASE("q_pairing fixtures") {
    CHECK(q_pairing(X(0), X(3)) == Coeff(1, 2));
    CHECK(q_pairing(X(0), X(0)) == Coeff(0));
    CHECK(q_pairing(X(1), X(2)) == Coeff(-1, 2));
    CHECK_THROWS(q_pairing(X(0) * X(0), X(1)));
}

TEST_CASE("is_orthogonal fixtures") {
    CHECK(is_orthogonal(Mat4::identity()) == OrthVerdict::SpecialSO4);
    CHECK(is_orthogonal(mat_tau()) == OrthVerdict::GeneralO4);
    Mat4 d = Mat4::identity();
    d.m[0][0] = Coeff(2);
    CHECK(is_orthogonal(d) == OrthVerdict::No);
    CHECK(is_orthogonal(mat_sigma()) != OrthVerdict::No);
    for (const Mat4& u : klein_group()) CHECK(is_orthogonal(u) != OrthVerdict::No);
}

TEST_CASE("pairing route and matrix-identity route agree") {
    Rng rng(424242);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 300; ++it) {
        Mat4 m;
        if (it % 2 == 0) {
            m = random_o4(rng);
        } else {
            for (auto& row : m.m)
                for (auto& v : row) v = Coeff(c(rng));
        }
        CHECK(is_orthogonal(m) == orthogonal_by_matrix_identity(m));
    }
}

TEST_CASE("complete_pair fixtures") {
    IsotropicPlane w34(X(2), X(3));
    auto [f3, f4] = complete_pair(X(0), X(1), w34);
    CHECK(f3 == X(2));
    CHECK(f4 == X(3));

    for (long av : {0L, 1L, -3L}) {
        Coeff a(av);
        IsotropicPlane wp(X(2) + X(0).scale(a), X(3) + X(1).scale(a));
        auto [g3, g4] = complete_pair(X(0), X(1), wp);
        CHECK(g3 == X(2) + X(0).scale(a));
        CHECK(g4 == X(3) + X(1).scale(a));
        Mat4 m = Mat4::from_rows({X(0), X(1), g3, g4});
        CHECK(is_orthogonal(m) != OrthVerdict::No);
    }

    auto [h3, h4] = complete_pair(X(1), X(0), w34);
    CHECK(h3 == -X(3));
    CHECK(h4 == -X(2));
    // quadric identity f1 f4 - f2 f3 = q
    CHECK(X(1) * h4 - X(0) * h3 == Poly::q());

    // non-transverse W' must be rejected
    CHECK_THROWS(complete_pair(X(0), X(1), IsotropicPlane(X(0), X(2))));
}

TEST_CASE("extend_isotropic_pair") {
    Mat4 m1 = extend_isotropic_pair(X(0), X(1));
    CHECK(m1.row_form(0) == X(0));
    CHECK(m1.row_form(1) == X(1));
    CHECK(is_orthogonal(m1) != OrthVerdict::No);

    Mat4 m2 = extend_isotropic_pair(X(3), X(2));
    CHECK(is_orthogonal(m2) != OrthVerdict::No);

    Mat4 m3 = extend_isotropic_pair(X(0) + X(1), X(2) + X(3));
    CHECK(is_orthogonal(m3) != OrthVerdict::No);
    CHECK(m3.row_form(0) == X(0) + X(1));

    CHECK_THROWS(extend_isotropic_pair(X(0), X(3))); // not isotropic
    // quadric identity on assembled quadruples
    for (const Mat4* m : {&m1, &m2, &m3})
        CHECK(m->row_form(0) * m->row_form(3) - m->row_form(1) * m->row_form(2) == Poly::q());
}

TEST_CASE("planes_through fixtures") {
    auto [h1, v1] = planes_through(X(0));
    CHECK(h1 == IsotropicPlane(X(0), X(1)));
    CHECK(v1 == IsotropicPlane(X(0), X(2)));

    auto [h4, v4] = planes_through(X(3));
    CHECK(h4 == IsotropicPlane(X(3), X(2)));
    CHECK(v4 == IsotropicPlane(X(3), X(1)));

    auto [hs, vs] = planes_through(X(0) + X(1));
    CHECK(hs.contains(X(0) + X(1)));
    CHECK(vs.contains(X(0) + X(1)));
    CHECK(classify_plane(hs).horizontal);
    CHECK(!classify_plane(vs).horizontal);

    CHECK_THROWS(planes_through(X(0) + X(3))); // <x1+x4, x1+x4> = 1 != 0
}

TEST_CASE("classify_plane fixtures") {
    PlaneClass c1 = classify_plane(IsotropicPlane(X(0), X(1)));
    CHECK(c1.horizontal);
    CHECK(c1.a.is_one());
    CHECK(c1.b.is_zero());

    PlaneClass c2 = classify_plane(IsotropicPlane(X(0), X(2)));
    CHECK(!c2.horizontal);
    CHECK(c2.a.is_one());
    CHECK(c2.b.is_zero());

    PlaneClass c3 = classify_plane(IsotropicPlane(X(2), X(3)));
    CHECK(c3.horizontal);
    CHECK(c3.a.is_zero());
    CHECK(c3.b.is_one());
}

TEST_CASE("plane tag equivariance under O4") {
    Rng rng(77);
    std::vector<IsotropicPlane> planes = {IsotropicPlane(X(0), X(1)), IsotropicPlane(X(0), X(2)),
                                          IsotropicPlane(X(2), X(3)), IsotropicPlane(X(1), X(3)),
                                          IsotropicPlane(X(0) + X(1), X(2) + X(3))};
    for (int it = 0; it < 60; ++it) {
        Mat4 g = random_o4(rng);
        OrthVerdict v = is_orthogonal(g);
        REQUIRE(v != OrthVerdict::No);
        for (const auto& p : planes) {
            bool before = classify_plane(p).horizontal;
            bool after = classify_plane(act_on_plane(g, p)).horizontal;
            if (v == OrthVerdict::SpecialSO4)
                CHECK(before == after);
            else
                CHECK(before != after);
        }
    }
}

TEST_CASE("so4_from_sl2_pair fixtures") {
    std::array<Coeff, 4> I{Coeff(1), Coeff(0), Coeff(0), Coeff(1)};
    std::array<Coeff, 4> negI{Coeff(-1), Coeff(0), Coeff(0), Coeff(-1)};
    CHECK(so4_from_sl2_pair(I, I) == Mat4::identity());
    CHECK(so4_from_sl2_pair(negI, negI) == Mat4::identity());

    Coeff a(2), b(3);
    std::array<Coeff, 4> A{a, Coeff(0), Coeff(0), a.inverse()};
    std::array<Coeff, 4> B{b, Coeff(0), Coeff(0), b.inverse()};
    Mat4 m = so4_from_sl2_pair(A, B);
    CHECK(m.row_form(0) == X(0).scale(a * b));
    CHECK(m.row_form(1) == X(1).scale(a * b.inverse()));
    CHECK(m.row_form(2) == X(2).scale(a.inverse() * b));
    CHECK(m.row_form(3) == X(3).scale((a * b).inverse()));
    CHECK(is_orthogonal(m) == OrthVerdict::SpecialSO4);

    std::array<Coeff, 4> bad{Coeff(2), Coeff(0), Coeff(0), Coeff(1)};
    CHECK_THROWS(so4_from_sl2_pair(bad, I));
}

TEST_CASE("so4 cover lands in SO4") {
    Rng rng(555);
    for (int it = 0; it < 100; ++it) CHECK(is_orthogonal(random_so4(rng)) == OrthVerdict::SpecialSO4);
}

TEST_CASE("normalize_plane_pair three cases") {
    IsotropicPlane w34(X(2), X(3)), w12(X(0), X(1)), w24(X(1), X(3));

    auto [g1, c1] = normalize_plane_pair(w34, w12);
    CHECK(c1 == PlanePairCase::Transverse);
    CHECK(g1 == Mat4::identity());

    auto [g2, c2] = normalize_plane_pair(w12, w12);
    CHECK(c2 == PlanePairCase::Equal);
    CHECK(act_on_plane(g2, w12) == w34);

    auto [g3, c3] = normalize_plane_pair(w34, w24);
    CHECK(c3 == PlanePairCase::Meeting);
    CHECK(g3 == Mat4::identity());

    // a nontrivial pair: verify the posted action targets
    IsotropicPlane wa(X(0) + X(2), X(1) + X(3));
    IsotropicPlane wb(X(0), X(2));
    auto [g4, c4] = normalize_plane_pair(wa, wb);
    CHECK(act_on_plane(g4, wa) == w34);
    IsotropicPlane img = act_on_plane(g4, wb);
    if (c4 == PlanePairCase::Transverse) CHECK(img == w12);
    if (c4 == PlanePairCase::Equal) CHECK(img == w34);
    if (c4 == PlanePairCase::Meeting) CHECK(img == w24);
}

TEST_CASE("Mat4 inverse and compose") {
    Rng rng(99);
    for (int it = 0; it < 50; ++it) {
        Mat4 m = random_o4(rng);
        CHECK(m * m.inverse() == Mat4::identity());
        CHECK(m.inverse() * m == Mat4::identity());
    }
}

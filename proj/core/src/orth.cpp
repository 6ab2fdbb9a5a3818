#include "tamesl2/orth.hpp"

#include "linalg.hpp"

#include <stdexcept>

namespace tamesl2 {

namespace {

using Row = std::array<Coeff, 4>;

Row row_of(const Poly& u) { return u.linear_coeffs(); }

Poly form_of(const Row& r) {
    Poly p;
    for (int v = 0; v < 4; ++v) p = p + Poly::variable(v).scale(r[v]);
    return p;
}

// <u,v> = 1/2(u1 v4 + u4 v1) - 1/2(u2 v3 + u3 v2)
Coeff pairing_rows(const Row& a, const Row& b) {
    Coeff half(1, 2);
    return half * (a[0] * b[3] + a[3] * b[0]) - half * (a[1] * b[2] + a[2] * b[1]);
}

Coeff expected_pairing(int i, int j) {
    if ((i == 0 && j == 3) || (i == 3 && j == 0)) return Coeff(1, 2);
    if ((i == 1 && j == 2) || (i == 2 && j == 1)) return Coeff(-1, 2);
    return Coeff::zero();
}

bool row_zero(const Row& r) {
    return r[0].is_zero() && r[1].is_zero() && r[2].is_zero() && r[3].is_zero();
}

} // namespace

Mat4 Mat4::zero() {
    Mat4 z;
    for (auto& row : z.m) row.fill(Coeff::zero());
    return z;
}

Mat4 Mat4::identity() {
    Mat4 id = zero();
    for (int i = 0; i < 4; ++i) id.m[i][i] = Coeff::one();
    return id;
}

Mat4 Mat4::from_rows(const std::array<Poly, 4>& rows) {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r.m[i] = rows[i].linear_coeffs();
    return r;
}

Poly Mat4::row_form(int i) const { return form_of(m[i]); }

std::array<Poly, 4> Mat4::row_forms() const {
    return {row_form(0), row_form(1), row_form(2), row_form(3)};
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r = zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (m[i][k].is_zero()) continue;
            for (int j = 0; j < 4; ++j) r.m[i][j] += m[i][k] * o.m[k][j];
        }
    return r;
}

Mat4 Mat4::transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
    return r;
}

Coeff Mat4::det() const {
    auto det2 = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    Coeff d = Coeff::zero();
    int sign = 1;
    for (int j = 0; j < 4; ++j) {
        if (!m[0][j].is_zero()) {
            int cs[3], k = 0;
            for (int c = 0; c < 4; ++c)
                if (c != j) cs[k++] = c;
            Coeff minor = m[1][cs[0]] * det2(2, 3, cs[1], cs[2]) -
                          m[1][cs[1]] * det2(2, 3, cs[0], cs[2]) +
                          m[1][cs[2]] * det2(2, 3, cs[0], cs[1]);
            Coeff cof = m[0][j] * minor;
            d = (sign > 0) ? d + cof : d - cof;
        }
        sign = -sign;
    }
    return d;
}

Mat4 Mat4::inverse() const {
    linalg::Matrix aug(4, std::vector<Coeff>(8, Coeff::zero()));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = m[i][j];
        aug[i][4 + i] = Coeff::one();
    }
    std::vector<int> piv = linalg::rref(aug);
    if (piv.size() != 4 || piv[3] != 3) throw std::domain_error("Mat4: singular matrix");
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = aug[i][4 + j];
    return r;
}

Poly Mat4::apply_to_form(const Poly& u) const {
    Row c = u.is_zero() ? Row{Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero()}
                        : u.linear_coeffs();
    Row out{Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero()};
    for (int i = 0; i < 4; ++i) {
        if (c[i].is_zero()) continue;
        for (int j = 0; j < 4; ++j) out[j] += c[i] * m[i][j];
    }
    return form_of(out);
}

Mat4 quadric_gram_matrix() {
    Mat4 a = Mat4::zero();
    a.m[0][3] = Coeff(1, 2);
    a.m[3][0] = Coeff(1, 2);
    a.m[1][2] = Coeff(-1, 2);
    a.m[2][1] = Coeff(-1, 2);
    return a;
}

Coeff q_pairing(const Poly& u, const Poly& v) {
    if (!u.is_linear_form() || !v.is_linear_form())
        throw std::domain_error("q_pairing: inputs must be nonzero linear forms");
    return pairing_rows(row_of(u), row_of(v));
}

OrthVerdict is_orthogonal(const Mat4& M) {
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (pairing_rows(M.m[i], M.m[j]) != expected_pairing(i, j)) return OrthVerdict::No;
    Coeff d = M.det();
    if (d.is_one()) return OrthVerdict::SpecialSO4;
    if (d == Coeff(-1)) return OrthVerdict::GeneralO4;
    return OrthVerdict::No;
}

OrthVerdict orthogonal_by_matrix_identity(const Mat4& M) {
    Mat4 a = quadric_gram_matrix();
    if (!(M.transpose() * a * M == a)) return OrthVerdict::No;
    Coeff d = M.det();
    if (d.is_one()) return OrthVerdict::SpecialSO4;
    if (d == Coeff(-1)) return OrthVerdict::GeneralO4;
    return OrthVerdict::No;
}

IsotropicPlane::IsotropicPlane(const Poly& u, const Poly& v) {
    linalg::Matrix rows = {std::vector<Coeff>(4), std::vector<Coeff>(4)};
    Row ru = row_of(u), rv = row_of(v);
    for (int j = 0; j < 4; ++j) {
        rows[0][j] = ru[j];
        rows[1][j] = rv[j];
    }
    std::vector<int> piv = linalg::rref(rows);
    if (piv.size() != 2) throw std::domain_error("IsotropicPlane: forms are dependent");
    Row b0, b1;
    for (int j = 0; j < 4; ++j) {
        b0[j] = rows[0][j];
        b1[j] = rows[1][j];
    }
    if (!pairing_rows(b0, b0).is_zero() || !pairing_rows(b0, b1).is_zero() ||
        !pairing_rows(b1, b1).is_zero())
        throw std::domain_error("IsotropicPlane: plane is not totally isotropic");
    b_[0] = form_of(b0);
    b_[1] = form_of(b1);
}

bool IsotropicPlane::contains(const Poly& u) const {
    if (u.is_zero()) return true;
    linalg::Matrix rows = {std::vector<Coeff>(4), std::vector<Coeff>(4), std::vector<Coeff>(4)};
    Row r0 = row_of(b_[0]), r1 = row_of(b_[1]), ru = row_of(u);
    for (int j = 0; j < 4; ++j) {
        rows[0][j] = r0[j];
        rows[1][j] = r1[j];
        rows[2][j] = ru[j];
    }
    return linalg::rank(rows) == 2;
}

std::pair<Poly, Poly> complete_pair(const Poly& f1, const Poly& f2,
                                    const IsotropicPlane& wprime) {
    IsotropicPlane w(f1, f2); // validates independence + isotropy of span(f1,f2)
    (void)w;
    Row r1 = row_of(f1), r2 = row_of(f2);
    Row g3 = row_of(wprime.basis0()), g4 = row_of(wprime.basis1());
    // f3 = alpha g3 + beta g4, f4 = gamma g3 + delta g4 with
    // <f1,f3> = 0, <f2,f3> = -1/2, <f1,f4> = 1/2, <f2,f4> = 0.
    linalg::Matrix A = {{pairing_rows(r1, g3), pairing_rows(r1, g4)},
                        {pairing_rows(r2, g3), pairing_rows(r2, g4)}};
    auto s3 = linalg::solve(A, {Coeff::zero(), Coeff(-1, 2)});
    auto s4 = linalg::solve(A, {Coeff(1, 2), Coeff::zero()});
    Coeff det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det.is_zero() || !s3 || !s4)
        throw std::domain_error("complete_pair: planes are not transverse");
    Poly f3 = wprime.basis0().scale((*s3)[0]) + wprime.basis1().scale((*s3)[1]);
    Poly f4 = wprime.basis0().scale((*s4)[0]) + wprime.basis1().scale((*s4)[1]);
    return {f3, f4};
}

namespace {

IsotropicPlane family_plane(bool horizontal, const Coeff& a, const Coeff& b) {
    Poly u, v;
    if (horizontal) {
        u = Poly::variable(0).scale(a) + Poly::variable(2).scale(b);
        v = Poly::variable(1).scale(a) + Poly::variable(3).scale(b);
    } else {
        u = Poly::variable(0).scale(a) + Poly::variable(1).scale(b);
        v = Poly::variable(2).scale(a) + Poly::variable(3).scale(b);
    }
    return IsotropicPlane(u, v);
}

} // namespace

PlaneClass classify_plane(const IsotropicPlane& p) {
    Row b0 = row_of(p.basis0()), b1 = row_of(p.basis1());
    auto match = [&](bool horizontal) -> std::optional<PlaneClass> {
        // try parameters (1:c) and (0:1) of the family and compare planes
        // horizontal: pivots {0,1} with c = b0[2]; {2,3} for (0:1)
        // vertical:   pivots {0,2} with c = b0[1]; {1,3} for (0:1)
        int alt0 = horizontal ? 2 : 1;
        if (b0[0].is_one()) {
            Coeff c = b0[alt0];
            try {
                IsotropicPlane cand = family_plane(horizontal, Coeff::one(), c);
                if (cand == p) return PlaneClass{horizontal, Coeff::one(), c};
            } catch (const std::domain_error&) {
            }
        }
        try {
            IsotropicPlane cand = family_plane(horizontal, Coeff::zero(), Coeff::one());
            if (cand == p) return PlaneClass{horizontal, Coeff::zero(), Coeff::one()};
        } catch (const std::domain_error&) {
        }
        (void)b1;
        return std::nullopt;
    };
    if (auto h = match(true)) return *h;
    if (auto v = match(false)) return *v;
    throw std::domain_error("classify_plane: plane lies in no ruling (not totally isotropic?)");
}

std::pair<IsotropicPlane, IsotropicPlane> planes_through(const Poly& f1) {
    if (!f1.is_linear_form()) throw std::domain_error("planes_through: need a nonzero linear form");
    Row a = row_of(f1);
    if (!pairing_rows(a, a).is_zero())
        throw std::domain_error("planes_through: vector is not isotropic");
    // Segre coordinates: (a1,a2,a3,a4) = (alpha*gamma, beta*gamma, alpha*delta, beta*delta)
    Coeff alpha, beta, gamma, delta;
    if (!a[0].is_zero() || !a[1].is_zero()) {
        alpha = a[0];
        beta = a[1];
    } else {
        alpha = a[2];
        beta = a[3];
    }
    if (!a[0].is_zero() || !a[2].is_zero()) {
        gamma = a[0];
        delta = a[2];
    } else {
        gamma = a[1];
        delta = a[3];
    }
    IsotropicPlane horizontal = family_plane(true, gamma, delta);
    IsotropicPlane vertical = family_plane(false, alpha, beta);
    if (!horizontal.contains(f1) || !vertical.contains(f1))
        throw std::domain_error("planes_through: internal consistency failure");
    return {horizontal, vertical};
}

Mat4 extend_isotropic_pair(const Poly& f1, const Poly& f2) {
    IsotropicPlane w(f1, f2);
    PlaneClass cls = classify_plane(w);
    // deterministic scan for a transverse complement in the same ruling
    const std::pair<Coeff, Coeff> params[3] = {{Coeff::one(), Coeff::zero()},
                                               {Coeff::zero(), Coeff::one()},
                                               {Coeff::one(), Coeff::one()}};
    for (const auto& [a, b] : params) {
        if (a == cls.a && b == cls.b) continue;
        IsotropicPlane cand = family_plane(cls.horizontal, a, b);
        if (cand == w) continue;
        auto [f3, f4] = complete_pair(f1, f2, cand);
        Mat4 M = Mat4::from_rows({f1, f2, f3, f4});
        if (is_orthogonal(M) == OrthVerdict::No)
            throw std::domain_error("extend_isotropic_pair: completion failed orthogonality");
        return M;
    }
    throw std::domain_error("extend_isotropic_pair: no transverse complement found");
}

namespace {

// rows 3,4 fixed inside a plane; find rows 1,2 in the complement plane
std::pair<Poly, Poly> complete_top_rows(const Poly& f3, const Poly& f4,
                                        const IsotropicPlane& complement) {
    Row r3 = row_of(f3), r4 = row_of(f4);
    Row g1 = row_of(complement.basis0()), g2 = row_of(complement.basis1());
    linalg::Matrix A = {{pairing_rows(g1, r3), pairing_rows(g2, r3)},
                        {pairing_rows(g1, r4), pairing_rows(g2, r4)}};
    auto s1 = linalg::solve(A, {Coeff::zero(), Coeff(1, 2)});
    auto s2 = linalg::solve(A, {Coeff(-1, 2), Coeff::zero()});
    Coeff det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det.is_zero() || !s1 || !s2)
        throw std::domain_error("normalize_plane_pair: complement not transverse");
    Poly f1 = complement.basis0().scale((*s1)[0]) + complement.basis1().scale((*s1)[1]);
    Poly f2 = complement.basis0().scale((*s2)[0]) + complement.basis1().scale((*s2)[1]);
    return {f1, f2};
}

} // namespace

std::pair<Mat4, PlanePairCase> normalize_plane_pair(const IsotropicPlane& w,
                                                    const IsotropicPlane& wprime) {
    // dim(W + W') via the stacked coefficient rows
    linalg::Matrix stack;
    for (const Poly* f : {&w.basis0(), &w.basis1(), &wprime.basis0(), &wprime.basis1()}) {
        Row r = row_of(*f);
        stack.push_back({r[0], r[1], r[2], r[3]});
    }
    size_t rk = linalg::rank(stack);
    PlanePairCase pcase = rk == 2   ? PlanePairCase::Equal
                          : rk == 4 ? PlanePairCase::Transverse
                                    : PlanePairCase::Meeting;

    Poly f1, f2, f3, f4;
    if (pcase == PlanePairCase::Equal || pcase == PlanePairCase::Transverse) {
        f3 = w.basis0();
        f4 = w.basis1();
        IsotropicPlane complement = wprime;
        if (pcase == PlanePairCase::Equal) {
            PlaneClass cls = classify_plane(w);
            const std::pair<Coeff, Coeff> params[3] = {{Coeff::one(), Coeff::zero()},
                                                       {Coeff::zero(), Coeff::one()},
                                                       {Coeff::one(), Coeff::one()}};
            bool found = false;
            for (const auto& [a, b] : params) {
                if (a == cls.a && b == cls.b) continue;
                complement = family_plane(cls.horizontal, a, b);
                if (!(complement == w)) {
                    found = true;
                    break;
                }
            }
            if (!found) throw std::domain_error("normalize_plane_pair: no complement");
        }
        std::tie(f1, f2) = complete_top_rows(f3, f4, complement);
    } else {
        // one-dimensional intersection: f4 spans it
        linalg::Matrix wrows = {std::vector<Coeff>(4), std::vector<Coeff>(4)};
        // intersection: solve lambda*b0 + mu*b1 in W'
        Row b0 = row_of(w.basis0()), b1 = row_of(w.basis1());
        Row c0 = row_of(wprime.basis0()), c1 = row_of(wprime.basis1());
        // u = lambda b0 + mu b1 = -nu c0 - rho c1 -> 4 equations, 4 unknowns
        linalg::Matrix A(4, std::vector<Coeff>(4));
        for (int j = 0; j < 4; ++j) {
            A[j][0] = b0[j];
            A[j][1] = b1[j];
            A[j][2] = c0[j];
            A[j][3] = c1[j];
        }
        auto null = linalg::nullspace(A);
        if (null.size() != 1)
            throw std::domain_error("normalize_plane_pair: unexpected intersection");
        const auto& n = null[0];
        Row u{Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero()};
        for (int j = 0; j < 4; ++j) u[j] = n[0] * b0[j] + n[1] * b1[j];
        if (row_zero(u)) throw std::domain_error("normalize_plane_pair: zero intersection vector");
        for (int j = 0; j < 4; ++j) {
            if (u[j].is_zero()) continue;
            Coeff inv = u[j].inverse();
            for (int k = 0; k < 4; ++k) u[k] *= inv;
            break;
        }
        f4 = form_of(u);
        // f3: element of W independent of u
        f3 = w.contains(f4) && !(w.basis0() == f4) ? w.basis0() : w.basis1();
        {
            linalg::Matrix chk = {{u[0], u[1], u[2], u[3]}, std::vector<Coeff>(4)};
            Row r3 = row_of(w.basis0());
            for (int j = 0; j < 4; ++j) chk[1][j] = r3[j];
            f3 = (linalg::rank(chk) == 2) ? w.basis0() : w.basis1();
        }
        // f2: element of W' independent of u, scaled so <f2,f3> = -1/2
        Poly f2raw;
        {
            linalg::Matrix chk = {{u[0], u[1], u[2], u[3]}, std::vector<Coeff>(4)};
            Row rc = row_of(wprime.basis0());
            for (int j = 0; j < 4; ++j) chk[1][j] = rc[j];
            f2raw = (linalg::rank(chk) == 2) ? wprime.basis0() : wprime.basis1();
        }
        Coeff pr = pairing_rows(row_of(f2raw), row_of(f3));
        if (pr.is_zero()) throw std::domain_error("normalize_plane_pair: degenerate pairing");
        f2 = f2raw.scale(Coeff(-1, 2) / pr);
        // f1: solve <f1,f2>=0, <f1,f3>=0, <f1,f4>=1/2, then fix isotropy
        // along the kernel direction f4.
        Row r2 = row_of(f2), r3 = row_of(f3), r4 = row_of(f4);
        linalg::Matrix S(3, std::vector<Coeff>(4));
        Mat4 a = quadric_gram_matrix();
        for (int j = 0; j < 4; ++j) {
            // <f1, v> = sum_j f1_j * (A v)_j
            Coeff av2 = Coeff::zero(), av3 = Coeff::zero(), av4 = Coeff::zero();
            for (int k = 0; k < 4; ++k) {
                av2 += a.m[j][k] * r2[k];
                av3 += a.m[j][k] * r3[k];
                av4 += a.m[j][k] * r4[k];
            }
            S[0][j] = av2;
            S[1][j] = av3;
            S[2][j] = av4;
        }
        auto sol = linalg::solve(S, {Coeff::zero(), Coeff::zero(), Coeff(1, 2)});
        if (!sol) throw std::domain_error("normalize_plane_pair: no f1 solution");
        Row r1{(*sol)[0], (*sol)[1], (*sol)[2], (*sol)[3]};
        Coeff self = pairing_rows(r1, r1);
        // <f1 + t f4, f1 + t f4> = <f1,f1> + t, so t = -<f1,f1>
        for (int j = 0; j < 4; ++j) r1[j] += (-self) * r4[j];
        f1 = form_of(r1);
    }

    Mat4 M = Mat4::from_rows({f1, f2, f3, f4});
    if (is_orthogonal(M) == OrthVerdict::No)
        throw std::domain_error("normalize_plane_pair: assembled matrix not orthogonal");
    return {M, pcase};
}

Mat4 so4_from_sl2_pair(const std::array<Coeff, 4>& A, const std::array<Coeff, 4>& B) {
    Coeff detA = A[0] * A[3] - A[1] * A[2];
    Coeff detB = B[0] * B[3] - B[1] * B[2];
    if (!detA.is_one() || !detB.is_one())
        throw std::domain_error("so4_from_sl2_pair: determinants must be 1");
    // row-major 2x2: A = (a11 a12 / a21 a22)
    auto a = [&](int i, int j) { return A[2 * i + j]; };
    auto b = [&](int i, int j) { return B[2 * i + j]; };
    Mat4 M = Mat4::zero();
    // f_{2i+j+1} = R_{ij} = sum_{m,k} A_im B_jk X_mk, X row-major = (x1 x2 / x3 x4)
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int mm = 0; mm < 2; ++mm)
                for (int k = 0; k < 2; ++k)
                    M.m[2 * i + j][2 * mm + k] += a(i, mm) * b(j, k);
    return M;
}

IsotropicPlane act_on_plane(const Mat4& g, const IsotropicPlane& p) {
    Mat4 gi = g.inverse();
    return IsotropicPlane(gi.apply_to_form(p.basis0()), gi.apply_to_form(p.basis1()));
}

const Mat4& mat_tau() {
    static const Mat4 t = Mat4::from_rows(
        {Poly::variable(0), Poly::variable(2), Poly::variable(1), Poly::variable(3)});
    return t;
}

const Mat4& mat_sigma() {
    static const Mat4 s = Mat4::from_rows({-Poly::variable(2), Poly::variable(3),
                                           -Poly::variable(0), Poly::variable(1)});
    return s;
}

const std::array<Mat4, 4>& klein_group() {
    static const std::array<Mat4, 4> v4 = {
        Mat4::identity(),
        Mat4::from_rows(
            {Poly::variable(3), Poly::variable(1), Poly::variable(2), Poly::variable(0)}),
        mat_tau(),
        Mat4::from_rows(
            {Poly::variable(3), Poly::variable(2), Poly::variable(1), Poly::variable(0)})};
    return v4;
}

} // namespace tamesl2

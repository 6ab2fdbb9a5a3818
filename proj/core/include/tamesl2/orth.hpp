#pragma once

#include "tamesl2/poly.hpp"

#include <array>
#include <optional>

namespace tamesl2 {

// 4x4 matrix acting on linear forms in the dual basis x1..x4; row i holds
// the coefficients of f_i = sum_j m[i][j] * x_j.
struct Mat4 {
    std::array<std::array<Coeff, 4>, 4> m;

    static Mat4 zero();
    static Mat4 identity();
    static Mat4 from_rows(const std::array<Poly, 4>& rows); // rows: linear forms
    Poly row_form(int i) const;
    std::array<Poly, 4> row_forms() const;

    Mat4 operator*(const Mat4& o) const;
    Mat4 transpose() const;
    Coeff det() const;
    Mat4 inverse() const; // throws if singular

    // u |-> u composed with this map: coefficient row of u times the matrix.
    Poly apply_to_form(const Poly& u) const;

    bool operator==(const Mat4& o) const { return m == o.m; }
    bool operator!=(const Mat4& o) const { return m != o.m; }
};

// Matrix A of the quadratic form q in the canonical basis: (1/2)*antidiag(1,-1,-1,1).
Mat4 quadric_gram_matrix();

// Bilinear pairing on V* associated with (1/4)q*; ⟨x1,x4⟩ = 1/2, ⟨x2,x3⟩ = -1/2.
// Inputs must be (homogeneous) linear forms.
Coeff q_pairing(const Poly& u, const Poly& v);

enum class OrthVerdict { No, GeneralO4, SpecialSO4 };

// Membership via the ten pairing equalities ⟨f_i,f_j⟩ = ⟨x_i,x_j⟩, then det.
OrthVerdict is_orthogonal(const Mat4& M);
// Independent route: M^t A M == A (plus det for the special/general split).
OrthVerdict orthogonal_by_matrix_identity(const Mat4& M);

// Totally isotropic plane of V*, stored as the reduced echelon basis of its
// span under the DivisionOrder restricted to linear forms.
class IsotropicPlane {
public:
    // Canonicalizes span(u, v). Throws if the forms are dependent or the
    // plane is not totally isotropic.
    IsotropicPlane(const Poly& u, const Poly& v);

    const Poly& basis0() const { return b_[0]; }
    const Poly& basis1() const { return b_[1]; }

    bool contains(const Poly& u) const;
    bool operator==(const IsotropicPlane& o) const { return b_[0] == o.b_[0] && b_[1] == o.b_[1]; }
    bool operator!=(const IsotropicPlane& o) const { return !(*this == o); }

private:
    std::array<Poly, 2> b_;
};

// Unique basis (f3,f4) of W' with (f1,f2,f3,f4) in O4, where W = span(f1,f2)
// and W' are transverse totally isotropic planes.
std::pair<Poly, Poly> complete_pair(const Poly& f1, const Poly& f2, const IsotropicPlane& wprime);

// Constructive Witt extension of a totally isotropic independent pair.
Mat4 extend_isotropic_pair(const Poly& f1, const Poly& f2);

// The two totally isotropic planes through a nonzero isotropic vector:
// first the horizontal one, then the vertical one.
std::pair<IsotropicPlane, IsotropicPlane> planes_through(const Poly& f1);

struct PlaneClass {
    bool horizontal = false;
    // projective parameter (a:b), normalized to (1,b) or (0,1)
    Coeff a, b;
};
// Horizontal planes are span(a*x1+b*x3, a*x2+b*x4); vertical ones are
// span(a*x1+b*x2, a*x3+b*x4).
PlaneClass classify_plane(const IsotropicPlane& p);

enum class PlanePairCase { Equal, Transverse, Meeting };
// g in O4 with g.W = span(x3,x4) and g.W' equal to span(x3,x4), span(x1,x2)
// or span(x2,x4) according to the case. The action on planes is
// f.span(u,v) = span(u o f^-1, v o f^-1).
std::pair<Mat4, PlanePairCase> normalize_plane_pair(const IsotropicPlane& w,
                                                    const IsotropicPlane& wprime);

// (A,B) |-> A . (x1 x2 / x3 x4) . B^t, the 2:1 cover SL2 x SL2 -> SO4.
// Inputs are row-major 2x2 matrices of determinant 1.
Mat4 so4_from_sl2_pair(const std::array<Coeff, 4>& A, const std::array<Coeff, 4>& B);

// Action of g on a plane: span(u o g^-1, v o g^-1).
IsotropicPlane act_on_plane(const Mat4& g, const IsotropicPlane& p);

// Fixed elements of O4 used throughout.
const Mat4& mat_tau();   // transpose automorphism (x1,x3,x2,x4)
const Mat4& mat_sigma(); // (-x3, x4, -x1, x2)
const std::array<Mat4, 4>& klein_group();

} // namespace tamesl2

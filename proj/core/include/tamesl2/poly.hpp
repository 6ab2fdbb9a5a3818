#pragma once

#include "tamesl2/coeff.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tamesl2 {

// Monomial exponents of x1^i x2^j x3^k x4^l.
struct Exponent4 {
    std::array<uint32_t, 4> e{0, 0, 0, 0};

    uint64_t total() const { return (uint64_t)e[0] + e[1] + e[2] + e[3]; }
    Exponent4 operator+(const Exponent4& o) const {
        return Exponent4{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
    }
    bool divides(const Exponent4& m) const {
        return e[0] <= m.e[0] && e[1] <= m.e[1] && e[2] <= m.e[2] && e[3] <= m.e[3];
    }
    Exponent4 quotient_by(const Exponent4& d) const {
        return Exponent4{{e[0] - d.e[0], e[1] - d.e[1], e[2] - d.e[2], e[3] - d.e[3]}};
    }
    bool operator==(const Exponent4& o) const { return e == o.e; }
    bool operator!=(const Exponent4& o) const { return e != o.e; }

    // DivisionOrder: graded lex with x1 > x2 > x3 > x4. Total, multiplicative,
    // a well-order on monomials. Returns <0, 0, >0.
    static int cmp(const Exponent4& a, const Exponent4& b) {
        uint64_t ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb ? -1 : 1;
        for (int k = 0; k < 4; ++k)
            if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? -1 : 1;
        return 0;
    }
};

// N^4-valued weighted degree, extended by -infinity for the zero polynomial.
// Ordered by graded lex: compare the component sums first, then lex.
// Differences of finite values live in Z^4, so components are signed.
struct WeightVec {
    bool finite = false;
    std::array<int64_t, 4> w{0, 0, 0, 0};

    static WeightVec minus_infinity() { return WeightVec{}; }
    static WeightVec of(int64_t a, int64_t b, int64_t c, int64_t d) {
        return WeightVec{true, {a, b, c, d}};
    }
    // Weight rows: deg x1=(2,1,1,0), x2=(1,2,0,1), x3=(1,0,2,1), x4=(0,1,1,2).
    static std::array<std::array<int64_t, 4>, 4> weight_matrix() {
        return {{{2, 1, 1, 0}, {1, 2, 0, 1}, {1, 0, 2, 1}, {0, 1, 1, 2}}};
    }
    static WeightVec of_monomial(const Exponent4& m) {
        int64_t i = m.e[0], j = m.e[1], k = m.e[2], l = m.e[3];
        return of(2 * i + j + k, i + 2 * j + l, i + 2 * k + l, j + k + 2 * l);
    }

    int64_t sum() const { return w[0] + w[1] + w[2] + w[3]; }

    int cmp(const WeightVec& o) const {
        if (!finite || !o.finite) {
            if (finite == o.finite) return 0;
            return finite ? 1 : -1;
        }
        int64_t sa = sum(), sb = o.sum();
        if (sa != sb) return sa < sb ? -1 : 1;
        for (int k = 0; k < 4; ++k)
            if (w[k] != o.w[k]) return w[k] < o.w[k] ? -1 : 1;
        return 0;
    }
    bool operator<(const WeightVec& o) const { return cmp(o) < 0; }
    bool operator<=(const WeightVec& o) const { return cmp(o) <= 0; }
    bool operator>(const WeightVec& o) const { return cmp(o) > 0; }
    bool operator>=(const WeightVec& o) const { return cmp(o) >= 0; }
    bool operator==(const WeightVec& o) const { return cmp(o) == 0; }
    bool operator!=(const WeightVec& o) const { return cmp(o) != 0; }

    WeightVec operator+(const WeightVec& o) const {
        if (!finite || !o.finite) return minus_infinity();
        return of(w[0] + o.w[0], w[1] + o.w[1], w[2] + o.w[2], w[3] + o.w[3]);
    }
    // Finite difference in Z^4; both sides must be finite.
    WeightVec operator-(const WeightVec& o) const;
    WeightVec scaled(int64_t k) const;

    std::string str() const;
};

// Exact sparse polynomial in x1..x4 over Q(i). Terms are kept sorted in
// descending DivisionOrder with no zero coefficients, so representation,
// printing and serialization are canonical.
class Poly {
public:
    struct Term {
        Exponent4 m;
        Coeff c;
    };

    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly constant(const Coeff& c);
    static Poly variable(int idx); // 0..3 for x1..x4
    static Poly monomial(const Exponent4& m, const Coeff& c);
    static const Poly& q();         // x1*x4 - x2*x3
    static const Poly& q_minus_1(); // q - 1

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scale(const Coeff& c) const;
    Poly pow(uint64_t n) const;

    // p with x_i replaced by g[i], expanded exactly.
    Poly substitute(const std::array<Poly, 4>& g) const;
    Poly derivative(int var) const;

    WeightVec wdeg() const;
    // Sum of the terms of maximal weighted degree ("hom p"). p must be nonzero.
    Poly leading_part() const;

    // Leading data under the DivisionOrder (not the weighted degree).
    const Term& division_leading_term() const;

    Coeff coeff_of(const Exponent4& m) const;
    uint64_t raw_degree() const; // max total degree, 0 for the zero polynomial
    uint32_t degree_in(int var) const;
    bool depends_on(int var) const;
    // Homogeneous of raw degree 1 (a nonzero linear form, no constant term).
    bool is_linear_form() const;
    Coeff constant_term() const { return coeff_of(Exponent4{}); }
    // Coefficient row (c1..c4) when the polynomial is a linear form (+const).
    std::array<Coeff, 4> linear_coeffs() const;

    // Single-divisor multivariate division under the DivisionOrder; the
    // remainder has no term divisible by the leading monomial of d and is
    // canonical for fixed d. d must be nonzero.
    struct DivRem;
    DivRem divrem(const Poly& d) const;

    std::string str() const; // human-readable, diagnostics only

    // Terms must be sorted descending, zero-free; used by internal builders.
    static Poly from_sorted_terms(std::vector<Term> t);

private:
    std::vector<Term> terms_;
};

struct Poly::DivRem {
    Poly quo, rem;
};

Poly operator*(const Coeff& c, const Poly& p);

// Representative r of p mod (q-1) with q never dividing hom(r) (or r = 0)
// and wdeg(r) <= wdeg(p); realizes the degree on C[SL2].
Poly quotient_normal_form(const Poly& p);
bool eq_mod_quadric(const Poly& p, const Poly& r);

// Exact symbolic determinant of the 4x4 matrix of partial derivatives,
// rows indexed by (f1,f2,f3,f4) in the given order, columns by x1..x4.
Poly jacobian(const Poly& f1, const Poly& f2, const Poly& f3, const Poly& f4);
// jj(f1,f2,f3) = Jac(q, f1, f2, f3)
Poly pseudo_jacobian(const Poly& f1, const Poly& f2, const Poly& f3);
// jj_k(f1,f2) = jj(x_k, f1, f2); k in 0..3
Poly jj_k(int k, const Poly& f1, const Poly& f2);

} // namespace tamesl2

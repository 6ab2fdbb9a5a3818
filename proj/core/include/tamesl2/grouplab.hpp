#pragma once

#include "tamesl2/catalog.hpp"
#include "tamesl2/complex.hpp"
#include "tamesl2/tame.hpp"

#include <optional>
#include <vector>

namespace tamesl2 {

// Finite subgroup given by its full element list; closure and distinctness
// are verified on construction.
struct FiniteSubgroup {
    std::vector<TameAuto> elements;

    // closes the generating set under composition; throws beyond max_order
    static FiniteSubgroup generate(const std::vector<TameAuto>& gens, size_t max_order = 64);
};

struct LinearizeReport {
    TameAuto conjugator; // m with m o f = phi(f) o m for all f
    std::vector<Mat4> linear_images;
    bool verified = false;
};

// Mean-trick linearization inside Stab([x1,x3]) = E24 x| GL2. Every element
// must fix the plane span(x1,x3); throws otherwise.
LinearizeReport mean_linearize(const FiniteSubgroup& gamma);

// Triangular automorphisms of C^3 (x4 unused): f_i = a_i x_i + P_i with
// P_i in C[x_{i+1},...,x_3].
struct TriMap {
    std::array<Poly, 3> c;
    bool operator==(const TriMap& o) const { return c == o.c; }
};
TriMap compose_tri(const TriMap& f, const TriMap& g);
bool is_triangular(const TriMap& f);

struct TriangularGroup {
    std::vector<TriMap> elements;
    static TriangularGroup generate(const std::vector<TriMap>& gens, size_t max_order = 64);
};

struct DiagonalizeReport {
    TriMap conjugator; // unipotent u with u . Gamma . u^-1 diagonal
    std::vector<TriMap> diagonal_images;
    bool verified = false;
};
DiagonalizeReport diagonalize_triangular(const TriangularGroup& gamma);

// --- resonance -------------------------------------------------------------

struct ResonanceWitness {
    long p = 0, q = 0; // a^p b^q = 1, both nonzero
};
// Decides a^p b^q = 1 via Gaussian-integer factorization (units of Q(i)
// contribute a Z/4 condition). Returns a minimal witness.
std::optional<ResonanceWitness> resonant(const Coeff& a, const Coeff& b);

// R (formal two-variable polynomial) resonant in a, b: R nonconstant and
// r_{ij} != 0 => a^{i+1} b^{j+1} = 1.
bool resonant_poly(const Poly& r, const Coeff& a, const Coeff& b);

// --- example families ------------------------------------------------------

struct HyperellipticForm {
    enum Kind { Resonant, ElementaryRoots } kind = Resonant;
};

struct HyperellipticReport {
    HyperellipticForm::Kind kind = HyperellipticForm::Resonant;
    TameAuto f;           // the hyperelliptic element
    TameWord witness;     // commuting hyperbolic word (resonant form) or
                          // the hyperbolic g1 o g2 word (elementary form)
    Poly resonantP;       // the P used in the construction
    bool commutation_verified = false; // f o W = W o f (resonant form), or
                                       // the printed Aut(A^2) identity
};

// First form: f = (a x1, b^-1 x2, b x3, a^-1 x4) for resonant a, b, with the
// commuting hyperbolic witness sigma-conjugated per the construction.
// Second form: the elementary automorphism with roots of unity of equal
// order; P defaults to x1*x3 (formal X*Y).
HyperellipticReport gen_hyperelliptic(const Coeff& a, const Coeff& b,
                                      std::optional<HyperellipticForm::Kind> force = {},
                                      const Poly& elementaryP = Poly::zero());

struct ParabolicReport {
    int level = 0;
    TameWord phi;                       // phi_n
    std::vector<TameWord> generators;   // phi_n^-1 h phi_n for sampled h in H_n
    std::vector<bool> commutation_checks; // sampled h in H_j vs g~_k g_k, j < k
};
ParabolicReport gen_parabolic(int n);

// --- amalgam normal form in Stab([x1]) --------------------------------------

struct StabFactor {
    bool in_h2 = false; // H2 factor; otherwise a K1 factor
    TameAuto value;
};

struct StabNormalForm {
    std::vector<StabFactor> factors; // composition order, evaluates to f
    bool alternating = true;
};

// Alternating K1/H2 factorization of a tame automorphism with f1 = a*x1,
// computed by triangular peeling of (f2,f3) over C[x1]. Throws when the
// input does not have the stabilizer shape.
StabNormalForm stab_x1_normal_form(const TameAuto& f);

} // namespace tamesl2

#pragma once

#include "tamesl2/orth.hpp"
#include "tamesl2/poly.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace tamesl2 {

// Quadruple (f1,f2,f3,f4) with f1*f4 - f2*f3 = q, the Tame_q(C^4)
// representation of a tame automorphism of SL2.
struct TameAuto {
    std::array<Poly, 4> c;

    static TameAuto identity();
    static TameAuto from_mat(const Mat4& m);

    bool quadric_holds() const;
    WeightVec degree() const; // degmax: max over component degrees
    bool is_linear() const;   // every component a linear form
    Mat4 linear_matrix() const;

    bool operator==(const TameAuto& o) const { return c == o.c; }
    bool operator!=(const TameAuto& o) const { return c != o.c; }
};

// f o g, componentwise substitution. Checks the quadric invariant on the
// inputs and the result.
TameAuto compose(const TameAuto& f, const TameAuto& g);

enum class ElementaryFamily { E12, E34, E13, E24 };
const char* family_name(ElementaryFamily f);
std::optional<ElementaryFamily> family_from_name(const std::string& s);

// Component roles of a family: e o f adds f[u]*P(f[u],f[v]) to f[r] and
// f[v]*P(f[u],f[v]) to f[s]; components u,v are untouched.
struct FamilyShape {
    int r, s, u, v;
};
FamilyShape family_shape(ElementaryFamily f);

// Elementary automorphism: family tag plus a polynomial P in the family's
// untouched pair of variables. P is stored on formal variables (X,Y),
// carried by the (x1,x2) exponent slots.
struct ElementaryAuto {
    ElementaryFamily family;
    Poly P;

    TameAuto to_auto() const;
    ElementaryAuto inverse() const { return {family, -P}; }
    bool operator==(const ElementaryAuto& o) const { return family == o.family && P == o.P; }
};

// e o f and a o f without the generic substitution machinery.
TameAuto compose_elementary(const ElementaryAuto& e, const TameAuto& f);
TameAuto compose_linear(const Mat4& a, const TameAuto& f);

using WordFactor = std::variant<ElementaryAuto, Mat4>;

// Word of factors in composition order: factors[0] o factors[1] o ... The
// normal shape e_l o ... o e_1 o a puts the orthogonal factor last.
struct TameWord {
    std::vector<WordFactor> factors;
};

TameAuto evaluate_word(const TameWord& w);
TameWord invert_word(const TameWord& w);
int word_linear_det_sign(const TameWord& w); // product of O4-factor det signs

// --- degree calculus on pairs -------------------------------------------

// Witness of algebraic dependence of two weighted-homogeneous polynomials:
// h1^s1 = lambda * h2^s2 with s1, s2 coprime positive.
struct DependenceWitness {
    long s1 = 0, s2 = 0;
    Coeff lambda;
};
std::optional<DependenceWitness> hom_dependence(const Poly& h1, const Poly& h2);

// Some(c,k) iff leading_part(p) = c * leading_part(r)^k.
std::optional<std::pair<Coeff, uint64_t>> hom_membership(const Poly& p, const Poly& r);

struct GenericDegreeData {
    WeightVec d1, d2;
    std::optional<DependenceWitness> H; // relation between hom f1 and hom f2
    WeightVec nabla;                    // parachute value d1 + d2 - max_k wdeg jj_k
};

struct ParachuteError : std::domain_error {
    explicit ParachuteError(const std::string& what, std::optional<DependenceWitness> w)
        : std::domain_error(what), witness(std::move(w)) {}
    std::optional<DependenceWitness> witness;
};

// Throws ParachuteError when all four jj_k vanish (the pair cannot be part
// of an automorphism).
GenericDegreeData parachute(const Poly& f1, const Poly& f2);

struct LowerBoundReport {
    bool hyp_R_depends_on_X = false;  // R(f1,f2) not in C[f2]
    bool hyp_hom_not_member = false;  // hom f1 not in C[hom f2]
    bool applicable = false;
    bool holds = false; // deg(f2 * R(f1,f2)) > deg f1, evaluated when applicable
    WeightVec lhs, rhs;
};
// R is a two-variable polynomial on formal (X,Y) evaluated at (f1,f2).
LowerBoundReport lower_bound_check(const Poly& f1, const Poly& f2, const Poly& R);

struct ComponentDropReport {
    int cmp_whole = 0, cmp_first = 0, cmp_second = 0; // sign of each degree comparison
    bool agree = false;
};
ComponentDropReport component_drop_equiv(const TameAuto& f, const ElementaryAuto& e);

// --- elementary reduction engine ------------------------------------------

struct ReductionBudget {
    int multi_depth = 4;   // multiplicity window for the dependent-case search
    int support_cap = 64;  // max monomial support per linear solve
};

// One candidate untouched plane for a (generalized) elementary reduction:
// the four standard family planes come first (in the fixed priority order),
// then the extra totally isotropic planes found inside the degree-drop
// kernel K = { w : sum_j w_j * hom_T(f_j) = 0 }.
struct CandidateReport {
    std::optional<ElementaryFamily> family; // set for the four standard planes
    std::array<Poly, 2> plane;              // basis of the untouched plane
    WeightVec deg_r, deg_u, deg_v;
    std::vector<std::pair<long, long>> single_layer_support;
    bool single_solvable = false;
    bool dependent = false;
    std::optional<DependenceWitness> witness;
    bool definitive_none = false; // proven: no P over this plane reduces deg f
    // an untouched component carries degmax, so no P can help (structural block)
    bool blocked_by_untouched = false;
    int pruned_from = -1;         // parachute bound kills all multiplicities >= this
    bool budget_exhausted = false;
    bool support_capped = false;
};

// A generalized elementary reduction step: cur -> e o (pre o cur), with
// pre in O4 normalizing the untouched plane to the standard position.
// pre is the identity whenever a plain family applies.
struct GeneralizedElementary {
    Mat4 pre;
    ElementaryAuto e;
};

struct ReductionStep {
    GeneralizedElementary move;
    WeightVec degree_after;
};

struct NoReductionReport {
    std::vector<CandidateReport> candidates;
    int kernel_dim = 0;          // dim of the degree-drop kernel K
    bool planes_complete = true; // false if a conic root was missing from the field
    bool definitive = false;
};

struct ReductionTrace {
    TameAuto start;
    std::vector<ReductionStep> steps;
    bool linear_terminal = false;
    Mat4 terminal;                // valid iff linear_terminal
    OrthVerdict terminal_verdict = OrthVerdict::No;
    std::optional<NoReductionReport> failure;
};

std::optional<GeneralizedElementary> find_elementary_reduction(
    const TameAuto& f, const ReductionBudget& budget = {},
    NoReductionReport* diag = nullptr);

ReductionTrace reduce(const TameAuto& f, const ReductionBudget& budget = {});

enum class TameVerdictKind { Tame, NotTameWithinBudget, NotAutomorphismOfQuadric };

struct TameVerdict {
    TameVerdictKind kind = TameVerdictKind::NotTameWithinBudget;
    TameWord word;       // certificate, valid iff kind == Tame (re-verified)
    ReductionTrace trace;
    bool definitive = false; // NotTame verified by exhausted degree equations
};

TameVerdict is_tame(const std::array<Poly, 4>& quadruple, const ReductionBudget& budget = {});

// Word made of the inverted trace steps followed by the terminal factor;
// evaluates exactly to the traced automorphism.
TameWord word_from_trace(const ReductionTrace& t);

} // namespace tamesl2

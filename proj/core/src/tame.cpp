#include "tamesl2/tame.hpp"

#include <stdexcept>

namespace tamesl2 {

TameAuto TameAuto::identity() {
    return TameAuto{{Poly::variable(0), Poly::variable(1), Poly::variable(2), Poly::variable(3)}};
}

TameAuto TameAuto::from_mat(const Mat4& m) { return TameAuto{m.row_forms()}; }

bool TameAuto::quadric_holds() const { return c[0] * c[3] - c[1] * c[2] == Poly::q(); }

WeightVec TameAuto::degree() const {
    WeightVec d = WeightVec::minus_infinity();
    for (const Poly& f : c) d = std::max(d, f.wdeg());
    return d;
}

bool TameAuto::is_linear() const {
    for (const Poly& f : c)
        if (!f.is_linear_form()) return false;
    return true;
}

Mat4 TameAuto::linear_matrix() const { return Mat4::from_rows(c); }

TameAuto compose(const TameAuto& f, const TameAuto& g) {
    if (!f.quadric_holds() || !g.quadric_holds())
        throw std::domain_error("compose: quadric invariant violated on input");
    TameAuto r;
    for (int i = 0; i < 4; ++i) r.c[i] = f.c[i].substitute(g.c);
    if (!r.quadric_holds()) throw std::domain_error("compose: quadric invariant lost");
    return r;
}

const char* family_name(ElementaryFamily f) {
    switch (f) {
        case ElementaryFamily::E12: return "E12";
        case ElementaryFamily::E34: return "E34";
        case ElementaryFamily::E13: return "E13";
        case ElementaryFamily::E24: return "E24";
    }
    return "?";
}

std::optional<ElementaryFamily> family_from_name(const std::string& s) {
    if (s == "E12") return ElementaryFamily::E12;
    if (s == "E34") return ElementaryFamily::E34;
    if (s == "E13") return ElementaryFamily::E13;
    if (s == "E24") return ElementaryFamily::E24;
    return std::nullopt;
}

FamilyShape family_shape(ElementaryFamily f) {
    switch (f) {
        case ElementaryFamily::E24: return {1, 3, 0, 2}; // P(x1,x3)
        case ElementaryFamily::E13: return {0, 2, 1, 3}; // P(x2,x4)
        case ElementaryFamily::E12: return {0, 1, 2, 3}; // P(x3,x4)
        case ElementaryFamily::E34: return {2, 3, 0, 1}; // P(x1,x2)
    }
    throw std::logic_error("family_shape");
}

TameAuto ElementaryAuto::to_auto() const { return compose_elementary(*this, TameAuto::identity()); }

TameAuto compose_elementary(const ElementaryAuto& e, const TameAuto& f) {
    FamilyShape sh = family_shape(e.family);
    Poly pval = e.P.substitute({f.c[sh.u], f.c[sh.v], Poly::zero(), Poly::zero()});
    TameAuto r = f;
    r.c[sh.r] = f.c[sh.r] + f.c[sh.u] * pval;
    r.c[sh.s] = f.c[sh.s] + f.c[sh.v] * pval;
    return r;
}

TameAuto compose_linear(const Mat4& a, const TameAuto& f) {
    TameAuto r;
    for (int i = 0; i < 4; ++i) {
        Poly acc;
        for (int j = 0; j < 4; ++j)
            if (!a.m[i][j].is_zero()) acc = acc + f.c[j].scale(a.m[i][j]);
        r.c[i] = acc;
    }
    return r;
}

TameAuto evaluate_word(const TameWord& w) {
    TameAuto acc = TameAuto::identity();
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        if (std::holds_alternative<ElementaryAuto>(*it))
            acc = compose_elementary(std::get<ElementaryAuto>(*it), acc);
        else
            acc = compose_linear(std::get<Mat4>(*it), acc);
    }
    return acc;
}

TameWord invert_word(const TameWord& w) {
    TameWord r;
    r.factors.reserve(w.factors.size());
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        if (std::holds_alternative<ElementaryAuto>(*it))
            r.factors.push_back(std::get<ElementaryAuto>(*it).inverse());
        else
            r.factors.push_back(std::get<Mat4>(*it).inverse());
    }
    return r;
}

int word_linear_det_sign(const TameWord& w) {
    int sign = 1;
    for (const WordFactor& f : w.factors)
        if (std::holds_alternative<Mat4>(f)) {
            Coeff d = std::get<Mat4>(f).det();
            if (d == Coeff(-1)) sign = -sign;
            else if (!d.is_one()) throw std::domain_error("word factor not in O4");
        }
    return sign;
}

std::optional<DependenceWitness> hom_dependence(const Poly& h1, const Poly& h2) {
    if (h1.is_zero() || h2.is_zero()) return std::nullopt;
    WeightVec d1 = h1.wdeg(), d2 = h2.wdeg();
    int64_t sum1 = d1.sum(), sum2 = d2.sum();
    if (sum1 <= 0 || sum2 <= 0) return std::nullopt;
    int64_t g = std::__gcd(sum1, sum2);
    long s1 = (long)(sum2 / g), s2 = (long)(sum1 / g);
    if (!(d1.scaled(s1) == d2.scaled(s2))) return std::nullopt;
    // leading monomials must match before committing to the big powers
    const auto& lt1 = h1.division_leading_term();
    const auto& lt2 = h2.division_leading_term();
    for (int v = 0; v < 4; ++v)
        if ((int64_t)lt1.m.e[v] * s1 != (int64_t)lt2.m.e[v] * s2) return std::nullopt;
    Coeff lambda = lt1.c.pow(s1) / lt2.c.pow(s2);
    if (h1.size() == 1 && h2.size() == 1) return DependenceWitness{s1, s2, lambda};
    if (h1.pow((uint64_t)s1) == lambda * h2.pow((uint64_t)s2))
        return DependenceWitness{s1, s2, lambda};
    return std::nullopt;
}

std::optional<std::pair<Coeff, uint64_t>> hom_membership(const Poly& p, const Poly& r) {
    if (p.is_zero() || r.is_zero()) throw std::domain_error("hom_membership: zero input");
    Poly hp = p.leading_part(), hr = r.leading_part();
    WeightVec dp = hp.wdeg(), dr = hr.wdeg();
    if (dp.sum() == 0) {
        // hom p constant: p = c * r^0
        if (hp.size() == 1) return std::make_pair(hp.terms()[0].c, (uint64_t)0);
        return std::nullopt;
    }
    if (dr.sum() <= 0) return std::nullopt;
    if (dp.sum() % dr.sum() != 0) return std::nullopt;
    int64_t k = dp.sum() / dr.sum();
    if (!(dr.scaled(k) == dp)) return std::nullopt;
    Poly hrk = hr.pow((uint64_t)k);
    Coeff c = hp.division_leading_term().c / hrk.division_leading_term().c;
    if (hp == c * hrk) return std::make_pair(c, (uint64_t)k);
    return std::nullopt;
}

GenericDegreeData parachute(const Poly& f1, const Poly& f2) {
    if (f1.is_zero() || f2.is_zero()) throw std::domain_error("parachute: zero input");
    GenericDegreeData out;
    out.d1 = f1.wdeg();
    out.d2 = f2.wdeg();
    out.H = hom_dependence(f1.leading_part(), f2.leading_part());
    WeightVec best = WeightVec::minus_infinity();
    for (int k = 0; k < 4; ++k) best = std::max(best, jj_k(k, f1, f2).wdeg());
    if (!best.finite)
        throw ParachuteError(
            "parachute: all four pseudo-Jacobians vanish; q, f1, f2 are algebraically "
            "dependent, so (f1,f2) is not part of an automorphism",
            out.H);
    out.nabla = out.d1 + out.d2 - best;
    return out;
}

LowerBoundReport lower_bound_check(const Poly& f1, const Poly& f2, const Poly& R) {
    LowerBoundReport rep;
    if (f1.is_zero() || f2.is_zero() || R.is_zero()) return rep;
    // f1, f2 are part of an automorphism (caller contract), hence
    // algebraically independent: R(f1,f2) in C[f2] iff R in C[Y].
    rep.hyp_R_depends_on_X = R.depends_on(0);
    rep.hyp_hom_not_member = !hom_membership(f1, f2).has_value();
    rep.applicable = rep.hyp_R_depends_on_X && rep.hyp_hom_not_member;
    if (!rep.applicable) return rep;
    Poly rval = R.substitute({f1, f2, Poly::zero(), Poly::zero()});
    rep.lhs = (f2 * rval).wdeg();
    rep.rhs = f1.wdeg();
    rep.holds = rep.lhs > rep.rhs;
    return rep;
}

namespace {
int sign_of(int c) { return c > 0 ? 1 : (c < 0 ? -1 : 0); }
} // namespace

ComponentDropReport component_drop_equiv(const TameAuto& f, const ElementaryAuto& e) {
    FamilyShape sh = family_shape(e.family);
    TameAuto g = compose_elementary(e, f);
    ComponentDropReport rep;
    rep.cmp_whole = sign_of(g.degree().cmp(f.degree()));
    rep.cmp_first = sign_of(g.c[sh.r].wdeg().cmp(f.c[sh.r].wdeg()));
    rep.cmp_second = sign_of(g.c[sh.s].wdeg().cmp(f.c[sh.s].wdeg()));
    rep.agree = rep.cmp_whole == rep.cmp_first && rep.cmp_first == rep.cmp_second;
    return rep;
}

} // namespace tamesl2

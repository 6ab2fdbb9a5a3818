#include "tamesl2/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace tamesl2 {

WeightVec WeightVec::operator-(const WeightVec& o) const {
    if (!finite || !o.finite) throw std::domain_error("WeightVec: difference with -infinity");
    return of(w[0] - o.w[0], w[1] - o.w[1], w[2] - o.w[2], w[3] - o.w[3]);
}

WeightVec WeightVec::scaled(int64_t k) const {
    if (!finite) throw std::domain_error("WeightVec: scaling -infinity");
    return of(w[0] * k, w[1] * k, w[2] * k, w[3] * k);
}

std::string WeightVec::str() const {
    if (!finite) return "-inf";
    std::string s = "(";
    for (int k = 0; k < 4; ++k) s += std::to_string(w[k]) + (k < 3 ? "," : ")");
    return s;
}

namespace {

struct ExpHash {
    size_t operator()(const Exponent4& m) const {
        uint64_t h = 1469598103934665603ull;
        for (uint32_t v : m.e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

bool term_desc(const Poly::Term& a, const Poly::Term& b) {
    return Exponent4::cmp(a.m, b.m) > 0;
}

} // namespace

Poly Poly::from_sorted_terms(std::vector<Term> t) {
    Poly p;
    p.terms_ = std::move(t);
    return p;
}

Poly Poly::constant(const Coeff& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({Exponent4{}, c});
    return p;
}

Poly Poly::variable(int idx) {
    Exponent4 m;
    m.e[idx] = 1;
    return monomial(m, Coeff::one());
}

Poly Poly::monomial(const Exponent4& m, const Coeff& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
}

const Poly& Poly::q() {
    static const Poly q_ = [] {
        Exponent4 m14, m23;
        m14.e[0] = m14.e[3] = 1;
        m23.e[1] = m23.e[2] = 1;
        return monomial(m14, Coeff::one()) + monomial(m23, Coeff(-1));
    }();
    return q_;
}

const Poly& Poly::q_minus_1() {
    static const Poly qm1_ = q() - constant(Coeff::one());
    return qm1_;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Poly Poly::operator-() const {
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, -t.c});
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = Exponent4::cmp(terms_[i].m, o.terms_[j].m);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Coeff s = terms_[i].c + o.terms_[j].c;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    if (size() == 1 && terms_[0].m == Exponent4{} ) return o.scale(terms_[0].c);
    if (o.size() == 1 && o.terms_[0].m == Exponent4{}) return scale(o.terms_[0].c);
    std::unordered_map<Exponent4, Coeff, ExpHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : o.terms_) acc[a.m + b.m] += a.c * b.c;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& kv : acc)
        if (!kv.second.is_zero()) out.push_back({kv.first, kv.second});
    std::sort(out.begin(), out.end(), term_desc);
    return from_sorted_terms(std::move(out));
}

Poly Poly::scale(const Coeff& c) const {
    if (c.is_zero()) return zero();
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, t.c * c});
    return r;
}

Poly operator*(const Coeff& c, const Poly& p) { return p.scale(c); }

Poly Poly::pow(uint64_t n) const {
    Poly acc = constant(Coeff::one());
    Poly base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Poly Poly::substitute(const std::array<Poly, 4>& g) const {
    // power tables per variable, built lazily up to the needed exponent
    std::array<std::vector<Poly>, 4> pows;
    for (int v = 0; v < 4; ++v) pows[v].push_back(Poly::constant(Coeff::one()));
    auto power = [&](int v, uint32_t e) -> const Poly& {
        while (pows[v].size() <= e) pows[v].push_back(pows[v].back() * g[v]);
        return pows[v][e];
    };
    Poly acc;
    for (const Term& t : terms_) {
        Poly prod = Poly::constant(t.c);
        for (int v = 0; v < 4; ++v)
            if (t.m.e[v]) prod = prod * power(v, t.m.e[v]);
        acc = acc + prod;
    }
    return acc;
}

Poly Poly::derivative(int var) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        if (t.m.e[var] == 0) continue;
        Exponent4 m = t.m;
        Coeff c = t.c * Coeff((long)m.e[var]);
        m.e[var] -= 1;
        out.push_back({m, c});
    }
    // differentiation preserves the DivisionOrder of the surviving terms
    std::sort(out.begin(), out.end(), term_desc);
    return from_sorted_terms(std::move(out));
}

WeightVec Poly::wdeg() const {
    WeightVec best = WeightVec::minus_infinity();
    for (const Term& t : terms_) {
        WeightVec w = WeightVec::of_monomial(t.m);
        if (best < w) best = w;
    }
    return best;
}

Poly Poly::leading_part() const {
    if (is_zero()) throw std::domain_error("leading_part: undefined leading part of 0");
    WeightVec d = wdeg();
    std::vector<Term> out;
    for (const Term& t : terms_)
        if (WeightVec::of_monomial(t.m) == d) out.push_back(t);
    return from_sorted_terms(std::move(out));
}

const Poly::Term& Poly::division_leading_term() const {
    if (is_zero()) throw std::domain_error("division_leading_term of 0");
    return terms_.front();
}

Coeff Poly::coeff_of(const Exponent4& m) const {
    // terms are sorted descending; binary search
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Exponent4& key) {
                                   return Exponent4::cmp(t.m, key) > 0;
                               });
    if (it != terms_.end() && it->m == m) return it->c;
    return Coeff::zero();
}

uint64_t Poly::raw_degree() const {
    uint64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.m.total());
    return d;
}

uint32_t Poly::degree_in(int var) const {
    uint32_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.m.e[var]);
    return d;
}

bool Poly::depends_on(int var) const { return degree_in(var) > 0; }

bool Poly::is_linear_form() const {
    if (is_zero()) return false;
    for (const Term& t : terms_)
        if (t.m.total() != 1) return false;
    return true;
}

std::array<Coeff, 4> Poly::linear_coeffs() const {
    std::array<Coeff, 4> row{Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero()};
    for (const Term& t : terms_) {
        if (t.m.total() != 1) throw std::domain_error("linear_coeffs: not a linear form");
        for (int v = 0; v < 4; ++v)
            if (t.m.e[v] == 1) row[v] = t.c;
    }
    return row;
}

Poly::DivRem Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    const Term& lead = d.division_leading_term();
    Poly quo, rem, work = *this;
    while (!work.is_zero()) {
        const Term& t = work.division_leading_term();
        if (lead.m.divides(t.m)) {
            Poly piece = monomial(t.m.quotient_by(lead.m), t.c / lead.c);
            quo = quo + piece;
            work = work - piece * d;
        } else {
            // leading term goes to the remainder untouched
            Poly piece = monomial(t.m, t.c);
            rem = rem + piece;
            work = work - piece;
        }
    }
    return {quo, rem};
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const Term& t : terms_) {
        std::string cs = t.c.str();
        bool neg = false;
        if (t.c.is_rational() && t.c.re() < 0) {
            neg = true;
            cs = (-t.c).str();
        }
        if (first) {
            if (neg) s += "-";
            first = false;
        } else {
            s += neg ? " - " : " + ";
        }
        auto strip = [](std::string v) {
            if (v.size() > 2 && v.compare(v.size() - 2, 2, "/1") == 0) v.resize(v.size() - 2);
            return v;
        };
        cs = strip(cs);
        std::string mono;
        for (int v = 0; v < 4; ++v) {
            if (!t.m.e[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(v + 1);
            if (t.m.e[v] > 1) mono += "^" + std::to_string(t.m.e[v]);
        }
        if (mono.empty()) {
            s += cs;
        } else if (cs == "1") {
            s += mono;
        } else {
            s += cs + "*" + mono;
        }
    }
    return s;
}

Poly quotient_normal_form(const Poly& p) {
    Poly r = p;
    while (!r.is_zero()) {
        Poly h = r.leading_part();
        Poly::DivRem dr = h.divrem(Poly::q());
        if (!dr.rem.is_zero()) break;
        // r === r - (q-1)*h/q mod (q-1), and wdeg strictly decreases
        r = r - Poly::q_minus_1() * dr.quo;
    }
    return r;
}

bool eq_mod_quadric(const Poly& p, const Poly& r) {
    return (p - r).divrem(Poly::q_minus_1()).rem.is_zero();
}

namespace {

Poly det3(const std::array<std::array<Poly, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

Poly jacobian(const Poly& f1, const Poly& f2, const Poly& f3, const Poly& f4) {
    std::array<std::array<Poly, 4>, 4> J;
    const Poly* fs[4] = {&f1, &f2, &f3, &f4};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) J[i][j] = fs[i]->derivative(j);
    Poly det;
    for (int j = 0; j < 4; ++j) {
        if (J[0][j].is_zero()) continue;
        std::array<std::array<Poly, 3>, 3> minor;
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = J[r][c];
            }
        }
        Poly cof = J[0][j] * det3(minor);
        det = (j % 2 == 0) ? det + cof : det - cof;
    }
    return det;
}

Poly pseudo_jacobian(const Poly& f1, const Poly& f2, const Poly& f3) {
    return jacobian(Poly::q(), f1, f2, f3);
}

Poly jj_k(int k, const Poly& f1, const Poly& f2) {
    return pseudo_jacobian(Poly::variable(k), f1, f2);
}

} // namespace tamesl2

#include "tamesl2/grouplab.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tamesl2 {

namespace {

Poly X(int i) { return Poly::variable(i); }

std::string auto_key(const TameAuto& f) {
    std::string k;
    for (const Poly& p : f.c) {
        for (const auto& t : p.terms()) {
            for (int v = 0; v < 4; ++v) k += std::to_string(t.m.e[v]) + ",";
            k += t.c.str() + ";";
        }
        k += "|";
    }
    return k;
}

} // namespace

FiniteSubgroup FiniteSubgroup::generate(const std::vector<TameAuto>& gens, size_t max_order) {
    std::map<std::string, TameAuto> elems;
    TameAuto id = TameAuto::identity();
    elems[auto_key(id)] = id;
    std::vector<TameAuto> frontier{id};
    while (!frontier.empty()) {
        std::vector<TameAuto> next;
        for (const TameAuto& f : frontier)
            for (const TameAuto& g : gens) {
                TameAuto h = compose(g, f);
                auto [it, fresh] = elems.emplace(auto_key(h), h);
                if (fresh) {
                    next.push_back(h);
                    if (elems.size() > max_order)
                        throw std::domain_error("FiniteSubgroup: closure exceeds the bound");
                }
            }
        frontier = std::move(next);
    }
    FiniteSubgroup out;
    for (auto& kv : elems) out.elements.push_back(kv.second);
    // closure check (and inverses come with it for finite sets)
    for (const TameAuto& f : out.elements)
        for (const TameAuto& g : out.elements)
            if (!elems.count(auto_key(compose(f, g))))
                throw std::logic_error("FiniteSubgroup: closure verification failed");
    return out;
}

namespace {

// linear part of an element of Stab([x1,x3]): rows 1,3 define an element of
// GL2 acting on span(x1,x3), the complementary block is forced
Mat4 stab_x1x3_linear_part(const TameAuto& g) {
    auto lin13 = [](const Poly& p) -> std::array<Coeff, 2> {
        std::array<Coeff, 4> row = p.linear_coeffs();
        if (!row[1].is_zero() || !row[3].is_zero())
            throw std::domain_error("mean_linearize: element does not fix [x1,x3]");
        return {row[0], row[2]};
    };
    if (!g.c[0].is_linear_form() || !g.c[2].is_linear_form())
        throw std::domain_error("mean_linearize: element does not fix [x1,x3]");
    auto [a, b] = lin13(g.c[0]);
    auto [c, d] = lin13(g.c[2]);
    Coeff det = a * d - b * c;
    if (det.is_zero()) throw std::domain_error("mean_linearize: singular GL2 part");
    Mat4 m = Mat4::zero();
    m.m[0][0] = a;
    m.m[0][2] = b;
    m.m[2][0] = c;
    m.m[2][2] = d;
    m.m[1][1] = a / det;
    m.m[1][3] = b / det;
    m.m[3][1] = c / det;
    m.m[3][3] = d / det;
    return m;
}

// P with h = (x1, x2 + x1 P, x3, x4 + x3 P); throws if h is not in E24
Poly e24_polynomial(const TameAuto& h) {
    if (!(h.c[0] == X(0)) || !(h.c[2] == X(2)))
        throw std::domain_error("mean_linearize: residual not in E24");
    Poly::DivRem dr = (h.c[1] - X(1)).divrem(X(0));
    if (!dr.rem.is_zero()) throw std::domain_error("mean_linearize: residual not in E24");
    Poly p = dr.quo;
    if (p.depends_on(1) || p.depends_on(3))
        throw std::domain_error("mean_linearize: residual P outside C[x1,x3]");
    if (!(h.c[3] == X(3) + X(2) * p))
        throw std::domain_error("mean_linearize: residual not in E24");
    return p;
}

TameAuto e24_auto(const Poly& p) {
    return TameAuto{{X(0), X(1) + X(0) * p, X(2), X(3) + X(2) * p}};
}

} // namespace

LinearizeReport mean_linearize(const FiniteSubgroup& gamma) {
    if (gamma.elements.empty()) throw std::domain_error("mean_linearize: empty group");
    Poly mean;
    std::vector<Mat4> phis;
    for (const TameAuto& g : gamma.elements) {
        Mat4 phi = stab_x1x3_linear_part(g);
        phis.push_back(phi);
        TameAuto resid = compose_linear(phi.inverse(), g);
        mean = mean + e24_polynomial(resid);
    }
    mean = mean.scale(Coeff(1, (long)gamma.elements.size()));
    LinearizeReport rep;
    rep.conjugator = e24_auto(mean);
    TameAuto m_inv = e24_auto(-mean);
    rep.verified = true;
    for (size_t i = 0; i < gamma.elements.size(); ++i) {
        // m o f = phi(f) o m, hence m f m^-1 = phi(f)
        TameAuto lhs = compose(rep.conjugator, gamma.elements[i]);
        TameAuto rhs = compose_linear(phis[i], rep.conjugator);
        if (!(lhs == rhs)) rep.verified = false;
        TameAuto conj = compose(lhs, m_inv);
        if (!conj.is_linear() || !(TameAuto::from_mat(phis[i]) == conj)) rep.verified = false;
        rep.linear_images.push_back(phis[i]);
    }
    return rep;
}

TriMap compose_tri(const TriMap& f, const TriMap& g) {
    std::array<Poly, 4> sub{g.c[0], g.c[1], g.c[2], Poly::variable(3)};
    TriMap r;
    for (int i = 0; i < 3; ++i) r.c[i] = f.c[i].substitute(sub);
    return r;
}

bool is_triangular(const TriMap& f) {
    for (int i = 0; i < 3; ++i) {
        if (f.c[i].depends_on(3)) return false;
        // f_i = a_i x_i + P_i(x_{i+1..3})
        Exponent4 xi;
        xi.e[i] = 1;
        Coeff ai = f.c[i].coeff_of(xi);
        if (ai.is_zero()) return false;
        Poly rest = f.c[i] - Poly::monomial(xi, ai);
        for (int v = 0; v <= i; ++v)
            if (rest.depends_on(v)) return false;
    }
    return true;
}

TriangularGroup TriangularGroup::generate(const std::vector<TriMap>& gens, size_t max_order) {
    auto key = [](const TriMap& f) {
        std::string k;
        for (const Poly& p : f.c) k += p.str() + "|";
        return k;
    };
    TriMap id{{X(0), X(1), X(2)}};
    std::map<std::string, TriMap> elems{{key(id), id}};
    std::vector<TriMap> frontier{id};
    while (!frontier.empty()) {
        std::vector<TriMap> next;
        for (const TriMap& f : frontier)
            for (const TriMap& g : gens) {
                TriMap h = compose_tri(g, f);
                auto [it, fresh] = elems.emplace(key(h), h);
                if (fresh) {
                    next.push_back(h);
                    if (elems.size() > max_order)
                        throw std::domain_error("TriangularGroup: closure exceeds the bound");
                }
            }
        frontier = std::move(next);
    }
    TriangularGroup out;
    for (auto& kv : elems) out.elements.push_back(kv.second);
    return out;
}

DiagonalizeReport diagonalize_triangular(const TriangularGroup& gamma) {
    if (gamma.elements.empty()) throw std::domain_error("diagonalize_triangular: empty group");
    // phi(f) = diag(a1,a2,a3); the unipotent part is phi(f)^-1 o f
    std::array<Poly, 3> mean{Poly::zero(), Poly::zero(), Poly::zero()};
    std::vector<std::array<Coeff, 3>> diags;
    for (const TriMap& f : gamma.elements) {
        if (!is_triangular(f)) throw std::domain_error("diagonalize_triangular: not triangular");
        std::array<Coeff, 3> a;
        for (int i = 0; i < 3; ++i) {
            Exponent4 xi;
            xi.e[i] = 1;
            a[i] = f.c[i].coeff_of(xi);
        }
        diags.push_back(a);
        for (int i = 0; i < 3; ++i) {
            Poly ui = f.c[i].scale(a[i].inverse()); // component of phi^-1 o f
            mean[i] = mean[i] + (ui - X(i));
        }
    }
    Coeff inv_order(1, (long)gamma.elements.size());
    TriMap m;
    for (int i = 0; i < 3; ++i) m.c[i] = X(i) + mean[i].scale(inv_order);
    // inverse of the unipotent mean by back-substitution
    TriMap minv{{X(0), X(1), X(2)}};
    for (int pass = 0; pass < 4; ++pass) {
        // iterate m^-1 ~ x - (m - x) o m^-1 until fixed (nilpotent, 3 vars)
        TriMap next;
        for (int i = 0; i < 3; ++i)
            next.c[i] = X(i) - (m.c[i] - X(i)).substitute(
                                   {minv.c[0], minv.c[1], minv.c[2], Poly::variable(3)});
        if (next == minv) break;
        minv = next;
    }
    DiagonalizeReport rep;
    rep.conjugator = m;
    rep.verified = true;
    if (!(compose_tri(m, minv) == TriMap{{X(0), X(1), X(2)}})) rep.verified = false;
    for (size_t i = 0; i < gamma.elements.size(); ++i) {
        TriMap conj = compose_tri(compose_tri(m, gamma.elements[i]), minv);
        TriMap want{{X(0).scale(diags[i][0]), X(1).scale(diags[i][1]), X(2).scale(diags[i][2])}};
        if (!(conj == want)) rep.verified = false;
        rep.diagonal_images.push_back(conj);
    }
    return rep;
}

bool resonant_poly(const Poly& r, const Coeff& a, const Coeff& b) {
    if (r.is_zero() || r.raw_degree() == 0) return false;
    for (const auto& t : r.terms()) {
        if (t.m.e[2] || t.m.e[3])
            throw std::domain_error("resonant_poly: R must be a formal two-variable polynomial");
        Coeff val = a.pow((long)t.m.e[0] + 1) * b.pow((long)t.m.e[1] + 1);
        if (!val.is_one()) return false;
    }
    return true;
}

HyperellipticReport gen_hyperelliptic(const Coeff& a, const Coeff& b,
                                      std::optional<HyperellipticForm::Kind> force,
                                      const Poly& elementaryP) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("gen_hyperelliptic: a, b nonzero");
    auto res = resonant(a, b);

    HyperellipticForm::Kind kind;
    if (force) {
        kind = *force;
    } else if (res) {
        kind = HyperellipticForm::Resonant;
    } else {
        kind = HyperellipticForm::ElementaryRoots;
    }

    HyperellipticReport rep;
    rep.kind = kind;

    if (kind == HyperellipticForm::Resonant) {
        if (!res) throw std::domain_error("gen_hyperelliptic: not resonant");
        // normalize the witness to p, q >= 1: replacing f by tau f tau swaps
        // b for b^-1 (flips the sign of q); inverting f flips both signs
        long p = res->p, q = res->q;
        Coeff aa = a, bb = b;
        bool tau_conj = false;
        if ((p > 0) != (q > 0)) {
            bb = bb.inverse();
            q = -q;
            tau_conj = true;
        }
        if (p < 0) {
            aa = aa.inverse();
            bb = bb.inverse();
            p = -p;
            q = -q;
        }
        // P = x^{kq-1} y^{kp-1}, resonant in (b,a), raw degree >= 2
        long k = 1;
        while (k * (p + q) - 2 < 2) ++k;
        Exponent4 m;
        m.e[0] = (uint32_t)(k * q - 1);
        m.e[1] = (uint32_t)(k * p - 1);
        Poly P = Poly::monomial(m, Coeff::one());
        if (!resonant_poly(P, bb, aa))
            throw std::logic_error("gen_hyperelliptic: constructed P is not resonant");
        rep.resonantP = P;

        catalog::HenonParams gp{Coeff(-1), Coeff(-1), P};
        // g~ = sigma g sigma has parameters (-1,-1,-P(y,x))
        Poly Pswap;
        for (const auto& t : P.terms()) {
            Exponent4 sw;
            sw.e[0] = t.m.e[1];
            sw.e[1] = t.m.e[0];
            Pswap = Pswap + Poly::monomial(sw, t.c);
        }
        catalog::HenonParams gtp{Coeff(-1), Coeff(-1), -Pswap};
        TameWord witness = catalog::henon_word({gp, gtp}); // g~ o g
        // conjugate the witness back by tau when f was replaced by tau f tau
        if (tau_conj) {
            TameWord conj;
            conj.factors.push_back(mat_tau());
            conj.factors.insert(conj.factors.end(), witness.factors.begin(),
                                witness.factors.end());
            conj.factors.push_back(mat_tau());
            witness = conj;
        }
        rep.witness = witness;
        // f = (a x1, b^-1 x2, b x3, a^-1 x4)
        rep.f = TameAuto::from_mat(catalog::diag_auto(a, b));
        TameAuto w = evaluate_word(witness);
        rep.commutation_verified = compose(rep.f, w) == compose(w, rep.f);
        if (!rep.commutation_verified)
            throw std::logic_error("gen_hyperelliptic: commutation identity failed");
        return rep;
    }

    // elementary form: a, b roots of unity of the same order
    auto order_of = [](const Coeff& c) -> int {
        Coeff acc = Coeff::one();
        for (int k = 1; k <= 4; ++k) {
            acc *= c;
            if (acc.is_one()) return k;
        }
        return 0;
    };
    int oa = order_of(a), ob = order_of(b);
    if (oa == 0 || ob == 0 || oa != ob)
        throw std::domain_error(
            "gen_hyperelliptic: elementary form needs roots of unity of equal order in Q(i)");
    auto power_match = [&](const Coeff& base, const Coeff& target) {
        for (long m = 2; m <= 2 + 4; ++m)
            if (base.pow(m) == target) return m;
        throw std::domain_error("gen_hyperelliptic: no exponent match");
    };
    long m = power_match(a, b), n = power_match(b, a);
    Poly P = elementaryP.is_zero() ? Poly::monomial(Exponent4{{1, 1, 0, 0}}, Coeff::one())
                                   : elementaryP;
    rep.resonantP = P;
    // f = (a^-1 x1, b x2 + b x1 P(x1,x3), b^-1 x3, a x4 + a x3 P(x1,x3))
    Poly p13 = P.substitute({X(0), X(2), Poly::zero(), Poly::zero()});
    rep.f = TameAuto{{X(0).scale(a.inverse()), (X(1) + X(0) * p13).scale(b),
                      X(2).scale(b.inverse()), (X(3) + X(2) * p13).scale(a)}};
    if (!rep.f.quadric_holds()) throw std::logic_error("gen_hyperelliptic: bad elementary form");
    // witness g1 o g2 with g_k = (x3, -x4, x1 + x3^k, -x2 - x4 x3^{k-1});
    // each g_k factors as (x3, -x4, x1, -x2) o E12(x3^{k-1})
    Mat4 lam = Mat4::from_rows({X(2), -X(3), X(0), -X(1)});
    if (is_orthogonal(lam) == OrthVerdict::No)
        throw std::logic_error("gen_hyperelliptic: witness linear part not orthogonal");
    auto gk_factors = [&](long kk, TameWord& w) {
        w.factors.push_back(lam);
        Exponent4 mm;
        mm.e[0] = (uint32_t)(kk - 1);
        w.factors.push_back(ElementaryAuto{ElementaryFamily::E12,
                                           Poly::monomial(mm, Coeff::one())});
    };
    TameWord witness;
    gk_factors(m, witness); // g1 first in composition order: g1 o g2
    gk_factors(n, witness);
    {
        TameAuto g1{{X(2), -X(3), X(0) + X(2).pow((uint64_t)m),
                     -X(1) - X(3) * X(2).pow((uint64_t)(m - 1))}};
        TameAuto g2{{X(2), -X(3), X(0) + X(2).pow((uint64_t)n),
                     -X(1) - X(3) * X(2).pow((uint64_t)(n - 1))}};
        if (!(evaluate_word(witness) == compose(g1, g2)))
            throw std::logic_error("gen_hyperelliptic: witness word mismatch");
    }
    rep.witness = witness;
    // the printed Aut(A^2) identity: (x3, x1+x3^m) o (x3, x1+x3^n) commutes
    // with (a^-1 x1, b^-1 x3)
    auto compose2 = [&](const std::array<Poly, 2>& f2, const std::array<Poly, 2>& g2v) {
        std::array<Poly, 4> sub{g2v[0], X(1), g2v[1], X(3)};
        return std::array<Poly, 2>{f2[0].substitute(sub), f2[1].substitute(sub)};
    };
    std::array<Poly, 2> hm{X(2), X(0) + X(2).pow((uint64_t)m)};
    std::array<Poly, 2> hn{X(2), X(0) + X(2).pow((uint64_t)n)};
    std::array<Poly, 2> dmap{X(0).scale(a.inverse()), X(2).scale(b.inverse())};
    auto lhs = compose2(compose2(hm, hn), dmap);
    auto rhs = compose2(dmap, compose2(hm, hn));
    rep.commutation_verified = lhs[0] == rhs[0] && lhs[1] == rhs[1];
    if (!rep.commutation_verified)
        throw std::logic_error("gen_hyperelliptic: A2 commutation identity failed");
    return rep;
}

ParabolicReport gen_parabolic(int n) {
    if (n < 0 || n > 6) throw std::domain_error("gen_parabolic: level out of range");
    ParabolicReport rep;
    rep.level = n;

    auto pk = [](int k) {
        // P_k(x,y) = (xy)^{2^k - 1}
        uint32_t e = (uint32_t)((1u << k) - 1);
        return Poly::monomial(Exponent4{{e, e, 0, 0}}, Coeff::one());
    };

    // phi_n = g~_n o g_n o ... o g~_1 o g_1
    std::vector<catalog::HenonParams> params;
    for (int k = 1; k <= n; ++k) {
        params.push_back({Coeff(-1), Coeff(-1), pk(k)});
        params.push_back({Coeff(-1), Coeff(-1), -pk(k)}); // g~_k (P_k symmetric)
    }
    rep.phi = catalog::henon_word(params);

    // sample of H_n: (a,b) with (ab)^{2^n} = 1; roots available in Q(i)
    std::vector<Coeff> roots{Coeff(1)};
    if (n >= 1) roots.push_back(Coeff(-1));
    if (n >= 2) roots.push_back(Coeff::i());
    std::vector<std::pair<Coeff, Coeff>> sample;
    for (const Coeff& w : roots) {
        sample.emplace_back(Coeff(2), w * Coeff(1, 2));
        sample.emplace_back(w, Coeff(1));
    }
    TameWord phi_inv = invert_word(rep.phi);
    for (auto& [a, b] : sample) {
        TameWord gen;
        gen.factors = phi_inv.factors;
        gen.factors.push_back(catalog::diag_auto(a, b));
        gen.factors.insert(gen.factors.end(), rep.phi.factors.begin(), rep.phi.factors.end());
        rep.generators.push_back(std::move(gen));
    }

    // h in H_j commutes with g~_k o g_k for j < k <= n+1
    for (int j = 0; j <= n; ++j) {
        int k = j + 1;
        TameAuto gk_pair = evaluate_word(
            catalog::henon_word({{Coeff(-1), Coeff(-1), pk(k)}, {Coeff(-1), Coeff(-1), -pk(k)}}));
        // sampled h: ab a primitive 2^j-th root available in Q(i)
        Coeff ab = j == 0 ? Coeff(1) : (j == 1 ? Coeff(-1) : Coeff::i());
        if (j > 2) break; // roots beyond i are outside Q(i)
        TameAuto h = TameAuto::from_mat(catalog::diag_auto(Coeff(2), ab * Coeff(1, 2)));
        rep.commutation_checks.push_back(compose(h, gk_pair) == compose(gk_pair, h));
    }
    return rep;
}

} // namespace tamesl2

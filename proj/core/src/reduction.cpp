#include "tamesl2/tame.hpp"

#include "linalg.hpp"

#include <map>
#include <stdexcept>

namespace tamesl2 {

namespace {

// (a,b) >= 0 with (a+1)*du + b*dv == dr, componentwise over N^4
std::vector<std::pair<long, long>> single_layer_support(const WeightVec& du, const WeightVec& dv,
                                                        const WeightVec& dr) {
    std::vector<std::pair<long, long>> out;
    if (du.sum() <= 0) return out;
    for (long b = 0;; ++b) {
        int64_t need = dr.sum() - du.sum() - b * dv.sum();
        if (need < 0) break;
        WeightVec target = dr - du - dv.scaled(b);
        bool neg = false;
        for (int k = 0; k < 4; ++k)
            if (target.w[k] < 0) neg = true;
        if (!neg) {
            long a = -1;
            if (target.sum() == 0) {
                a = 0;
            } else if (target.sum() % du.sum() == 0) {
                a = (long)(target.sum() / du.sum());
            }
            if (a >= 0 && du.scaled(a) == target) out.emplace_back(a, b);
        }
        if (dv.sum() <= 0) break;
    }
    return out;
}

// (a,b) >= 0 whose generic degree (a+1)*du + b*dv lies in [dr, hi] for the
// graded-lex order
std::vector<std::pair<long, long>> window_support(const WeightVec& du, const WeightVec& dv,
                                                  const WeightVec& dr, const WeightVec& hi,
                                                  int cap, bool* capped) {
    std::vector<std::pair<long, long>> out;
    *capped = false;
    if (du.sum() <= 0) return out;
    for (long b = 0;; ++b) {
        if (du.sum() + b * dv.sum() > hi.sum()) break;
        for (long a = 0;; ++a) {
            WeightVec w = du.scaled(a + 1) + dv.scaled(b);
            if (w.sum() > hi.sum()) break;
            if (w >= dr && w <= hi) {
                out.emplace_back(a, b);
                if ((int)out.size() > cap) {
                    *capped = true;
                    return out;
                }
            }
        }
        if (dv.sum() <= 0) break;
    }
    return out;
}

// Part of p with weighted degree >= cut.
Poly high_part(const Poly& p, const WeightVec& cut) {
    std::vector<Poly::Term> keep;
    for (const auto& t : p.terms())
        if (WeightVec::of_monomial(t.m) >= cut) keep.push_back(t);
    return Poly::from_sorted_terms(std::move(keep));
}

struct ExpLess {
    bool operator()(const Exponent4& a, const Exponent4& b) const {
        return Exponent4::cmp(a, b) < 0;
    }
};

// Solve sum_j c_j * cols[j] == -target exactly over the union monomial
// support; candidates are the particular solution plus nullspace shifts.
std::vector<std::vector<Coeff>> solve_cancellation(const std::vector<Poly>& cols,
                                                   const Poly& target) {
    std::map<Exponent4, size_t, ExpLess> rowidx;
    auto touch = [&](const Poly& p) {
        for (const auto& t : p.terms()) rowidx.emplace(t.m, 0);
    };
    for (const Poly& c : cols) touch(c);
    touch(target);
    size_t nr = 0;
    for (auto& kv : rowidx) kv.second = nr++;
    linalg::Matrix A(nr, std::vector<Coeff>(cols.size(), Coeff::zero()));
    std::vector<Coeff> rhs(nr, Coeff::zero());
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& t : cols[j].terms()) A[rowidx[t.m]][j] = t.c;
    for (const auto& t : target.terms()) rhs[rowidx[t.m]] = -t.c;
    auto part = linalg::solve(A, rhs);
    if (!part) return {};
    std::vector<std::vector<Coeff>> cands{*part};
    for (const auto& n : linalg::nullspace(A)) {
        std::vector<Coeff> v = *part;
        for (size_t j = 0; j < v.size(); ++j) v[j] += n[j];
        cands.push_back(std::move(v));
        if (cands.size() >= 5) break;
    }
    return cands;
}

Poly poly2_from_support(const std::vector<std::pair<long, long>>& supp,
                        const std::vector<Coeff>& coeffs) {
    Poly p;
    for (size_t j = 0; j < supp.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        Exponent4 m;
        m.e[0] = (uint32_t)supp[j].first;
        m.e[1] = (uint32_t)supp[j].second;
        p = p + Poly::monomial(m, coeffs[j]);
    }
    return p;
}

struct PowCache {
    std::vector<Poly> pows{Poly::constant(Coeff::one())};
    Poly base;
    explicit PowCache(Poly b) : base(std::move(b)) {}
    const Poly& operator()(long e) {
        while ((long)pows.size() <= e) pows.push_back(pows.back() * base);
        return pows[e];
    }
};

// Terms of p whose weight can still contribute to a product reaching `cut`
// when the other factors contribute at most `slack`.
Poly reachable_part(const Poly& p, const WeightVec& cut, const WeightVec& slack) {
    WeightVec bound = cut - slack;
    if (bound.sum() <= 0) return p;
    return high_part(p, bound);
}

// Searches P over the untouched pair (u,v) of `fam` applied to fnorm, such
// that the whole (already pre-normalized) automorphism strictly drops below
// deg_before. Fills the per-candidate report fields. With diagnose=false the
// dependent case runs one bounded window solve and skips the parachute
// bookkeeping; with diagnose=true it runs the per-multiplicity loop with the
// parachute prune, so definitive_none is meaningful.
enum class SolvePhase { SingleLayer, MultiLayer, Both };

std::optional<ElementaryAuto> solve_over_pair(const TameAuto& fnorm, ElementaryFamily fam,
                                              const WeightVec& deg_before,
                                              const ReductionBudget& budget,
                                              CandidateReport& rep, bool diagnose,
                                              SolvePhase phase = SolvePhase::Both) {
    FamilyShape sh = family_shape(fam);
    const Poly& r = fnorm.c[sh.r];
    const Poly& u = fnorm.c[sh.u];
    const Poly& v = fnorm.c[sh.v];
    if (r.is_zero() || u.is_zero() || v.is_zero()) {
        rep.definitive_none = true;
        return std::nullopt;
    }
    WeightVec dr = r.wdeg(), du = u.wdeg(), dv = v.wdeg();
    rep.deg_r = dr;
    rep.deg_u = du;
    rep.deg_v = dv;

    auto accept = [&](const std::vector<std::pair<long, long>>& supp,
                      const std::vector<std::vector<Coeff>>& cands)
        -> std::optional<ElementaryAuto> {
        for (const auto& c : cands) {
            Poly P = poly2_from_support(supp, c);
            if (P.is_zero()) continue;
            ElementaryAuto e{fam, P};
            if (compose_elementary(e, fnorm).degree() < deg_before) return e;
        }
        return std::nullopt;
    };

    Poly hom_r = r.leading_part(), hom_u = u.leading_part(), hom_v = v.leading_part();

    if (phase != SolvePhase::MultiLayer) {
        rep.single_layer_support = single_layer_support(du, dv, dr);
        if (!rep.single_layer_support.empty()) {
            PowCache up(hom_u), vp(hom_v);
            std::vector<Poly> cols;
            cols.reserve(rep.single_layer_support.size());
            for (auto [a, b] : rep.single_layer_support) cols.push_back(up(a + 1) * vp(b));
            auto cands = solve_cancellation(cols, hom_r);
            if (!cands.empty()) {
                if (auto e = accept(rep.single_layer_support, cands)) {
                    rep.single_solvable = true;
                    return e;
                }
            }
        }
    }

    std::optional<DependenceWitness> dep = rep.witness;
    if (phase != SolvePhase::MultiLayer) {
        dep = hom_dependence(hom_u, hom_v);
        rep.dependent = dep.has_value();
        rep.witness = dep;
    }
    if (!dep) {
        // independent leading parts: any reducing P must solve the
        // single-layer system, which just failed
        rep.definitive_none = true;
        return std::nullopt;
    }
    if (phase == SolvePhase::SingleLayer) return std::nullopt;

    WeightVec gap = du.scaled(dep->s1);

    // column for the multi-layer system: terms of u^{a+1} v^b of weight >= dr,
    // with per-factor reachability filters applied before multiplying
    auto build_col = [&](long a, long b) {
        Poly uf = reachable_part(u, dr, du.scaled(a) + dv.scaled(b));
        Poly vf = b == 0 ? Poly::constant(Coeff::one())
                         : reachable_part(v, dr, du.scaled(a + 1) + dv.scaled(b - 1));
        Poly prod = Poly::constant(Coeff::one());
        for (long i = 0; i <= a; ++i) {
            prod = prod * uf;
            WeightVec slack = du.scaled(a - i) + dv.scaled(b);
            prod = reachable_part(prod, dr, slack);
        }
        for (long i = 0; i < b; ++i) {
            prod = prod * vf;
            prod = reachable_part(prod, dr, dv.scaled(b - 1 - i));
        }
        return high_part(prod, dr);
    };

    // solves the window at multiplicity n; on a support-cap hit the
    // truncated system is still attempted (a sub-support solution is valid)
    auto run_window = [&](int n) -> std::optional<ElementaryAuto> {
        bool capped = false;
        auto supp = window_support(du, dv, dr, dr + gap.scaled(n), budget.support_cap, &capped);
        if (capped) {
            rep.support_capped = true;
            rep.budget_exhausted = true;
        }
        if (supp.empty()) return std::nullopt;
        std::vector<Poly> cols;
        cols.reserve(supp.size());
        for (auto [a, b] : supp) cols.push_back(build_col(a, b));
        auto cands = solve_cancellation(cols, high_part(r, dr));
        if (cands.empty()) return std::nullopt;
        return accept(supp, cands);
    };

    std::optional<GenericDegreeData> gdd;
    if (diagnose) {
        try {
            gdd = parachute(u, v);
        } catch (const ParachuteError&) {
            rep.budget_exhausted = true;
            return std::nullopt;
        }
    }
    bool pruned = false;
    for (int n = 1; n <= budget.multi_depth; ++n) {
        if (gdd) {
            WeightVec ln = (gap - gdd->nabla).scaled(n); // n*(s1*d_u - nabla), in Z^4
            if (!(ln < dr)) {
                // necessary bound d_u*n*s1 - n*nabla < deg(uP) fails here and,
                // monotonically, for every larger multiplicity
                rep.pruned_from = n;
                pruned = true;
                break;
            }
        }
        if (auto e = run_window(n)) return e;
        if (rep.support_capped) break;
    }
    if (diagnose && pruned && !rep.support_capped)
        rep.definitive_none = true;
    else
        rep.budget_exhausted = true;
    return std::nullopt;
}

using Row4 = std::array<Coeff, 4>;

Poly form_of_row(const Row4& r) {
    Poly p;
    for (int v = 0; v < 4; ++v)
        if (!r[v].is_zero()) p = p + Poly::variable(v).scale(r[v]);
    return p;
}

// <.,.> on coefficient rows: 1/2(u1 v4 + u4 v1) - 1/2(u2 v3 + u3 v2)
Coeff pair_rows(const Row4& a, const Row4& b) {
    Coeff half(1, 2);
    return half * (a[0] * b[3] + a[3] * b[0]) - half * (a[1] * b[2] + a[2] * b[1]);
}

// Totally isotropic 2-planes inside the span of `basis` (dim <= 3), over the
// exact field. Sets *complete = false when a conic root is missing.
std::vector<std::array<Poly, 2>> isotropic_planes_in(const std::vector<Row4>& basis,
                                                     bool* complete) {
    *complete = true;
    std::vector<std::array<Poly, 2>> out;
    size_t d = basis.size();
    if (d < 2) return out;
    auto gram = [&](size_t i, size_t j) { return pair_rows(basis[i], basis[j]); };
    if (d == 2) {
        if (gram(0, 0).is_zero() && gram(0, 1).is_zero() && gram(1, 1).is_zero())
            out.push_back({form_of_row(basis[0]), form_of_row(basis[1])});
        return out;
    }
    // d == 3: split by the rank of the restricted form
    linalg::Matrix G(3, std::vector<Coeff>(3));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) G[i][j] = gram(i, j);
    auto rad = linalg::nullspace(G); // coordinates w.r.t. basis
    size_t rank = 3 - rad.size();
    auto combine = [&](const std::vector<Coeff>& coords) {
        Row4 r{Coeff::zero(), Coeff::zero(), Coeff::zero(), Coeff::zero()};
        for (size_t i = 0; i < 3; ++i)
            for (int k = 0; k < 4; ++k) r[k] += coords[i] * basis[i][k];
        return r;
    };
    if (rank == 0) return out; // cannot happen: ambient Witt index is 2
    if (rank == 1) {
        // the radical is the unique totally isotropic plane
        out.push_back({form_of_row(combine(rad[0])), form_of_row(combine(rad[1]))});
        return out;
    }
    if (rank == 3) return out; // nondegenerate 3-space has no isotropic plane
    // rank 2: planes are radical + an isotropic direction of the quotient
    Row4 z0 = combine(rad[0]);
    // complement basis of the radical inside the 3-space
    std::vector<std::vector<Coeff>> pq;
    {
        linalg::Matrix stack{rad[0]};
        for (size_t i = 0; i < 3 && pq.size() < 2; ++i) {
            std::vector<Coeff> cand(3, Coeff::zero());
            cand[i] = Coeff::one();
            linalg::Matrix test = stack;
            test.push_back(cand);
            if (linalg::rank(test) == test.size()) {
                stack.push_back(cand);
                pq.push_back(cand);
            }
        }
    }
    auto quad = [&](const std::vector<Coeff>& x, const std::vector<Coeff>& y) {
        Coeff s = Coeff::zero();
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) s += x[i] * G[i][j] * y[j];
        return s;
    };
    Coeff A = quad(pq[0], pq[0]), B = quad(pq[0], pq[1]), C = quad(pq[1], pq[1]);
    std::vector<std::pair<Coeff, Coeff>> dirs; // (s,t): s*p + t*q isotropic
    if (A.is_zero()) {
        dirs.emplace_back(Coeff::one(), Coeff::zero());
        if (!B.is_zero()) dirs.emplace_back(C, Coeff(-2) * B);
    } else {
        Coeff disc = B * B - A * C;
        if (auto root = coeff_sqrt(disc)) {
            dirs.emplace_back(-B + *root, A);
            if (!root->is_zero()) dirs.emplace_back(-B - *root, A);
        } else {
            *complete = false;
        }
    }
    for (auto& [s, t] : dirs) {
        std::vector<Coeff> coords(3, Coeff::zero());
        for (size_t i = 0; i < 3; ++i) coords[i] = s * pq[0][i] + t * pq[1][i];
        Row4 dir = combine(coords);
        out.push_back({form_of_row(z0), form_of_row(dir)});
    }
    return out;
}

const std::array<Poly, 2> standard_plane(ElementaryFamily fam) {
    FamilyShape sh = family_shape(fam);
    return {Poly::variable(sh.u), Poly::variable(sh.v)};
}

} // namespace

std::optional<GeneralizedElementary> find_elementary_reduction(const TameAuto& f,
                                                               const ReductionBudget& budget,
                                                               NoReductionReport* diag) {
    static const ElementaryFamily priority[4] = {ElementaryFamily::E24, ElementaryFamily::E13,
                                                 ElementaryFamily::E12, ElementaryFamily::E34};
    NoReductionReport rep;
    WeightVec T = f.degree();
    std::optional<GeneralizedElementary> found;

    // top-degree parts and the degree-drop kernel K = {w : sum w_j H_j = 0}
    std::array<Poly, 4> tops;
    for (int i = 0; i < 4; ++i)
        if (!f.c[i].is_zero() && f.c[i].wdeg() == T) tops[i] = f.c[i].leading_part();
    std::map<Exponent4, size_t, ExpLess> rowidx;
    for (const Poly& h : tops)
        for (const auto& t : h.terms()) rowidx.emplace(t.m, 0);
    size_t nr = 0;
    for (auto& kv : rowidx) kv.second = nr++;
    linalg::Matrix A(nr, std::vector<Coeff>(4, Coeff::zero()));
    for (int j = 0; j < 4; ++j)
        for (const auto& t : tops[j].terms()) A[rowidx[t.m]][j] = t.c;
    std::vector<Row4> kernel;
    for (const auto& n : linalg::nullspace(A)) kernel.push_back(Row4{n[0], n[1], n[2], n[3]});
    rep.kernel_dim = (int)kernel.size();

    // candidate list: plain families first (priority order), then the extra
    // isotropic planes inside K
    struct Candidate {
        ElementaryFamily solve_family;
        Mat4 pre;
        TameAuto fnorm;
        CandidateReport cr;
        bool blocked = false;
    };
    std::vector<Candidate> cands;
    for (ElementaryFamily fam : priority) {
        FamilyShape sh = family_shape(fam);
        Candidate c{fam, Mat4::identity(), f, CandidateReport{}, false};
        c.cr.family = fam;
        c.cr.plane = standard_plane(fam);
        if (!tops[sh.u].is_zero() || !tops[sh.v].is_zero()) {
            // an untouched component keeps degree T: no P can lower degmax
            c.blocked = true;
            c.cr.blocked_by_untouched = true;
            c.cr.definitive_none = true;
            c.cr.deg_r = f.c[sh.r].wdeg();
            c.cr.deg_u = f.c[sh.u].wdeg();
            c.cr.deg_v = f.c[sh.v].wdeg();
            c.cr.single_layer_support = single_layer_support(c.cr.deg_u, c.cr.deg_v, c.cr.deg_r);
        }
        cands.push_back(std::move(c));
    }
    {
        bool complete = true;
        auto planes = isotropic_planes_in(kernel, &complete);
        rep.planes_complete = complete;
        for (const auto& plane : planes) {
            // skip duplicates of the four standard planes
            bool standard = false;
            try {
                IsotropicPlane p(plane[0], plane[1]);
                for (ElementaryFamily fam : priority) {
                    auto sp = standard_plane(fam);
                    if (p == IsotropicPlane(sp[0], sp[1])) standard = true;
                }
            } catch (const std::domain_error&) {
                continue; // degenerate candidate
            }
            if (standard) continue;
            // Witt completion with rows (1,3) spanning the plane: take the
            // extension with rows (1,2) and swap rows 2,3.
            Mat4 n = extend_isotropic_pair(plane[0], plane[1]);
            Mat4 pre =
                Mat4::from_rows({n.row_form(0), n.row_form(2), n.row_form(1), n.row_form(3)});
            if (is_orthogonal(pre) == OrthVerdict::No)
                throw std::logic_error("find_elementary_reduction: bad plane normalizer");
            Candidate c{ElementaryFamily::E24, pre, compose_linear(pre, f), CandidateReport{},
                        false};
            c.cr.plane = plane;
            cands.push_back(std::move(c));
        }
    }

    // pass 1: cheap single-layer solves over every candidate
    for (Candidate& c : cands) {
        if (c.blocked) continue;
        if (auto e = solve_over_pair(c.fnorm, c.solve_family, T, budget, c.cr, diag != nullptr,
                                     SolvePhase::SingleLayer)) {
            found = GeneralizedElementary{c.pre, *e};
            break;
        }
    }
    // pass 2: bounded multi-layer windows on the dependent candidates
    if (!found) {
        for (Candidate& c : cands) {
            if (c.blocked || !c.cr.dependent) continue;
            if (auto e = solve_over_pair(c.fnorm, c.solve_family, T, budget, c.cr,
                                         diag != nullptr, SolvePhase::MultiLayer)) {
                found = GeneralizedElementary{c.pre, *e};
                break;
            }
        }
    }

    for (Candidate& c : cands) rep.candidates.push_back(std::move(c.cr));
    if (!found) {
        rep.definitive = rep.planes_complete;
        for (const auto& c : rep.candidates) rep.definitive = rep.definitive && c.definitive_none;
    }
    if (diag) *diag = std::move(rep);
    return found;
}

ReductionTrace reduce(const TameAuto& f, const ReductionBudget& budget) {
    if (!f.quadric_holds()) throw std::domain_error("reduce: quadric invariant violated");
    ReductionTrace trace;
    trace.start = f;
    TameAuto cur = f;
    for (int step = 0; step < 100000; ++step) {
        if (cur.is_linear()) {
            Mat4 m = cur.linear_matrix();
            OrthVerdict v = is_orthogonal(m);
            if (v != OrthVerdict::No) {
                trace.linear_terminal = true;
                trace.terminal = m;
                trace.terminal_verdict = v;
                return trace;
            }
        }
        auto mv = find_elementary_reduction(cur, budget, nullptr);
        if (!mv) {
            // rerun with full diagnostics (parachute prune, definitiveness)
            NoReductionReport diag;
            find_elementary_reduction(cur, budget, &diag);
            trace.failure = std::move(diag);
            return trace;
        }
        cur = compose_elementary(mv->e, compose_linear(mv->pre, cur));
        trace.steps.push_back({*mv, cur.degree()});
    }
    throw std::runtime_error("reduce: step limit exceeded");
}

TameWord word_from_trace(const ReductionTrace& t) {
    if (!t.linear_terminal) throw std::domain_error("word_from_trace: trace did not reach O4");
    TameWord w;
    Mat4 id = Mat4::identity();
    for (const ReductionStep& s : t.steps) {
        if (!(s.move.pre == id)) w.factors.push_back(s.move.pre.inverse());
        w.factors.push_back(s.move.e.inverse());
    }
    w.factors.push_back(t.terminal);
    return w;
}

TameVerdict is_tame(const std::array<Poly, 4>& quadruple, const ReductionBudget& budget) {
    TameVerdict out;
    TameAuto f{quadruple};
    if (!f.quadric_holds()) {
        out.kind = TameVerdictKind::NotAutomorphismOfQuadric;
        return out;
    }
    out.trace = reduce(f, budget);
    if (out.trace.linear_terminal) {
        out.word = word_from_trace(out.trace);
        if (!(evaluate_word(out.word) == f))
            throw std::logic_error("is_tame: certificate failed re-evaluation");
        out.kind = TameVerdictKind::Tame;
        out.definitive = true;
    } else {
        out.kind = TameVerdictKind::NotTameWithinBudget;
        out.definitive = out.trace.failure && out.trace.failure->definitive;
    }
    return out;
}

} // namespace tamesl2

#include "tamesl2/complex.hpp"

#include "linalg.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tamesl2 {

namespace {

std::string poly_key(const Poly& p) {
    std::string k;
    for (const auto& t : p.terms()) {
        for (int v = 0; v < 4; ++v) {
            k += std::to_string(t.m.e[v]);
            k += ',';
        }
        k += t.c.str();
        k += ';';
    }
    return k;
}

} // namespace

std::vector<Poly> span_echelon(std::vector<Poly> polys) {
    std::vector<Poly> rows;
    for (Poly& p : polys)
        if (!p.is_zero()) rows.push_back(std::move(p));
    std::vector<Poly> echelon;
    while (!rows.empty()) {
        // pick the row with the largest leading monomial
        size_t best = 0;
        for (size_t i = 1; i < rows.size(); ++i)
            if (Exponent4::cmp(rows[i].division_leading_term().m,
                               rows[best].division_leading_term().m) > 0)
                best = i;
        Poly pivot = rows[best].scale(rows[best].division_leading_term().c.inverse());
        rows.erase(rows.begin() + best);
        Exponent4 lead = pivot.division_leading_term().m;
        for (Poly& r : rows) {
            Coeff c = r.coeff_of(lead);
            if (!c.is_zero()) r = r - pivot.scale(c);
        }
        std::vector<Poly> keep;
        for (Poly& r : rows)
            if (!r.is_zero()) keep.push_back(std::move(r));
        rows = std::move(keep);
        echelon.push_back(std::move(pivot));
    }
    // back-substitution for the reduced form
    for (size_t i = 0; i + 1 < echelon.size(); ++i)
        for (size_t j = i + 1; j < echelon.size(); ++j) {
            Coeff c = echelon[i].coeff_of(echelon[j].division_leading_term().m);
            if (!c.is_zero()) echelon[i] = echelon[i] - echelon[j].scale(c);
        }
    return echelon;
}

VertexT1 canonical_t1(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("canonical_t1: zero component");
    return VertexT1{p.scale(p.division_leading_term().c.inverse())};
}

VertexT2 canonical_t2(const Poly& p1, const Poly& p2) {
    std::vector<Poly> rows = span_echelon({p1, p2});
    if (rows.size() != 2) throw std::domain_error("canonical_t2: dependent or zero pair");
    return VertexT2{rows[0], rows[1]};
}

bool vertex_eq_t3(const TameAuto& f, const TameAuto& g) {
    if (f.degree() != g.degree()) return false;
    // solve g_i = sum_j M[i][j] f_j over the union monomial support
    std::map<std::string, size_t> probe; // deterministic row ordering not needed here
    std::vector<Exponent4> monos;
    {
        std::set<std::string> seen;
        auto touch = [&](const Poly& p) {
            for (const auto& t : p.terms()) {
                std::string k;
                for (int v = 0; v < 4; ++v) k += std::to_string(t.m.e[v]) + ",";
                if (seen.insert(k).second) monos.push_back(t.m);
            }
        };
        for (int i = 0; i < 4; ++i) {
            touch(f.c[i]);
            touch(g.c[i]);
        }
    }
    linalg::Matrix A(monos.size(), std::vector<Coeff>(4, Coeff::zero()));
    for (size_t r = 0; r < monos.size(); ++r)
        for (int j = 0; j < 4; ++j) A[r][j] = f.c[j].coeff_of(monos[r]);
    Mat4 m = Mat4::zero();
    for (int i = 0; i < 4; ++i) {
        std::vector<Coeff> rhs(monos.size(), Coeff::zero());
        for (size_t r = 0; r < monos.size(); ++r) rhs[r] = g.c[i].coeff_of(monos[r]);
        auto sol = linalg::solve(A, rhs);
        if (!sol) return false;
        for (int j = 0; j < 4; ++j) m.m[i][j] = (*sol)[j];
        // the solve is least-structured: verify the combination exactly
        Poly comb;
        for (int j = 0; j < 4; ++j) comb = comb + f.c[j].scale(m.m[i][j]);
        if (!(comb == g.c[i])) return false;
    }
    return is_orthogonal(m) != OrthVerdict::No;
}

Vertex act(const TameWord& w, const Vertex& v) {
    TameAuto ginv = evaluate_word(invert_word(w));
    if (std::holds_alternative<VertexT1>(v))
        return canonical_t1(std::get<VertexT1>(v).rep.substitute(ginv.c));
    if (std::holds_alternative<VertexT2>(v)) {
        const VertexT2& p = std::get<VertexT2>(v);
        return canonical_t2(p.b0.substitute(ginv.c), p.b1.substitute(ginv.c));
    }
    const TameAuto& f = std::get<VertexT3>(v).rep;
    TameAuto img;
    for (int i = 0; i < 4; ++i) img.c[i] = f.c[i].substitute(ginv.c);
    return VertexT3{img};
}

int SubComplex::add_vertex(const Vertex& v) {
    adjacency_dirty_ = true;
    if (std::holds_alternative<VertexT1>(v)) {
        const VertexT1& t = std::get<VertexT1>(v);
        std::string k = poly_key(t.rep);
        auto it = t1_index_.find(k);
        if (it != t1_index_.end()) return make_id(1, it->second);
        t1_.push_back(t);
        t1_index_[k] = (int)t1_.size() - 1;
        return make_id(1, (int)t1_.size() - 1);
    }
    if (std::holds_alternative<VertexT2>(v)) {
        const VertexT2& t = std::get<VertexT2>(v);
        std::string k = poly_key(t.b0) + "|" + poly_key(t.b1);
        auto it = t2_index_.find(k);
        if (it != t2_index_.end()) return make_id(2, it->second);
        t2_.push_back(t);
        t2_horizontal_.push_back(std::nullopt);
        t2_index_[k] = (int)t2_.size() - 1;
        return make_id(2, (int)t2_.size() - 1);
    }
    const VertexT3& t = std::get<VertexT3>(v);
    // bucket by the O4-invariant echelon span of the components
    std::vector<Poly> sp = span_echelon({t.rep.c[0], t.rep.c[1], t.rep.c[2], t.rep.c[3]});
    std::string k;
    for (const Poly& p : sp) k += poly_key(p) + "|";
    auto& bucket = t3_buckets_[k];
    for (int idx : bucket)
        if (vertex_eq_t3(t3_[idx].rep, t.rep)) return make_id(3, idx);
    t3_.push_back(t);
    bucket.push_back((int)t3_.size() - 1);
    return make_id(3, (int)t3_.size() - 1);
}

std::optional<int> SubComplex::find_vertex(const Vertex& v) const {
    if (std::holds_alternative<VertexT1>(v)) {
        auto it = t1_index_.find(poly_key(std::get<VertexT1>(v).rep));
        if (it == t1_index_.end()) return std::nullopt;
        return make_id(1, it->second);
    }
    if (std::holds_alternative<VertexT2>(v)) {
        const VertexT2& t = std::get<VertexT2>(v);
        auto it = t2_index_.find(poly_key(t.b0) + "|" + poly_key(t.b1));
        if (it == t2_index_.end()) return std::nullopt;
        return make_id(2, it->second);
    }
    const VertexT3& t = std::get<VertexT3>(v);
    std::vector<Poly> sp = span_echelon({t.rep.c[0], t.rep.c[1], t.rep.c[2], t.rep.c[3]});
    std::string k;
    for (const Poly& p : sp) k += poly_key(p) + "|";
    auto it = t3_buckets_.find(k);
    if (it == t3_buckets_.end()) return std::nullopt;
    for (int idx : it->second)
        if (vertex_eq_t3(t3_[idx].rep, t.rep)) return make_id(3, idx);
    return std::nullopt;
}

void SubComplex::add_edge(int a, int b) {
    adjacency_dirty_ = true;
    edges_.insert({std::min(a, b), std::max(a, b)});
}

void SubComplex::add_square(int v1, int v2a, int v3, int v2b) {
    add_edge(v1, v2a);
    add_edge(v1, v2b);
    add_edge(v3, v2a);
    add_edge(v3, v2b);
    squares_.insert({v1, std::min(v2a, v2b), v3, std::max(v2a, v2b)});
}

void SubComplex::set_orientation(int t2_idx, bool horizontal) {
    auto& slot = t2_horizontal_[t2_idx];
    if (slot.has_value() && *slot != horizontal) orientation_conflict_ = true;
    slot = horizontal;
}

void SubComplex::insert_big_square(const TameAuto& f, int det_sign) {
    int a1 = add_vertex(canonical_t1(f.c[0]));
    int a2 = add_vertex(canonical_t1(f.c[1]));
    int a3 = add_vertex(canonical_t1(f.c[2]));
    int a4 = add_vertex(canonical_t1(f.c[3]));
    int b12 = add_vertex(canonical_t2(f.c[0], f.c[1]));
    int b13 = add_vertex(canonical_t2(f.c[0], f.c[2]));
    int b24 = add_vertex(canonical_t2(f.c[1], f.c[3]));
    int b34 = add_vertex(canonical_t2(f.c[2], f.c[3]));
    int c = add_vertex(VertexT3{f});
    add_square(a1, b12, c, b13);
    add_square(a2, b12, c, b24);
    add_square(a3, b13, c, b34);
    add_square(a4, b24, c, b34);
    if (det_sign != 0) {
        bool pos = det_sign > 0;
        // [f1,f2], [f3,f4] are in the STame-orbit of the horizontal
        // [x1,x2], [x3,x4] exactly when the word is special
        set_orientation(id_index(b12), pos);
        set_orientation(id_index(b34), pos);
        set_orientation(id_index(b13), !pos);
        set_orientation(id_index(b24), !pos);
    }
}

std::vector<int> SubComplex::all_vertex_ids() const {
    std::vector<int> ids;
    for (size_t i = 0; i < t1_.size(); ++i) ids.push_back(make_id(1, (int)i));
    for (size_t i = 0; i < t2_.size(); ++i) ids.push_back(make_id(2, (int)i));
    for (size_t i = 0; i < t3_.size(); ++i) ids.push_back(make_id(3, (int)i));
    return ids;
}

void SubComplex::rebuild_adjacency() const {
    adjacency_.clear();
    for (const auto& e : edges_) {
        adjacency_[e.first].push_back(e.second);
        adjacency_[e.second].push_back(e.first);
    }
    adjacency_dirty_ = false;
}

std::vector<int> SubComplex::neighbors(int id) const {
    if (adjacency_dirty_) rebuild_adjacency();
    auto it = adjacency_.find(id);
    if (it == adjacency_.end()) return {};
    return it->second;
}

const Vertex SubComplex::vertex(int id) const {
    int idx = id_index(id);
    switch (id_type(id)) {
        case 1: return t1_.at(idx);
        case 2: return t2_.at(idx);
        case 3: return t3_.at(idx);
    }
    throw std::domain_error("SubComplex::vertex: bad id");
}

std::optional<int> SubComplex::edge_distance(int a, int b) const {
    if (a == b) return 0;
    if (adjacency_dirty_) rebuild_adjacency();
    std::map<int, int> dist{{a, 0}};
    std::deque<int> queue{a};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) continue;
        for (int w : it->second) {
            if (dist.count(w)) continue;
            dist[w] = dist[v] + 1;
            if (w == b) return dist[w];
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

SubComplex big_square(const TameAuto& f) {
    SubComplex s;
    s.insert_big_square(f);
    return s;
}

namespace {

// remaps a formal two-variable polynomial on (x1,x2) into the family slot
ElementaryAuto make_elem(ElementaryFamily fam, const Poly& formalP) { return {fam, formalP}; }

} // namespace

SubComplex explore(const std::vector<TameWord>& generators, int depth,
                   const std::vector<Poly>& sampleP) {
    // generator evaluations with determinant signs
    std::vector<std::pair<TameAuto, int>> gens;
    for (const TameWord& w : generators)
        gens.emplace_back(evaluate_word(w), word_linear_det_sign(w));
    for (const Poly& p : sampleP)
        for (ElementaryFamily fam : {ElementaryFamily::E12, ElementaryFamily::E34,
                                     ElementaryFamily::E13, ElementaryFamily::E24})
            gens.emplace_back(make_elem(fam, p).to_auto(), 1);
    for (const Mat4& u : klein_group()) {
        Coeff d = u.det();
        gens.emplace_back(TameAuto::from_mat(u), d.is_one() ? 1 : -1);
    }
    {
        // fixed O4 sample: sigma and one shear from each SL2 factor
        gens.emplace_back(TameAuto::from_mat(mat_sigma()),
                          mat_sigma().det().is_one() ? 1 : -1);
        std::array<Coeff, 4> id2{Coeff(1), Coeff(0), Coeff(0), Coeff(1)};
        std::array<Coeff, 4> shear{Coeff(1), Coeff(1), Coeff(0), Coeff(1)};
        gens.emplace_back(TameAuto::from_mat(so4_from_sl2_pair(shear, id2)), 1);
        gens.emplace_back(TameAuto::from_mat(so4_from_sl2_pair(id2, shear)), 1);
    }

    // BFS over words, deduplicated by the exact quadruple
    std::vector<std::pair<TameAuto, int>> layer{{TameAuto::identity(), 1}};
    std::set<std::string> seen;
    auto auto_key = [](const TameAuto& f) {
        std::string k;
        for (const Poly& p : f.c) k += poly_key(p) + "|";
        return k;
    };
    seen.insert(auto_key(layer[0].first));

    SubComplex s;
    s.insert_big_square(TameAuto::identity(), 1);
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<TameAuto, int>> next;
        for (const auto& [f, sign] : layer) {
            for (const auto& [g, gsign] : gens) {
                TameAuto h;
                for (int i = 0; i < 4; ++i) h.c[i] = g.c[i].substitute(f.c);
                if (!seen.insert(auto_key(h)).second) continue;
                int hsign = sign * gsign;
                s.insert_big_square(h, hsign);
                next.emplace_back(std::move(h), hsign);
            }
        }
        layer = std::move(next);
    }
    return s;
}

GirthReport link_girth(const SubComplex& s, int vertex_id) {
    GirthReport rep;
    // link vertices: neighbors; link edges: from squares through vertex_id
    std::vector<int> nb = s.neighbors(vertex_id);
    rep.link_size = (int)nb.size();
    std::map<int, int> index;
    for (size_t i = 0; i < nb.size(); ++i) index[nb[i]] = (int)i;
    std::map<std::pair<int, int>, int> multiplicity;
    for (const auto& sq : s.squares()) {
        int v1 = sq[0], v2a = sq[1], v3 = sq[2], v2b = sq[3];
        std::pair<int, int> link_edge{-1, -1};
        if (v1 == vertex_id) link_edge = {v2a, v2b};
        else if (v3 == vertex_id) link_edge = {v2a, v2b};
        else if (v2a == vertex_id) link_edge = {v1, v3};
        else if (v2b == vertex_id) link_edge = {v1, v3};
        else continue;
        auto key = std::minmax(link_edge.first, link_edge.second);
        multiplicity[{key.first, key.second}] += 1;
    }
    // multi-edges are 2-loops
    std::vector<std::vector<int>> adj(nb.size());
    for (const auto& [e, mult] : multiplicity) {
        if (mult > 1) {
            rep.girth = 2;
            rep.girth_ge_4 = false;
        }
        adj[index.at(e.first)].push_back(index.at(e.second));
        adj[index.at(e.second)].push_back(index.at(e.first));
    }
    // type-2 links join type-1 to type-3 vertices only
    if (SubComplex::id_type(vertex_id) == 2)
        for (const auto& [e, mult] : multiplicity)
            if (SubComplex::id_type(e.first) == SubComplex::id_type(e.second))
                rep.parts_match_types = false;
    // 2-colorability of the link graph
    {
        std::vector<int> color(nb.size(), -1);
        for (size_t src = 0; src < nb.size() && rep.bipartite; ++src) {
            if (color[src] >= 0) continue;
            color[src] = 0;
            std::deque<size_t> q{src};
            while (!q.empty() && rep.bipartite) {
                size_t v = q.front();
                q.pop_front();
                for (int wv : adj[v]) {
                    if (color[wv] < 0) {
                        color[wv] = 1 - color[v];
                        q.push_back((size_t)wv);
                    } else if (color[wv] == color[v]) {
                        rep.bipartite = false;
                        break;
                    }
                }
            }
        }
    }
    if (rep.girth) return rep;
    // shortest cycle via BFS from every vertex
    int best = -1;
    for (size_t src = 0; src < nb.size(); ++src) {
        std::vector<int> dist(nb.size(), -1), parent(nb.size(), -1);
        std::deque<int> q{(int)src};
        dist[src] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    q.push_back(w);
                } else if (w != parent[v]) {
                    int len = dist[v] + dist[w] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best > 0) {
        rep.girth = best;
        rep.girth_ge_4 = best >= 4;
    }
    return rep;
}

IntersectionReport square_intersection_report(const SubComplex& s) {
    IntersectionReport rep;
    std::vector<std::array<int, 4>> sq(s.squares().begin(), s.squares().end());
    auto corners = [](const std::array<int, 4>& a) {
        std::vector<int> v(a.begin(), a.end());
        std::sort(v.begin(), v.end());
        return v;
    };
    auto is_square_edge = [](const std::array<int, 4>& q, int a, int b) {
        // square cycle: q[0]-q[1]-q[2]-q[3]-q[0]
        std::pair<int, int> e{std::min(a, b), std::max(a, b)};
        const int cyc[4][2] = {{q[0], q[1]}, {q[1], q[2]}, {q[2], q[3]}, {q[3], q[0]}};
        for (auto& c : cyc)
            if (std::minmax(c[0], c[1]) == std::minmax(e.first, e.second)) return true;
        return false;
    };
    for (size_t i = 0; i < sq.size(); ++i) {
        auto ci = corners(sq[i]);
        for (size_t j = i + 1; j < sq.size(); ++j) {
            ++rep.pairs_checked;
            auto cj = corners(sq[j]);
            std::vector<int> inter;
            std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(),
                                  std::back_inserter(inter));
            bool ok = inter.size() <= 1;
            if (inter.size() == 2)
                ok = is_square_edge(sq[i], inter[0], inter[1]) &&
                     is_square_edge(sq[j], inter[0], inter[1]);
            if (!ok) {
                ++rep.violations;
                if (rep.witnesses.size() < 8) rep.witnesses.push_back({sq[i], sq[j]});
            }
        }
    }
    return rep;
}

namespace {

Poly remap_univariate(const Poly& p, int from_var, int to_slot) {
    // moves a univariate polynomial in x_{from_var} onto formal slot 0 or 1
    Poly out;
    for (const auto& t : p.terms()) {
        Exponent4 m;
        m.e[to_slot] = t.m.e[from_var];
        out = out + Poly::monomial(m, t.c);
    }
    return out;
}

} // namespace

GridReport grid_4x4(const Poly& n, const Poly& s, const Poly& e, const Poly& w) {
    // variable constraints from the corner Jacobians
    auto check_var = [](const Poly& p, int var, const char* name) {
        for (int v = 0; v < 4; ++v)
            if (v != var && p.depends_on(v))
                throw std::domain_error(std::string("grid_4x4: ") + name +
                                        " must be univariate in x" + std::to_string(var + 1));
    };
    check_var(n, 1, "N");
    check_var(s, 2, "S");
    check_var(e, 3, "E");
    check_var(w, 0, "W");

    // the four side elementaries
    ElementaryAuto eN{ElementaryFamily::E34, remap_univariate(n, 1, 1)}; // N(x2) in P(x1,x2)
    ElementaryAuto eS{ElementaryFamily::E12, remap_univariate(s, 2, 0)}; // S(x3) in P(x3,x4)
    ElementaryAuto eE{ElementaryFamily::E13, remap_univariate(e, 3, 1)}; // E(x4) in P(x2,x4)
    ElementaryAuto eW{ElementaryFamily::E24, remap_univariate(w, 0, 0)}; // W(x1) in P(x1,x3)

    TameAuto id = TameAuto::identity();
    TameAuto vN = eN.to_auto(), vS = eS.to_auto(), vE = eE.to_auto(), vW = eW.to_auto();
    TameAuto vNW = compose(vW, vN);
    TameAuto vNE = compose(vN, vE);
    TameAuto vSE = compose(vE, vS);
    TameAuto vSW = compose(vS, vW);

    GridReport rep;
    SubComplex& sc = rep.complex;
    std::array<int, 4> std_t1;
    for (int i = 0; i < 4; ++i)
        std_t1[i] = sc.add_vertex(canonical_t1(Poly::variable(i)));

    auto add_grid_squares = [&](const TameAuto& f) {
        int c = sc.add_vertex(VertexT3{f});
        for (int i = 0; i < 4; ++i) {
            // type-1 corner [f_i]; keep only corners at the four inner spots
            VertexT1 v1 = canonical_t1(f.c[i]);
            auto found = sc.find_vertex(v1);
            bool inner = false;
            int v1id = -1;
            if (found) {
                for (int k = 0; k < 4; ++k)
                    if (*found == std_t1[k]) inner = true;
                v1id = *found;
            }
            if (!inner) continue;
            // the two type-2 sides through f_i
            static const int mates[4][2] = {{1, 2}, {0, 3}, {0, 3}, {1, 2}};
            int m0 = mates[i][0], m1 = mates[i][1];
            int s0 = sc.add_vertex(canonical_t2(f.c[i], f.c[m0]));
            int s1 = sc.add_vertex(canonical_t2(f.c[i], f.c[m1]));
            sc.add_square(v1id, s0, c, s1);
        }
    };

    for (const TameAuto* f : {&id, &vN, &vS, &vE, &vW, &vNW, &vNE, &vSE, &vSW}) {
        if (!f->quadric_holds()) throw std::logic_error("grid_4x4: corner lost the quadric");
        add_grid_squares(*f);
    }

    rep.vertices = sc.vertex_count();
    rep.edge_count = sc.edges().size();
    rep.square_count = sc.squares().size();
    rep.degenerate = rep.vertices != 25 || rep.square_count != 16;
    return rep;
}

SixGridSearch search_6x6(const SubComplex& s) {
    SixGridSearch out;
    // 7x7 lattice positions, center (3,3) of type 1; types by parity of the
    // offset from the center
    auto type_of = [](int i, int j) {
        bool ei = ((i - 3) % 2) == 0, ej = ((j - 3) % 2) == 0;
        if (ei && ej) return 1;
        if (!ei && !ej) return 3;
        return 2;
    };
    // positions ordered by ring around the center so candidates are pruned
    // by already-placed neighbors
    std::vector<std::pair<int, int>> order;
    for (int r = 0; r <= 3; ++r)
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                if (std::max(std::abs(i - 3), std::abs(j - 3)) == r) order.emplace_back(i, j);

    std::vector<int> assign(49, -1);
    auto at = [&](int i, int j) -> int& { return assign[i * 7 + j]; };
    std::set<int> used;

    std::function<bool(size_t)> place = [&](size_t k) -> bool {
        if (k == order.size()) return true;
        auto [i, j] = order[k];
        int want_type = type_of(i, j);
        // candidates: in-S neighbors of every placed lattice neighbor
        std::vector<int> cands;
        bool constrained = false;
        auto consider_neighbor = [&](int ni, int nj) {
            if (ni < 0 || ni > 6 || nj < 0 || nj > 6) return;
            int pid = at(ni, nj);
            if (pid < 0) return;
            std::vector<int> nb = s.neighbors(pid);
            if (!constrained) {
                cands = nb;
                constrained = true;
            } else {
                std::vector<int> keep;
                for (int c : cands)
                    if (std::find(nb.begin(), nb.end(), c) != nb.end()) keep.push_back(c);
                cands = keep;
            }
        };
        consider_neighbor(i - 1, j);
        consider_neighbor(i + 1, j);
        consider_neighbor(i, j - 1);
        consider_neighbor(i, j + 1);
        if (!constrained) return false; // only possible for the center, handled below
        for (int c : cands) {
            if (SubComplex::id_type(c) != want_type || used.count(c)) continue;
            // full-square check for any completed cell at this corner
            at(i, j) = c;
            bool ok = true;
            for (int ci : {i - 1, i})
                for (int cj : {j - 1, j}) {
                    if (ci < 0 || cj < 0 || ci > 5 || cj > 5) continue;
                    int a = at(ci, cj), b = at(ci + 1, cj), d = at(ci, cj + 1),
                        e2 = at(ci + 1, cj + 1);
                    if (a < 0 || b < 0 || d < 0 || e2 < 0) continue;
                    // the cell must be one of the explored squares
                    std::array<int, 4> ids{a, b, e2, d};
                    int t1id = -1, t3id = -1;
                    std::vector<int> t2s;
                    for (int x : ids) {
                        if (SubComplex::id_type(x) == 1) t1id = x;
                        else if (SubComplex::id_type(x) == 3) t3id = x;
                        else t2s.push_back(x);
                    }
                    if (t1id < 0 || t3id < 0 || t2s.size() != 2) {
                        ok = false;
                        break;
                    }
                    std::array<int, 4> key{t1id, std::min(t2s[0], t2s[1]), t3id,
                                           std::max(t2s[0], t2s[1])};
                    if (!s.squares().count(key)) {
                        ok = false;
                        break;
                    }
                }
            if (ok) {
                used.insert(c);
                if (place(k + 1)) return true;
                used.erase(c);
            }
            at(i, j) = -1;
        }
        return false;
    };

    for (size_t c1 = 0; c1 < s.t1().size(); ++c1) {
        ++out.centers_tried;
        std::fill(assign.begin(), assign.end(), -1);
        used.clear();
        int center = SubComplex::make_id(1, (int)c1);
        at(3, 3) = center;
        used.insert(center);
        if (place(1)) { // order[0] is the center
            out.found = true;
            out.witness = assign;
            return out;
        }
    }
    return out;
}

} // namespace tamesl2

#include "tamesl2/complex.hpp"

#include <map>

namespace tamesl2 {

namespace {

// Big squares of all contiguous sub-products of the flattened factor lists
// of w^k and w^-k, plus the standard square. The orbit of a base point x is
// x o w^-j, so the inverse-side products carry the axis vertices; the
// forward products supply the connecting squares around them.
SubComplex axis_exploration(const TameWord& w, int k) {
    SubComplex s;
    s.insert_big_square(TameAuto::identity(), 1);
    const TameWord inv = invert_word(w);
    const TameWord* sides[2] = {&w, &inv};
    for (const TameWord* side : sides) {
        const TameWord& word = *side;
        std::vector<WordFactor> letters;
        for (int r = 0; r < k; ++r)
            letters.insert(letters.end(), word.factors.begin(), word.factors.end());
        size_t n = letters.size();
        for (size_t i = 0; i < n; ++i) {
            TameAuto acc = TameAuto::identity();
            // sub-products letters[j..i] for j = i down to 0
            for (size_t j = i + 1; j-- > 0;) {
                if (std::holds_alternative<ElementaryAuto>(letters[j]))
                    acc = compose_elementary(std::get<ElementaryAuto>(letters[j]), acc);
                else
                    acc = compose_linear(std::get<Mat4>(letters[j]), acc);
                s.insert_big_square(acc, 0);
            }
        }
    }
    return s;
}

} // namespace

IsometryReport classify_isometry(const TameWord& w, int horizon) {
    IsometryReport rep;
    int kmax = std::max(1, std::min(horizon, 3));
    // d(x, w^k x) = d(w^-a x, w^b x) with a+b = k, so two periods per side
    // suffice for k <= 3 and keep the product degrees quadratic in deg(w)
    int periods = (kmax + 2) / 2;
    SubComplex s = axis_exploration(w, periods);
    rep.explored_vertices = s.vertex_count();

    // powers of w as words
    std::vector<TameWord> powers(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        powers[k] = powers[k - 1];
        powers[k].factors.insert(powers[k].factors.end(), w.factors.begin(), w.factors.end());
    }

    // signed powers evaluated once: act(w^k, [f]) = [f o w^-k], k in [-p, p]
    int span = std::max(periods, 2);
    std::map<int, TameAuto> gpow;
    gpow[0] = TameAuto::identity();
    {
        TameAuto fwd = evaluate_word(w), bwd = evaluate_word(invert_word(w));
        for (int k = 1; k <= span; ++k) {
            TameAuto a = gpow[k - 1], b = gpow[1 - k];
            TameAuto na, nb;
            for (int i = 0; i < 4; ++i) {
                na.c[i] = a.c[i].substitute(bwd.c);
                nb.c[i] = b.c[i].substitute(fwd.c);
            }
            gpow[k] = na;  // w^-k evaluated
            gpow[-k] = nb; // w^k evaluated
        }
    }
    auto act_by = [&](const Vertex& v, int k) -> Vertex {
        const TameAuto& g = gpow.at(k);
        if (std::holds_alternative<VertexT1>(v))
            return canonical_t1(std::get<VertexT1>(v).rep.substitute(g.c));
        if (std::holds_alternative<VertexT2>(v)) {
            const VertexT2& p = std::get<VertexT2>(v);
            return canonical_t2(p.b0.substitute(g.c), p.b1.substitute(g.c));
        }
        const TameAuto& f = std::get<VertexT3>(v).rep;
        TameAuto img;
        for (int i = 0; i < 4; ++i) img.c[i] = f.c[i].substitute(g.c);
        return VertexT3{img};
    };
    auto small_base = [&](const Vertex& v) -> bool {
        // substituting w^k into a large or high-degree representative blows
        // up; the axis witnesses live among the near-linear vertices
        auto ok = [](const Poly& p) { return p.size() <= 6 && p.raw_degree() <= 2; };
        if (std::holds_alternative<VertexT1>(v)) return ok(std::get<VertexT1>(v).rep);
        if (std::holds_alternative<VertexT2>(v))
            return ok(std::get<VertexT2>(v).b0) && ok(std::get<VertexT2>(v).b1);
        for (const Poly& p : std::get<VertexT3>(v).rep.c)
            if (!ok(p)) return false;
        return true;
    };

    std::optional<int> best_base;
    int best_len = 0;
    std::vector<int> best_dists;

    // pass 1: displacement of every small base (cheap, k = 1 only)
    std::vector<std::pair<int, int>> by_displacement; // (d1, id)
    for (int id : s.all_vertex_ids()) {
        Vertex x = s.vertex(id);
        if (!small_base(x)) continue;
        Vertex y1 = act_by(x, 1);
        auto y1id = s.find_vertex(y1);
        if (!y1id) continue;
        if (*y1id == id) {
            rep.kind = IsometryKind::Elliptic;
            rep.witness = x;
            return rep;
        }
        auto d1 = s.edge_distance(id, *y1id);
        if (d1 && *d1 > 0) by_displacement.emplace_back(*d1, id);
    }
    std::sort(by_displacement.begin(), by_displacement.end());

    // pass 2: verify the k <= kmax consistency in order of displacement and
    // stop at the first witness (it realizes the minimal consistent length)
    for (auto [d1, id] : by_displacement) {
        Vertex x = s.vertex(id);
        std::vector<int> dists{d1};
        bool consistent = kmax >= 2;
        for (int k = 2; k <= kmax; ++k) {
            // d(x, w^k x) = d(w^-a x, w^b x) with a = k/2, b = k - a
            int a = k / 2, b = k - a;
            auto ya = s.find_vertex(act_by(x, -a));
            auto yb = s.find_vertex(act_by(x, b));
            if (!ya || !yb) {
                consistent = false;
                break;
            }
            auto dk = s.edge_distance(*ya, *yb);
            if (!dk || *dk != k * d1) {
                consistent = false;
                break;
            }
            dists.push_back(*dk);
        }
        if (consistent) {
            best_base = id;
            best_len = d1;
            best_dists = dists;
            break;
        }
    }

    if (best_base) {
        rep.kind = IsometryKind::Hyperbolic;
        rep.witness = s.vertex(*best_base);
        rep.translation_length = best_len;
        rep.orbit_distances = best_dists;
        return rep;
    }
    rep.kind = IsometryKind::Undetermined;
    return rep;
}

} // namespace tamesl2

#include "tamesl2/io.hpp"

#include <sstream>
#include <stdexcept>

namespace tamesl2::io {

json coeff_to_json(const Coeff& c, FieldMode mode) {
    if (mode == FieldMode::Q) {
        if (!c.is_rational())
            throw std::domain_error("field mode q cannot serialize an imaginary part");
        return rational_str(c.re());
    }
    return json::array({rational_str(c.re()), rational_str(c.im())});
}

Coeff coeff_from_json(const json& j, FieldMode mode) {
    if (j.is_string()) return Coeff(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return Coeff((long)j.get<int64_t>());
    if (j.is_array() && j.size() == 2) {
        if (mode == FieldMode::Q)
            throw std::invalid_argument("field mode q rejects two-part coefficients");
        return Coeff(parse_rational(j[0].get<std::string>()),
                     parse_rational(j[1].get<std::string>()));
    }
    throw std::invalid_argument("bad coefficient payload");
}

json poly_to_json(const Poly& p, FieldMode mode) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json term = json::array();
        term.push_back(json::array({t.m.e[0], t.m.e[1], t.m.e[2], t.m.e[3]}));
        if (mode == FieldMode::Q) {
            if (!t.c.is_rational())
                throw std::domain_error("field mode q cannot serialize an imaginary part");
            term.push_back(rational_str(t.c.re()));
        } else {
            term.push_back(rational_str(t.c.re()));
            term.push_back(rational_str(t.c.im()));
        }
        terms.push_back(std::move(term));
    }
    return terms;
}

Poly poly_from_json(const json& j, FieldMode mode) {
    if (!j.is_array()) throw std::invalid_argument("polynomial payload must be an array");
    Poly p;
    for (const json& term : j) {
        if (!term.is_array() || term.size() < 2 || term.size() > 3 || !term[0].is_array() ||
            term[0].size() != 4)
            throw std::invalid_argument("bad polynomial term");
        Exponent4 m;
        for (int v = 0; v < 4; ++v) m.e[v] = term[0][v].get<uint32_t>();
        Coeff c;
        if (term.size() == 2) {
            c = Coeff(parse_rational(term[1].get<std::string>()));
        } else {
            if (mode == FieldMode::Q)
                throw std::invalid_argument("field mode q rejects two-part coefficients");
            c = Coeff(parse_rational(term[1].get<std::string>()),
                      parse_rational(term[2].get<std::string>()));
        }
        p = p + Poly::monomial(m, c);
    }
    return p;
}

json weight_to_json(const WeightVec& w) {
    if (!w.finite) return "-inf";
    return json::array({w.w[0], w.w[1], w.w[2], w.w[3]});
}

json mat_to_json(const Mat4& m, FieldMode mode) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(coeff_to_json(m.m[i][j], mode));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat4 mat_from_json(const json& j, FieldMode mode) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix payload must be 4x4");
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4)
            throw std::invalid_argument("matrix payload must be 4x4");
        for (int k = 0; k < 4; ++k) m.m[i][k] = coeff_from_json(j[i][k], mode);
    }
    return m;
}

json auto_to_json(const TameAuto& f, FieldMode mode) {
    json comps = json::array();
    for (const Poly& p : f.c) comps.push_back(poly_to_json(p, mode));
    return json{{"components", comps}};
}

TameAuto auto_from_json(const json& j, FieldMode mode) {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array() ||
        j["components"].size() != 4)
        throw std::invalid_argument("automorphism payload needs 4 components");
    TameAuto f;
    for (int i = 0; i < 4; ++i) f.c[i] = poly_from_json(j["components"][i], mode);
    return f;
}

json word_to_json(const TameWord& w, FieldMode mode) {
    json factors = json::array();
    for (const WordFactor& f : w.factors) {
        if (std::holds_alternative<ElementaryAuto>(f)) {
            const ElementaryAuto& e = std::get<ElementaryAuto>(f);
            factors.push_back(json{{"elem", json{{"family", family_name(e.family)},
                                                 {"P", poly_to_json(e.P, mode)}}}});
        } else {
            factors.push_back(json{{"orth", mat_to_json(std::get<Mat4>(f), mode)}});
        }
    }
    return json{{"word", factors}};
}

TameWord word_from_json(const json& j, FieldMode mode) {
    if (!j.is_object() || !j.contains("word") || !j["word"].is_array())
        throw std::invalid_argument("word payload needs a \"word\" array");
    TameWord w;
    for (const json& f : j["word"]) {
        if (f.contains("elem")) {
            const json& e = f["elem"];
            auto fam = family_from_name(e.at("family").get<std::string>());
            if (!fam) throw std::invalid_argument("unknown elementary family");
            Poly p = poly_from_json(e.at("P"), mode);
            if (p.depends_on(2) || p.depends_on(3))
                throw std::invalid_argument("elementary P must use the two formal slots");
            w.factors.push_back(ElementaryAuto{*fam, p});
        } else if (f.contains("orth")) {
            Mat4 m = mat_from_json(f["orth"], mode);
            if (is_orthogonal(m) == OrthVerdict::No)
                throw std::invalid_argument("orth factor is not orthogonal");
            w.factors.push_back(m);
        } else {
            throw std::invalid_argument("word factor needs \"elem\" or \"orth\"");
        }
    }
    return w;
}

namespace {

json candidate_to_json(const CandidateReport& c, FieldMode mode) {
    json supp = json::array();
    for (auto [a, b] : c.single_layer_support) supp.push_back(json::array({a, b}));
    json out{{"plane", json::array({poly_to_json(c.plane[0], mode),
                                    poly_to_json(c.plane[1], mode)})},
             {"deg_r", weight_to_json(c.deg_r)},
             {"deg_u", weight_to_json(c.deg_u)},
             {"deg_v", weight_to_json(c.deg_v)},
             {"degree_equation_solutions", supp},
             {"single_layer_solvable", c.single_solvable},
             {"dependent_leading_parts", c.dependent},
             {"blocked_by_untouched_degree", c.blocked_by_untouched},
             {"definitive_none", c.definitive_none},
             {"budget_exhausted", c.budget_exhausted}};
    if (c.family) out["family"] = family_name(*c.family);
    if (c.pruned_from >= 0) out["parachute_pruned_from"] = c.pruned_from;
    return out;
}

} // namespace

json trace_to_json(const ReductionTrace& t, FieldMode mode) {
    json steps = json::array();
    for (const ReductionStep& s : t.steps) {
        json step{{"family", family_name(s.move.e.family)},
                  {"P", poly_to_json(s.move.e.P, mode)},
                  {"degree_after", weight_to_json(s.degree_after)}};
        if (!(s.move.pre == Mat4::identity()))
            step["normalizer"] = mat_to_json(s.move.pre, mode);
        steps.push_back(std::move(step));
    }
    json out{{"start_degree", weight_to_json(t.start.degree())}, {"steps", steps}};
    if (t.linear_terminal) {
        out["terminal"] = mat_to_json(t.terminal, mode);
        out["terminal_verdict"] =
            t.terminal_verdict == OrthVerdict::SpecialSO4 ? "SpecialSO4" : "GeneralO4";
    }
    if (t.failure) {
        json cands = json::array();
        for (const auto& c : t.failure->candidates) cands.push_back(candidate_to_json(c, mode));
        out["no_reduction"] = json{{"candidates", cands},
                                   {"kernel_dim", t.failure->kernel_dim},
                                   {"planes_complete", t.failure->planes_complete},
                                   {"definitive", t.failure->definitive}};
    }
    return out;
}

json verdict_to_json(const TameVerdict& v, FieldMode mode) {
    json out;
    switch (v.kind) {
        case TameVerdictKind::Tame: out["verdict"] = "Tame"; break;
        case TameVerdictKind::NotTameWithinBudget: out["verdict"] = "NotTameWithinBudget"; break;
        case TameVerdictKind::NotAutomorphismOfQuadric:
            out["verdict"] = "NotAutomorphismOfQuadric";
            break;
    }
    out["definitive"] = v.definitive;
    if (v.kind == TameVerdictKind::Tame) out["word"] = word_to_json(v.word, mode);
    if (v.kind != TameVerdictKind::NotAutomorphismOfQuadric)
        out["trace"] = trace_to_json(v.trace, mode);
    return out;
}

json subcomplex_to_json(const SubComplex& s, FieldMode mode) {
    json t1 = json::array(), t2 = json::array(), t3 = json::array();
    for (const auto& v : s.t1()) t1.push_back(poly_to_json(v.rep, mode));
    for (size_t i = 0; i < s.t2().size(); ++i) {
        const auto& v = s.t2()[i];
        json entry{{"basis", json::array({poly_to_json(v.b0, mode), poly_to_json(v.b1, mode)})}};
        if (auto h = s.t2_orientation(i)) entry["horizontal"] = *h;
        t2.push_back(std::move(entry));
    }
    for (const auto& v : s.t3()) t3.push_back(auto_to_json(v.rep, mode));
    json edges = json::array();
    for (const auto& e : s.edges()) edges.push_back(json::array({e.first, e.second}));
    json squares = json::array();
    for (const auto& sq : s.squares())
        squares.push_back(json::array({sq[0], sq[1], sq[2], sq[3]}));
    return json{{"vertices", json{{"type1", t1}, {"type2", t2}, {"type3", t3}}},
                {"edges", edges},
                {"squares", squares},
                {"counts", json{{"vertices", s.vertex_count()},
                                {"edges", s.edges().size()},
                                {"squares", s.squares().size()}}}};
}

std::string subcomplex_to_dot(const SubComplex& s) {
    std::ostringstream out;
    out << "graph complex {\n  node [fontsize=10];\n";
    auto name = [](int id) {
        return "v" + std::to_string(SubComplex::id_type(id)) + "_" +
               std::to_string(SubComplex::id_index(id));
    };
    for (size_t i = 0; i < s.t1().size(); ++i)
        out << "  " << name(SubComplex::make_id(1, (int)i))
            << " [shape=circle, label=\"[" << s.t1()[i].rep.str() << "]\"];\n";
    for (size_t i = 0; i < s.t2().size(); ++i)
        out << "  " << name(SubComplex::make_id(2, (int)i))
            << " [shape=point, width=0.12, xlabel=\"[" << s.t2()[i].b0.str() << ", "
            << s.t2()[i].b1.str() << "]\"];\n";
    for (size_t i = 0; i < s.t3().size(); ++i)
        out << "  " << name(SubComplex::make_id(3, (int)i)) << " [shape=square, label=\"t3#"
            << i << "\"];\n";
    for (const auto& e : s.edges())
        out << "  " << name(e.first) << " -- " << name(e.second) << ";\n";
    int k = 0;
    for (const auto& sq : s.squares()) {
        out << "  // square " << k++ << ": " << name(sq[0]) << " " << name(sq[1]) << " "
            << name(sq[2]) << " " << name(sq[3]) << "\n";
    }
    out << "}\n";
    return out.str();
}

json isometry_to_json(const IsometryReport& r, FieldMode mode) {
    json out;
    switch (r.kind) {
        case IsometryKind::Elliptic: out["kind"] = "Elliptic"; break;
        case IsometryKind::Hyperbolic: out["kind"] = "Hyperbolic"; break;
        case IsometryKind::Undetermined: out["kind"] = "Undetermined"; break;
    }
    out["certification"] = "skeleton";
    out["explored_vertices"] = r.explored_vertices;
    if (r.kind == IsometryKind::Hyperbolic) {
        out["translation_length"] = r.translation_length;
        out["orbit_distances"] = r.orbit_distances;
    }
    if (r.witness) {
        const Vertex& v = *r.witness;
        if (std::holds_alternative<VertexT1>(v))
            out["witness"] = json{{"type", 1}, {"rep", poly_to_json(std::get<VertexT1>(v).rep, mode)}};
        else if (std::holds_alternative<VertexT2>(v))
            out["witness"] =
                json{{"type", 2},
                     {"basis", json::array({poly_to_json(std::get<VertexT2>(v).b0, mode),
                                            poly_to_json(std::get<VertexT2>(v).b1, mode)})}};
        else
            out["witness"] = json{{"type", 3}, {"rep", auto_to_json(std::get<VertexT3>(v).rep, mode)}};
    }
    return out;
}

} // namespace tamesl2::io

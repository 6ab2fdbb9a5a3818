// tamesl2 command line: exact tame-automorphism calculus on the quadric,
// with deterministic machine-readable output.

#include "tamesl2/catalog.hpp"
#include "tamesl2/complex.hpp"
#include "tamesl2/grouplab.hpp"
#include "tamesl2/io.hpp"
#include "tamesl2/tame.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace tamesl2;
using tamesl2::io::FieldMode;
using tamesl2::io::json;

namespace {

struct Options {
    FieldMode field = FieldMode::Q;
    std::string format = "json";
    std::string out_path;
    ReductionBudget budget;
    int depth = 1;
    int horizon = 3;
    std::string sample_p_path;
};

json read_json_file(const std::string& path) {
    if (path == "-") {
        json j;
        std::cin >> j;
        return j;
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const Options& opt, const json& payload, const std::string& dot = "") {
    std::string body;
    if (opt.format == "dot" && !dot.empty())
        body = dot;
    else if (opt.format == "pretty")
        body = payload.dump(2) + "\n";
    else
        body = payload.dump() + "\n";
    if (opt.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw std::invalid_argument("cannot write " + opt.out_path);
        out << body;
    }
}

std::vector<Poly> load_sample_p(const Options& opt) {
    std::vector<Poly> sample;
    if (opt.sample_p_path.empty()) return sample;
    json j = read_json_file(opt.sample_p_path);
    if (!j.is_array()) throw std::invalid_argument("--sample-p expects a JSON array of polys");
    for (const json& p : j) sample.push_back(io::poly_from_json(p, opt.field));
    return sample;
}

int run_reduce(const Options& opt, const std::string& input, bool batch) {
    json in = read_json_file(input);
    auto one = [&](const json& payload) {
        TameAuto f = io::auto_from_json(payload, opt.field);
        TameVerdict v = is_tame(f.c, opt.budget);
        json out = io::verdict_to_json(v, opt.field);
        if (v.kind == TameVerdictKind::Tame)
            out["word_evaluates_to_input"] = evaluate_word(v.word) == f;
        return out;
    };
    if (batch) {
        if (!in.is_array()) throw std::invalid_argument("--batch expects a JSON array");
        json out = json::array();
        for (const json& payload : in) out.push_back(one(payload));
        emit(opt, out);
    } else {
        emit(opt, one(in));
    }
    return 0;
}

int run_verify(const Options& opt, const std::string& input) {
    TameAuto f = io::auto_from_json(read_json_file(input), opt.field);
    TameVerdict v = is_tame(f.c, opt.budget);
    emit(opt, io::verdict_to_json(v, opt.field));
    return 0;
}

int run_compose(const Options& opt, const std::string& a, const std::string& b) {
    TameAuto fa = io::auto_from_json(read_json_file(a), opt.field);
    TameAuto fb = io::auto_from_json(read_json_file(b), opt.field);
    emit(opt, io::auto_to_json(compose(fa, fb), opt.field));
    return 0;
}

int run_invert(const Options& opt, const std::string& input) {
    json in = read_json_file(input);
    if (in.contains("word")) {
        TameWord w = io::word_from_json(in, opt.field);
        TameWord wi = invert_word(w);
        json out = io::word_to_json(wi, opt.field);
        out["evaluation"] = io::auto_to_json(evaluate_word(wi), opt.field);
        emit(opt, out);
        return 0;
    }
    // an automorphism: decompose, invert the word, evaluate
    TameAuto f = io::auto_from_json(in, opt.field);
    TameVerdict v = is_tame(f.c, opt.budget);
    if (v.kind != TameVerdictKind::Tame) {
        emit(opt, io::verdict_to_json(v, opt.field));
        return 2;
    }
    TameWord wi = invert_word(v.word);
    TameAuto fi = evaluate_word(wi);
    json out{{"inverse", io::auto_to_json(fi, opt.field)},
             {"word", io::word_to_json(wi, opt.field)["word"]},
             {"check_identity", compose(f, fi) == TameAuto::identity()}};
    emit(opt, out);
    return 0;
}

int run_explore(const Options& opt, const std::string& generators_path) {
    std::vector<TameWord> gens;
    if (!generators_path.empty()) {
        json j = read_json_file(generators_path);
        if (!j.is_array())
            throw std::invalid_argument("--generators expects a JSON array of words");
        for (const json& w : j) gens.push_back(io::word_from_json(w, opt.field));
    }
    SubComplex s = explore(gens, opt.depth, load_sample_p(opt));
    json out = io::subcomplex_to_json(s, opt.field);
    // local curvature and square-intersection reports over the explored part
    IntersectionReport ir = square_intersection_report(s);
    int min_girth = -1;
    bool all_ge4 = true;
    for (int id : s.all_vertex_ids()) {
        GirthReport g = link_girth(s, id);
        all_ge4 = all_ge4 && g.girth_ge_4;
        if (g.girth && (min_girth < 0 || *g.girth < min_girth)) min_girth = *g.girth;
    }
    out["checks"] = json{{"square_intersections_ok", ir.ok()},
                         {"link_girth_ge_4", all_ge4},
                         {"min_link_girth", min_girth}};
    emit(opt, out, io::subcomplex_to_dot(s));
    return 0;
}

int run_classify(const Options& opt, const std::string& input) {
    TameWord w = io::word_from_json(read_json_file(input), opt.field);
    IsometryReport r = classify_isometry(w, opt.horizon);
    emit(opt, io::isometry_to_json(r, opt.field));
    return 0;
}

int run_grid(const Options& opt, const std::string& n, const std::string& s,
             const std::string& e, const std::string& w) {
    auto parse_inline = [&](const std::string& text) {
        return io::poly_from_json(json::parse(text), opt.field);
    };
    GridReport rep = grid_4x4(parse_inline(n), parse_inline(s), parse_inline(e), parse_inline(w));
    json out = io::subcomplex_to_json(rep.complex, opt.field);
    out["grid"] = json{{"degenerate", rep.degenerate},
                       {"vertices", rep.vertices},
                       {"edges", rep.edge_count},
                       {"squares", rep.square_count}};
    emit(opt, out, io::subcomplex_to_dot(rep.complex));
    return 0;
}

int run_linearize(const Options& opt, const std::string& input) {
    json in = read_json_file(input);
    if (in.contains("triangular")) {
        std::vector<TriMap> gens;
        for (const json& t : in["triangular"]) {
            if (!t.is_array() || t.size() != 3)
                throw std::invalid_argument("triangular maps need 3 components");
            TriMap m;
            for (int i = 0; i < 3; ++i) m.c[i] = io::poly_from_json(t[i], opt.field);
            gens.push_back(std::move(m));
        }
        DiagonalizeReport r = diagonalize_triangular(TriangularGroup::generate(gens));
        json imgs = json::array();
        for (const TriMap& d : r.diagonal_images) {
            json row = json::array();
            for (const Poly& p : d.c) row.push_back(io::poly_to_json(p, opt.field));
            imgs.push_back(std::move(row));
        }
        json conj = json::array();
        for (const Poly& p : r.conjugator.c) conj.push_back(io::poly_to_json(p, opt.field));
        emit(opt,
             json{{"verified", r.verified}, {"conjugator", conj}, {"diagonal_images", imgs}});
        return r.verified ? 0 : 2;
    }
    if (!in.contains("generators"))
        throw std::invalid_argument("linearize expects \"generators\" or \"triangular\"");
    std::vector<TameAuto> gens;
    for (const json& g : in["generators"]) gens.push_back(io::auto_from_json(g, opt.field));
    LinearizeReport r = mean_linearize(FiniteSubgroup::generate(gens));
    json imgs = json::array();
    for (const Mat4& m : r.linear_images) imgs.push_back(io::mat_to_json(m, opt.field));
    emit(opt, json{{"verified", r.verified},
                   {"conjugator", io::auto_to_json(r.conjugator, opt.field)},
                   {"linear_images", imgs}});
    return r.verified ? 0 : 2;
}

int run_resonance(const Options& opt, const std::string& a_str, const std::string& b_str,
                  const std::string& poly_str, bool hyperelliptic) {
    auto parse_coeff = [&](const std::string& s) {
        auto comma = s.find(',');
        if (comma == std::string::npos) return Coeff(parse_rational(s));
        if (opt.field == FieldMode::Q)
            throw std::invalid_argument("field mode q rejects imaginary parts");
        return Coeff(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
    };
    Coeff a = parse_coeff(a_str), b = parse_coeff(b_str);
    json out;
    auto r = resonant(a, b);
    out["resonant"] = r.has_value();
    if (r) out["witness"] = json{{"p", r->p}, {"q", r->q}};
    if (!poly_str.empty()) {
        Poly R = io::poly_from_json(json::parse(poly_str), opt.field);
        out["poly_resonant"] = resonant_poly(R, a, b);
    }
    if (hyperelliptic) {
        HyperellipticReport h = gen_hyperelliptic(a, b);
        out["hyperelliptic"] =
            json{{"form", h.kind == HyperellipticForm::Resonant ? "resonant" : "elementary"},
                 {"f", io::auto_to_json(h.f, opt.field)},
                 {"witness", io::word_to_json(h.witness, opt.field)["word"]},
                 {"commutation_verified", h.commutation_verified}};
    }
    emit(opt, out);
    return 0;
}

int run_examples(const Options& opt) {
    FieldMode m = opt.field;
    json out;
    out["example_g"] = io::auto_to_json(catalog::example_g(), m);
    out["example_g_inverse"] = io::auto_to_json(catalog::example_g_inverse(), m);
    out["anick"] = io::auto_to_json(catalog::anick(), m);
    out["nontame_quadric_auto"] = io::auto_to_json(catalog::nontame_restriction(), m);
    for (int r = 1; r <= 3; ++r) {
        std::vector<catalog::HenonParams> ps;
        for (int i = 0; i < r; ++i)
            ps.push_back(
                {Coeff(1), Coeff(1), Poly::monomial(Exponent4{{2, 0, 0, 0}}, Coeff(1))});
        out["henon_r" + std::to_string(r)] =
            io::word_to_json(catalog::henon_word(ps), m)["word"];
    }
    out["parabolic_phi_1"] = io::word_to_json(gen_parabolic(1).phi, m)["word"];
    emit(opt, out);
    return 0;
}

int run_degree_report(const Options& opt, int count, uint64_t seed) {
    // experimental evidence only: compares deg p with the degree of the
    // canonical representative mod (q-1) over components of random words
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<uint32_t> de(0, 2);
    auto random_elem = [&]() {
        static const ElementaryFamily fams[4] = {ElementaryFamily::E12, ElementaryFamily::E34,
                                                 ElementaryFamily::E13, ElementaryFamily::E24};
        Poly p;
        for (int t = 0; t < 2; ++t) {
            Exponent4 mm;
            mm.e[0] = de(rng);
            mm.e[1] = de(rng);
            p = p + Poly::monomial(mm, Coeff(coef(rng)));
        }
        if (p.is_zero()) p = Poly::variable(0);
        return ElementaryAuto{fams[kind(rng)], p};
    };
    size_t equal = 0, total = 0;
    json disagreements = json::array();
    for (int it = 0; it < count; ++it) {
        TameAuto f = TameAuto::identity();
        int n = len(rng);
        for (int i = 0; i < n; ++i) f = compose_elementary(random_elem(), f);
        for (const Poly& p : f.c) {
            WeightVec d = p.wdeg();
            WeightVec dbar = quotient_normal_form(p).wdeg();
            ++total;
            if (d == dbar) {
                ++equal;
            } else if (disagreements.size() < 16) {
                disagreements.push_back(json{{"deg", io::weight_to_json(d)},
                                             {"deg_bar", io::weight_to_json(dbar)}});
            }
        }
    }
    emit(opt, json{{"label", "experimental evidence only"},
                   {"components_checked", total},
                   {"deg_equal_deg_bar", equal},
                   {"disagreements", disagreements}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus for the tame automorphism group of the SL2 quadric"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Options opt;
    std::string field_str = "q";
    app.add_option("--field", field_str, "coefficient field: q or qi")
        ->check(CLI::IsMember({"q", "qi"}));
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "dot", "pretty"}));
    app.add_option("--out", opt.out_path, "output path (default stdout)");
    app.add_option("--budget-depth", opt.budget.multi_depth, "multi-layer search depth");
    app.add_option("--budget-support", opt.budget.support_cap, "max monomials per solve");
    app.add_option("--depth", opt.depth, "exploration depth");
    app.add_option("--sample-p", opt.sample_p_path, "JSON file with sample P polynomials");
    app.add_option("--horizon", opt.horizon, "orbit horizon for classify");

    std::string input = "-", input_b, grid_n, grid_s, grid_e, grid_w;
    bool batch = false, hyper = false;
    std::string res_a, res_b, res_poly, generators_path;
    int dr_count = 200;
    uint64_t dr_seed = 1;

    auto* c_reduce = app.add_subcommand("reduce", "elementary-reduction trace and certificate");
    c_reduce->add_option("input", input, "automorphism JSON (path or -)");
    c_reduce->add_flag("--batch", batch, "input is a JSON array of automorphisms");

    auto* c_verify = app.add_subcommand("verify", "tame-membership verdict");
    c_verify->add_option("input", input);

    auto* c_compose = app.add_subcommand("compose", "compose two automorphisms");
    c_compose->add_option("a", input)->required();
    c_compose->add_option("b", input_b)->required();

    auto* c_invert = app.add_subcommand("invert", "invert a word or an automorphism");
    c_invert->add_option("input", input);

    auto* c_explore = app.add_subcommand("explore", "explore a ball of the square complex");
    c_explore->add_option("--generators", generators_path, "JSON array of words");

    auto* c_classify = app.add_subcommand("classify", "skeleton-certified isometry type");
    c_classify->add_option("input", input);

    auto* c_grid = app.add_subcommand("grid", "build the 4x4 grid of univariate labels");
    c_grid->add_option("--n", grid_n, "N in C[x2], inline poly JSON")->required();
    c_grid->add_option("--s", grid_s, "S in C[x3]")->required();
    c_grid->add_option("--e", grid_e, "E in C[x4]")->required();
    c_grid->add_option("--w", grid_w, "W in C[x1]")->required();

    auto* c_linearize = app.add_subcommand("linearize", "mean-trick linearization");
    c_linearize->add_option("input", input);

    auto* c_resonance = app.add_subcommand("resonance", "resonance of two scalars");
    c_resonance->add_option("a", res_a)->required();
    c_resonance->add_option("b", res_b)->required();
    c_resonance->add_option("--poly", res_poly, "two-variable poly JSON to test");
    c_resonance->add_flag("--hyperelliptic", hyper, "emit the hyperelliptic construction");

    auto* c_examples = app.add_subcommand("examples", "named fixture automorphisms and words");

    auto* c_degree = app.add_subcommand("degree-report", "deg vs deg-bar comparison");
    c_degree->add_option("--count", dr_count, "sampled words");
    c_degree->add_option("--seed", dr_seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);
    opt.field = field_str == "qi" ? FieldMode::QI : FieldMode::Q;

    try {
        if (c_reduce->parsed()) return run_reduce(opt, input, batch);
        if (c_verify->parsed()) return run_verify(opt, input);
        if (c_compose->parsed()) return run_compose(opt, input, input_b);
        if (c_invert->parsed()) return run_invert(opt, input);
        if (c_explore->parsed()) return run_explore(opt, generators_path);
        if (c_classify->parsed()) return run_classify(opt, input);
        if (c_grid->parsed()) return run_grid(opt, grid_n, grid_s, grid_e, grid_w);
        if (c_linearize->parsed()) return run_linearize(opt, input);
        if (c_resonance->parsed()) return run_resonance(opt, res_a, res_b, res_poly, hyper);
        if (c_examples->parsed()) return run_examples(opt);
        if (c_degree->parsed()) return run_degree_report(opt, dr_count, dr_seed);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 2;
    }
    return 1;
}

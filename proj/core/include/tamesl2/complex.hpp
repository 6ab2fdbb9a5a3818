#pragma once

#include "tamesl2/tame.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace tamesl2 {

// Type-1 vertex [f1]: scalar orbit of a component, normalized so the
// DivisionOrder-leading coefficient is 1.
struct VertexT1 {
    Poly rep;
    bool operator==(const VertexT1& o) const { return rep == o.rep; }
};
VertexT1 canonical_t1(const Poly& p);

// Type-2 vertex [f1,f2]: GL2-orbit of a pair, canonical reduced echelon
// basis of the span under the DivisionOrder.
struct VertexT2 {
    Poly b0, b1;
    bool operator==(const VertexT2& o) const { return b0 == o.b0 && b1 == o.b1; }
};
VertexT2 canonical_t2(const Poly& p1, const Poly& p2);

// Type-3 vertex [f]: O4-orbit; no canonical form, equality is decided.
struct VertexT3 {
    TameAuto rep;
};
bool vertex_eq_t3(const TameAuto& f, const TameAuto& g);

using Vertex = std::variant<VertexT1, VertexT2, VertexT3>;

// g . [f] = [f o g^-1], re-canonicalized per type.
Vertex act(const TameWord& w, const Vertex& v);

// Reduced echelon basis of the span of a family of polynomials.
std::vector<Poly> span_echelon(std::vector<Poly> polys);

// Finite explored portion of the square complex. Vertex ids are global ints
// encoding (type, per-type index).
class SubComplex {
public:
    static int make_id(int type, int idx) { return (idx << 2) | type; }
    static int id_type(int id) { return id & 3; }
    static int id_index(int id) { return id >> 2; }

    int add_vertex(const Vertex& v); // dedupe, returns id
    std::optional<int> find_vertex(const Vertex& v) const;
    void add_edge(int a, int b);
    // square corners: type-1, its two type-2 neighbors, the type-3 vertex
    void add_square(int v1, int v2a, int v3, int v2b);

    // 9 vertices, 12 edges, 4 squares of the big square of f; orientation
    // bits for the type-2 vertices are set when det_sign is +1/-1 (the sign
    // of the linear part of a word producing f), 0 when unknown.
    void insert_big_square(const TameAuto& f, int det_sign = 0);

    const std::vector<VertexT1>& t1() const { return t1_; }
    const std::vector<VertexT2>& t2() const { return t2_; }
    const std::vector<VertexT3>& t3() const { return t3_; }
    size_t vertex_count() const { return t1_.size() + t2_.size() + t3_.size(); }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    const std::set<std::array<int, 4>>& squares() const { return squares_; }
    std::vector<int> all_vertex_ids() const;
    std::vector<int> neighbors(int id) const;
    const Vertex vertex(int id) const;
    std::optional<bool> t2_orientation(int idx) const { return t2_horizontal_[idx]; }
    // true when two orientation propagations disagreed (should never happen)
    bool orientation_conflict() const { return orientation_conflict_; }

    // BFS distance on the 1-skeleton, nullopt when unreachable
    std::optional<int> edge_distance(int a, int b) const;

private:
    std::vector<VertexT1> t1_;
    std::vector<VertexT2> t2_;
    std::vector<VertexT3> t3_;
    std::vector<std::optional<bool>> t2_horizontal_;
    bool orientation_conflict_ = false;
    std::map<std::string, int> t1_index_, t2_index_;
    std::unordered_map<std::string, std::vector<int>> t3_buckets_;
    std::set<std::pair<int, int>> edges_;
    std::set<std::array<int, 4>> squares_;
    mutable std::map<int, std::vector<int>> adjacency_;
    mutable bool adjacency_dirty_ = true;
    void rebuild_adjacency() const;
    void set_orientation(int t2_idx, bool horizontal);
};

SubComplex big_square(const TameAuto& f);

// Union of big squares over all words of length <= depth in the generator
// set: the given words, elementary moves with P drawn from sampleP (formal
// two-variable polynomials, instantiated in all four families), the Klein
// group and a fixed finite O4 sample. Deterministic for fixed inputs.
SubComplex explore(const std::vector<TameWord>& generators, int depth,
                   const std::vector<Poly>& sampleP);

struct GirthReport {
    int link_size = 0;
    std::optional<int> girth; // empty when the link is a forest
    bool girth_ge_4 = true;
    bool bipartite = true;         // the link graph is 2-colorable
    bool parts_match_types = true; // type-2 links: the parts are the types 1|3
};
GirthReport link_girth(const SubComplex& s, int vertex_id);

struct IntersectionReport {
    size_t pairs_checked = 0;
    size_t violations = 0;
    std::vector<std::pair<std::array<int, 4>, std::array<int, 4>>> witnesses;
    bool ok() const { return violations == 0; }
};
IntersectionReport square_intersection_report(const SubComplex& s);

struct GridReport {
    SubComplex complex;
    bool degenerate = false; // some labels coincided (e.g. zero inputs)
    size_t vertices = 0, edge_count = 0, square_count = 0;
};
// N in C[x2], S in C[x3], E in C[x4], W in C[x1]; wrong variables are
// rejected (the Jacobian obstruction of the corner squares).
GridReport grid_4x4(const Poly& n, const Poly& s, const Poly& e, const Poly& w);

struct SixGridSearch {
    bool found = false;
    size_t centers_tried = 0;
    std::vector<int> witness; // 49 vertex ids when found
};
// Exhaustive search for a 6x6 grid (7x7 vertex lattice) centered on an
// explored type-1 vertex.
SixGridSearch search_6x6(const SubComplex& s);

// --- isometry classification (skeleton-certified) -------------------------

enum class IsometryKind { Elliptic, Hyperbolic, Undetermined };

struct IsometryReport {
    IsometryKind kind = IsometryKind::Undetermined;
    // elliptic: the fixed vertex; hyperbolic: the axis base point
    std::optional<Vertex> witness;
    int translation_length = 0;        // skeleton length, hyperbolic case
    std::vector<int> orbit_distances;  // d(x, w^k x) for k = 1..
    size_t explored_vertices = 0;
};
IsometryReport classify_isometry(const TameWord& w, int horizon = 3);

} // namespace tamesl2

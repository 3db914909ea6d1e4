#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hurwitz/chevalley_weil.hpp"
#include "hurwitz/datum.hpp"

namespace hurwitz {

/// Vertices weighted by genus, half-edges with the involution tau and incidence; legs are the tau-fixed half-edges.
struct ModularGraph {
    std::vector<long> genus;         // per vertex
    std::vector<size_t> vertex_of;   // per half-edge
    std::vector<size_t> opposite;    // tau, per half-edge

    size_t vertex_count() const { return genus.size(); }
    size_t half_edge_count() const { return vertex_of.size(); }
    bool is_leg(size_t h) const { return opposite[h] == h; }
    size_t edge_count() const;
    size_t leg_count() const;
    bool connected() const;
    /// dim H_1 = E - V + (number of components).
    long betti() const;
    /// sum g_v + dim H_1 for a connected graph.
    Int arithmetic_genus() const;
    /// 2g - 2 + (edge half-edges) + (legs) > 0 at every vertex.
    bool stable() const;
};

/// Throws on a malformed graph; checks stability when asked.
void validate(const ModularGraph& g, bool require_stable = false);

/// A modular graph with an action of G and holonomy decorations (distinguished elements, 0 = trivial).
struct GGraph {
    ModularGraph graph;
    GroupPtr group;
    std::vector<std::vector<uint32_t>> half_edge_action;  // [x][h]
    std::vector<std::vector<uint32_t>> vertex_action;     // [x][v]
    std::vector<Elem> decor;                               // per half-edge

    /// Stabilizer of a half-edge / vertex.
    ElemSet half_edge_stabilizer(size_t h) const;
    ElemSet vertex_stabilizer(size_t v) const;
};

/// Extends the images of the group generators to the whole group; throws if they do not define an action.
GGraph act_by_generators(ModularGraph graph, GroupPtr group, const std::vector<std::vector<uint32_t>>& half_edge_images,
                         const std::vector<std::vector<uint32_t>>& vertex_images, std::vector<Elem> decor);

/// Checks connectedness, equivariance, the absence of inversions and the decoration rules.
void validate(const GGraph& gg);

struct GraphQuotient {
    ModularGraph quotient;                 // genus labels from Riemann-Hurwitz on vertex stabilizers
    std::vector<size_t> vertex_orbit;      // upstairs vertex -> quotient vertex
    std::vector<size_t> half_edge_orbit;   // upstairs half-edge -> quotient half-edge
    std::vector<size_t> vertex_rep;        // quotient vertex -> least upstairs vertex
    std::vector<size_t> half_edge_rep;     // quotient half-edge -> least upstairs half-edge
    Int upstairs_genus;                    // sum g_v + dim H_1 upstairs
    Int downstairs_genus;                  // same for the quotient
    HurwitzDatum datum;                    // one entry per orbit of legs with nontrivial holonomy
};

GraphQuotient quotient_and_genus(const GGraph& gg);

/// Gamma / K with the induced action of G / K and corestricted decorations (K normal).
GGraph quotient_by_normal(const GGraph& gg, const ElemSet& k, Projection* projection = nullptr);

/// Graph-of-groups description of a quotient vertex: stabilizer, quotient genus, leg holonomies in the stabilizer.
struct QuotientVertex {
    ElemSet stabilizer;
    long genus = 0;
    std::vector<Elem> legs;
};

/// Edge xH joins x G_source and x twist G_target; H is generated by the holonomy of the source half-edge.
struct QuotientEdge {
    size_t source = 0;
    size_t target = 0;
    Elem holonomy = 0;
    Elem twist = 0;
};

/// Builds Gamma from the quotient data; upstairs vertex genera come from Riemann-Hurwitz.
GGraph build_from_quotient(GroupPtr g, const std::vector<QuotientVertex>& vertices, const std::vector<QuotientEdge>& edges);

/// Star with k branches: center copies G, leaves G/H_i with legs [H_i, chi_i], [H_i, chi_i^-1]; H_i = <s_i>.
GGraph build_comb(GroupPtr g, const std::vector<Elem>& s);

struct SegmentSpec {
    ElemSet g1, g2;
    Elem holonomy = 0;  // H = <holonomy> inside G_1 cap G_2, chi on the G_1 branch
    long genus1 = 0, genus2 = 0;  // genera of C_i / G_i
    std::vector<Elem> legs1, legs2;
};
GGraph build_segment(GroupPtr g, const SegmentSpec& spec);

struct LoopSpec {
    ElemSet g0;
    Elem holonomy = 0;
    Elem g0_element = 0;  // g_0 outside G_0
    long genus = 0;       // genus of C_0 / G_0
    std::vector<Elem> legs;
    bool opposite_characters = true;  // require chi(g_0^-1 s g_0) = chi^-1(s)
};
GGraph build_loop(GroupPtr g, const LoopSpec& spec);

struct ExactnessReport {
    ElemSet decomposition;  // D
    ElemSet inertia;        // I
    bool inertia_in_decomposition = false;
    bool normal = false;
    long h1_upstairs = 0;
    long h1_quotient = 0;
    size_t abelianized_order = 0;  // |(G/D)_ab|
    bool composite_zero = false;
    bool surjective = false;
    bool exact_middle = false;
    bool exact() const { return inertia_in_decomposition && normal && composite_zero && surjective && exact_middle; }
};

/// D, I and the sequence H_1(Gamma) -> H_1(Gamma/G) -> (G/D)_ab -> 1 checked over Z.
ExactnessReport decomposition_inertia(const GGraph& gg);

struct LevelItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LevelReport {
    long n = 0;
    long genus = 0;
    long h1 = 0;
    size_t inertia_order = 0;
    size_t automorphism_index = 0;  // |Aut_{G,pi}| / |G| from the edge-compatibility sequence
    std::vector<LevelItem> items;
    bool pass() const;
};

/// Compares D, I, G_i, I_i with the (Z/n)-power shapes expected for a level-n structure, G = (Z/n)^(2g).
LevelReport level_structure_check(const GGraph& gg, long n);

/// Level-n examples: one loop on a genus g-1 vertex, and two vertices of genera g1, g2 joined by two edges.
GGraph level_loop_example(long n, long genus);
GGraph level_two_edge_example(long n, long genus1, long genus2);

enum class BoundaryShape { segment, loop, both };

struct BoundaryNode {
    long e = 1;      // isotropy order; 1 means a node of type R
    long nu1 = 0, nu2 = 0;
    long a = 0, b = 0;  // symbol, a + b = n at NS nodes
    bool ns() const { return e > 1; }
};

struct BoundaryComponent {
    BoundaryShape shape = BoundaryShape::segment;
    long g1 = 0, g2 = 0;               // segment genera; loop: genus of the normalization in g1
    std::vector<size_t> part1, part2;  // branch point indices; loop: all in part1
    long n1 = 0, n2 = 0;               // |G_1|, |G_2|; loop: n_0 in n1
    BoundaryNode node;
    std::string label() const;
    bool operator<(const BoundaryComponent& o) const;
    bool operator==(const BoundaryComponent& o) const;
};

/// Swaps the two sides of a segment into the canonical order; loops are returned unchanged.
BoundaryComponent canonical_component(BoundaryComponent c);

/// Codimension-one boundary components for G = Z/n with branch points (e_i, nu_i), sorted.
std::vector<BoundaryComponent> boundary_components(long n, long base_genus, const std::vector<CyclicBranch>& branches,
                                                   BoundaryShape shape = BoundaryShape::both);

struct RamificationTerm {
    std::string label;
    long coefficient = 0;
};

/// (|H| - 1) on every NS component.
std::vector<RamificationTerm> discriminant_ramification(const std::vector<BoundaryComponent>& components);

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith normal form).
std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m);

}  // namespace hurwitz

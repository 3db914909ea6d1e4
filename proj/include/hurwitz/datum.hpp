#pragma once

#include <map>
#include <vector>

#include "hurwitz/arith.hpp"
#include "hurwitz/group.hpp"

namespace hurwitz {

/// Pair form [H, chi] of a holonomy class: chi(generator) = zeta_e^k for the least-index generator of H.
struct HolonomyPair {
    ElemSet subgroup;
    Elem generator = 0;
    long order = 1;
    long k = 0;  // 0 only for the trivial class
    bool operator==(const HolonomyPair& o) const = default;
};

/// Element s with chi(s) = zeta_e; pairs [H, chi] correspond to conjugacy classes of such elements.
Elem holonomy_element(const Group& g, Elem generator, long k);
/// Canonical (conjugation-minimal) pair form of the class of s.
HolonomyPair holonomy_pair(const Group& g, Elem s);
/// Class representative (least member) of the class of s.
inline Elem canonical_holonomy(const Group& g, Elem s) { return g.classes()[g.class_of(s)].representative; }
/// Conjugation stabilizer of a holonomy class: the centralizer of H.
ElemSet holonomy_stabilizer(const Group& g, Elem s);

/// Ramification datum xi = sum b_i [H_i, chi_i], stored as class representatives with multiplicities.
struct HurwitzDatum {
    GroupPtr group;
    std::map<Elem, long> classes;

    HurwitzDatum() = default;
    explicit HurwitzDatum(GroupPtr g) : group(std::move(g)) {}

    void add(Elem s, long mult = 1);
    long degree() const;
    bool has_trivial() const { return classes.count(0) > 0; }
    /// The branch entries repeated by multiplicity, in class order.
    std::vector<Elem> entries() const;
    bool operator==(const HurwitzDatum& o) const { return classes == o.classes; }
};

/// Ind_J^G for a datum on J embedded in G.
HurwitzDatum induce(const HurwitzDatum& xi, const Embedding& j, GroupPtr g);
/// Res_J^G: sum over double cosets J\\G/H of [J cap gHg^-1, chi^g restricted].
HurwitzDatum restrict_datum(const HurwitzDatum& xi, const Embedding& j);
/// Cores: [H, chi] -> [H/(H cap K), chi^{|H cap K|}] in G/K; drop_trivial gives the "_1" truncation.
HurwitzDatum corestrict(const HurwitzDatum& xi, const Projection& p, bool drop_trivial = false);
/// theta . [H, chi] = [theta(H), chi theta^-1].
HurwitzDatum apply_automorphism(const HurwitzDatum& xi, const Automorphism& theta);

struct GenusData {
    Int genus;
    Int branch_degree;  // B = |G| sum b_i (1 - 1/e_i)
    long hurwitz_dimension;  // 3g' - 3 + b
};

GenusData genus_from_datum(long base_genus, const HurwitzDatum& xi);

/// Options for enumerating genus-0 data over an abelian group.
struct EnumerateOptions {
    bool labeled = false;     // tuples on b labeled points instead of multisets
    bool modulo_out = false;  // identify data in the same Aut(G)-orbit
};

/// Degree-b sequences of nontrivial elements with product 1 generating G (abelian G, g' = 0).
/// Unlabeled results are nondecreasing; orbit representatives are lexicographically least.
std::vector<std::vector<Elem>> enumerate_data(const Group& g, long b, const EnumerateOptions& opts = {});

/// Monodromy type (G, H, xi) with H core-free.
struct MonodromyType {
    GroupPtr group;
    ElemSet subgroup;
    HurwitzDatum datum;
};

MonodromyType make_monodromy_type(GroupPtr g, ElemSet h, HurwitzDatum xi);

struct MonodromyAutomorphisms {
    std::vector<Automorphism> aut;  // Aut(m)
    size_t delta_order;             // |Aut(m)| / |H|
};

MonodromyAutomorphisms monodromy_automorphisms(const MonodromyType& m);

/// Local indices d_j at a node with cyclic stabilizer I = <s>: |I| / |I cap g^-1 H g| over H\\G/I.
std::vector<long> local_indices(const Group& g, const ElemSet& h, Elem s);
/// Product formula prod_i (prod_j d_ij) / lcm_j d_ij.
Int closure_count(const std::vector<std::vector<long>>& d);
/// Orbit count of prod_i mu_{d_i} acting on prod_{i,j} mu_{d_ij} by zeta_ij -> eps_i^{d_i/d_ij} zeta_ij.
Int closure_count_direct(const std::vector<std::vector<long>>& d);

struct InducedRamification {
    long degree;                                 // [G:H]
    std::vector<std::vector<long>> cycle_types;  // per branch entry, sorted cycle lengths on G/H
    Int genus;
};

InducedRamification induced_ramification(long base_genus, const HurwitzDatum& xi, const ElemSet& h);

}  // namespace hurwitz

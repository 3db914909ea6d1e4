#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hurwitz/perm.hpp"

namespace hurwitz {

using Elem = uint32_t;
using ElemSet = std::vector<Elem>;  // sorted element indices

/// Size limits; configuration rather than constants.
struct Bounds {
    size_t max_points = 64;
    size_t max_order = 100000;
    size_t max_aut_order = 1000;
    size_t table_limit = 2048;  // multiplication table is cached below this order
};

struct ConjugacyClass {
    Elem representative;  // minimal member
    ElemSet members;
};

struct CyclicSubgroup {
    Elem generator;  // least-index generator
    long order;
    ElemSet members;
};

/// A finite permutation group with its elements in lexicographic order of images.
/// Element 0 is always the identity.
class Group {
public:
    static Group generate(const std::vector<Perm>& generators, const Bounds& bounds = {}, size_t degree = 0);
    static Group cyclic(long n, const Bounds& bounds = {});
    static Group dihedral(long n, const Bounds& bounds = {});
    static Group symmetric(long n, const Bounds& bounds = {});
    static Group alternating(long n, const Bounds& bounds = {});
    static Group abelian(const std::vector<long>& invariants, const Bounds& bounds = {});
    /// "S4", "A5", "C12", "D5", "Ab[2,2,3]".
    static Group named(const std::string& name, const Bounds& bounds = {});

    size_t order() const { return elems_.size(); }
    size_t degree() const { return degree_; }
    long exponent() const { return exponent_; }
    const Bounds& bounds() const { return bounds_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const Perm& element(Elem a) const { return elems_[a]; }
    const std::vector<Perm>& elements() const { return elems_; }
    const std::vector<Elem>& generators() const { return gens_; }
    bool contains(const Perm& p) const;
    Elem index_of(const Perm& p) const;
    Elem parse_element(const std::string& cycles) const;

    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const { return inv_[a]; }
    Elem pow(Elem a, long k) const;
    /// g x g^-1
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
    Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }
    long element_order(Elem a) const { return order_[a]; }
    bool is_abelian() const;

    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    int class_of(Elem a) const { return class_of_[a]; }
    size_t centralizer_order(Elem a) const { return order() / classes_[class_of_[a]].members.size(); }

    ElemSet generated(const std::vector<Elem>& gens) const;
    bool is_subgroup(const ElemSet& h) const;
    bool is_normal(const ElemSet& h) const;
    ElemSet normal_closure(const std::vector<Elem>& gens) const;
    ElemSet normalizer(const ElemSet& h) const;
    ElemSet centralizer(const ElemSet& s) const;
    ElemSet conjugate_set(Elem g, const ElemSet& s) const;
    ElemSet intersection(const ElemSet& a, const ElemSet& b) const;
    bool subset(const ElemSet& a, const ElemSet& b) const;
    ElemSet derived_subgroup() const;
    /// Left cosets gH as sorted member lists, ordered by least member.
    std::vector<ElemSet> left_cosets(const ElemSet& h) const;
    /// Index of the left coset containing each element.
    std::vector<int> left_coset_index(const ElemSet& h) const;
    /// A short generating set found greedily.
    std::vector<Elem> small_generating_set() const;

    const std::vector<CyclicSubgroup>& cyclic_subgroups() const { return cyclic_; }
    int cyclic_subgroup_index(const ElemSet& members) const;

private:
    Group() = default;
    void build(std::vector<Perm> generators, const Bounds& bounds, size_t degree);

    Bounds bounds_;
    std::string name_;
    size_t degree_ = 0;
    long exponent_ = 1;
    std::vector<Perm> elems_;
    std::vector<Elem> gens_;
    std::unordered_map<Perm, Elem, PermHash> index_;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
    std::vector<long> order_;
    std::vector<ConjugacyClass> classes_;
    std::vector<int> class_of_;
    std::vector<CyclicSubgroup> cyclic_;
    std::unordered_map<Elem, int> cyclic_by_least_generator_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Moebius function on the cyclic-subgroup lattice: mu([K:H]) for H in K, 0 otherwise.
int lattice_mobius(const Group& g, const CyclicSubgroup& h, const CyclicSubgroup& k);

/// An automorphism as the full image table of element indices.
struct Automorphism {
    std::vector<Elem> image;
    bool inner = false;
};

/// Brute-force enumeration of Aut(G); the identity comes first.
std::vector<Automorphism> automorphisms(const Group& g);

/// A subgroup realized as its own permutation group.
struct Embedding {
    GroupPtr sub;
    std::vector<Elem> to_parent;  // indexed by elements of sub
};
Embedding subgroup_group(const Group& g, const ElemSet& h);

/// G/K acting on the left cosets of K.
struct Projection {
    GroupPtr quotient;
    std::vector<Elem> image;  // indexed by elements of g
};
Projection quotient_group(const Group& g, const ElemSet& k);

}  // namespace hurwitz

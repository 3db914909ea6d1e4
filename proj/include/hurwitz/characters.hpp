#pragma once

#include <memory>
#include <vector>

#include "hurwitz/cyclotomic.hpp"
#include "hurwitz/group.hpp"

namespace hurwitz {

/// Values on the classes of a group, in Q(zeta_m) with m the group exponent.
using ClassFunction = std::vector<Cyclotomic>;

struct CharacterTable {
    long modulus = 1;
    std::vector<ClassFunction> rows;  // trivial character first
    std::vector<long> degrees;
    /// eigen[v][c][r]: multiplicity of zeta_o^r as an eigenvalue of rho_v(x), x the class representative of order o.
    std::vector<std::vector<std::vector<long>>> eigen;

    size_t size() const { return rows.size(); }
    /// Multiplicity of the eigenvalue zeta_e^alpha of rho_v(s), e the order of s.
    long eigen_multiplicity(const Group& g, size_t v, Elem s, long alpha) const;
};

/// Burnside-Dixon: simultaneous eigenvectors of the class matrices over F_p, lifted to Q(zeta_m).
CharacterTable character_table(const Group& g);

/// <a, b> = (1/|G|) sum_g a(g) b(g^-1).
Rat inner_product(const Group& g, const ClassFunction& a, const ClassFunction& b);

/// A function on the members of a subgroup, indexed like the member list.
using SubgroupFunction = std::vector<Cyclotomic>;

SubgroupFunction restrict_to(const Group& g, const ClassFunction& chi, const ElemSet& h);
ClassFunction induce_from(const Group& g, const SubgroupFunction& phi, const ElemSet& h);
Rat inner_product_on(const Group& g, const ElemSet& h, const SubgroupFunction& a, const SubgroupFunction& b);

/// The regular character and the trivial character as class functions.
ClassFunction regular_character(const Group& g);

}  // namespace hurwitz

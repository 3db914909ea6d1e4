#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hurwitz/characters.hpp"
#include "hurwitz/datum.hpp"

namespace hurwitz {

/// chi(E_v) for L = omega^m, one entry per row of the table.
std::vector<Int> cw_euler_characteristics(long base_genus, const HurwitzDatum& xi, long m, const CharacterTable& t);

/// Multiplicity of each irreducible in H^0(C, omega^m). m >= 2 needs genus >= 2; m = 1 works in any genus.
std::vector<Int> cw_multiplicities(long base_genus, const HurwitzDatum& xi, long m, const CharacterTable& t);

/// Branch point of a cyclic cover of order n: stabilizer order e and inverse exponent nu (nu k = 1 mod e).
struct CyclicBranch {
    long e;
    long nu;
};

/// Cyclic fast path: multiplicity of chi^l (chi(sigma) = zeta_n) in H^0(C, omega^m), l = 0..n-1.
std::vector<Int> cw_cyclic(long n, long base_genus, const std::vector<CyclicBranch>& branches, long m);

/// Branch data of a datum on a cyclic group relative to the generator sigma.
std::vector<CyclicBranch> cyclic_branches(const HurwitzDatum& xi, Elem sigma);

/// Ranks of the isotypic pieces of the Hodge bundle (the m = 1 multiplicities).
std::vector<Int> hodge_ranks(long base_genus, const HurwitzDatum& xi, const CharacterTable& t);

using CwOracle = std::function<Int(long m, size_t v)>;

struct InversionResult {
    HurwitzDatum datum;
    long base_genus = 0;
    Int genus;
    std::vector<std::pair<long, size_t>> queries;  // distinct (m, v) in first-query order
};

/// Recovers the datum from multiplicities via fixed-point counts of cyclic subgroups.
InversionResult invert_cw(const CwOracle& oracle, GroupPtr g, const CharacterTable& t);

}  // namespace hurwitz

#pragma once

#include <vector>

#include "hurwitz/datum.hpp"

namespace hurwitz {

/// (a_1..a_g', b_1..b_g', sigma_1..sigma_b) flattened.
using Tuple = std::vector<Elem>;

struct NielsenOptions {
    size_t max_nodes = 50'000'000;  // enumeration search budget
    size_t max_states = 5'000'000;  // orbit closure memory budget
    unsigned jobs = 1;
    bool extended_mcg = false;    // handle twists for g' >= 1 (experimental)
    bool reversed_order = false;  // alternative canonical tie-break, for cross-checks
    bool verify_moves = false;    // check relation, generation and classes after every move
};

/// Least simultaneous conjugate of t.
Tuple canonical_tuple(const Group& g, const Tuple& t, bool reversed_order = false);

/// Generating tuples with the surface relation and sigma_i in the class of the i-th entry of xi, up to conjugation.
std::vector<Tuple> enumerate_nielsen(long base_genus, const HurwitzDatum& xi, const NielsenOptions& opts = {});

/// Braid move S_i (inverse = false) or its inverse on the sigma block; i is 0-based within the block.
Tuple braid_move(const Group& g, long base_genus, const Tuple& t, size_t i, bool inverse);

struct NielsenResult {
    std::vector<Tuple> tuples;       // canonical representatives, sorted
    std::vector<size_t> orbit_of;    // orbit index of each tuple
    std::vector<size_t> orbit_sizes;  // tuples per orbit, orbits ordered by least member
    size_t nielsen_number = 0;
    size_t hurwitz_number = 0;
    Rat weighted_count;  // sum over tuples of 1/|centralizer|, i.e. |Ni| / |G|
    bool experimental = false;  // extended mapping-class moves were used
};

/// Orbits of the colored braid group (and handle twists when enabled) on the Nielsen class.
NielsenResult nielsen_orbits(long base_genus, const HurwitzDatum& xi, const NielsenOptions& opts = {});

}  // namespace hurwitz

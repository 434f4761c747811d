#pragma once

#include <cstdint>
#include <vector>

#include "maxsym/matrix.hpp"

namespace maxsym {

/// Order of <gens> by breadth-first enumeration of all elements. Throws
/// std::length_error once more than `limit` elements have been found.
std::uint64_t closure_order(const std::vector<FpMatrix>& gens, std::uint64_t limit = 5'000'000);

/// Order of <gens> via a Schreier-Sims stabiliser chain on the base
/// e_1, ..., e_d of row vectors. Throws std::overflow_error above 2^64.
std::uint64_t schreier_sims_order(const std::vector<FpMatrix>& gens);

/// Order of the group generated by permutations of {0..n-1}.
std::uint64_t permutation_group_order(const std::vector<std::vector<std::size_t>>& perms);

}  // namespace maxsym

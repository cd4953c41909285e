#pragma once

// Internal: set cover over a universe of at most 64 elements, each candidate
// set a bitmask. Shared by the covering-number and doubling computations.

#include <cstdint>
#include <span>
#include <vector>

namespace assouad::detail {

using Mask = std::uint64_t;

/// Maximal cliques of the graph whose vertex v has neighbour mask adj[v]
/// (no self loops), restricted to `vertices`. Bron-Kerbosch with pivoting.
/// Output order is deterministic.
std::vector<Mask> maximal_cliques(std::span<const Mask> adj, Mask vertices);

/// Drops candidates contained in another candidate (keeps the first of equal
/// sets). Order of survivors is preserved.
std::vector<Mask> remove_dominated(std::span<const Mask> sets);

/// Greedy cover: repeatedly the set covering most uncovered elements, ties
/// broken by the lexicographically smallest element list. Returns chosen
/// candidate positions.
std::vector<std::size_t> greedy_set_cover(Mask universe, std::span<const Mask> sets);

/// Minimum cover by branch and bound: branch on the uncovered element with
/// the fewest candidates, bound with a greedy packing of elements that no
/// single candidate can cover together. `incumbent` seeds the upper bound.
std::vector<std::size_t> exact_set_cover(Mask universe, std::span<const Mask> sets,
                                         std::vector<std::size_t> incumbent);

/// True when a's sorted element list is lexicographically before b's.
bool lex_less(Mask a, Mask b);

}  // namespace assouad::detail

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tracematch {

/// Bipartite graph given as adjacency lists from left vertices to right
/// vertex indices in [0, n_right).
struct BipartiteGraph {
    std::size_t n_right = 0;
    std::vector<std::vector<std::size_t>> adj;

    std::size_t n_left() const { return adj.size(); }
};

/// One maximum matching (Kuhn's augmenting paths); entry i is the right
/// partner of left vertex i, or nullopt.
std::vector<std::optional<std::size_t>> maximum_matching(const BipartiteGraph& g);

/// Calls `visit` once for every matching that covers all left vertices, in a
/// deterministic order, until `visit` returns false. Uses binary partition:
/// for a left vertex u with two or more edges and current partner v, first
/// the matchings using (u,v), then those avoiding it (found by re-augmenting
/// from u). Throws EnumerationBudgetExceeded once more than `budget`
/// matchings would be visited. Returns the number of matchings visited.
std::uint64_t enumerate_saturating_matchings(const BipartiteGraph& g,
                                             const std::function<bool(const std::vector<std::size_t>&)>& visit,
                                             std::uint64_t budget);

/// TRACEMATCH_ENUM_BUDGET if set, otherwise 10^6.
std::uint64_t default_enumeration_budget();

}  // namespace tracematch

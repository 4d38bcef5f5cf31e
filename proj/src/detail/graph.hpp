#pragma once

#include <cstddef>
#include <vector>

namespace pomodel::detail {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Tarjan, iterative. Components come out in reverse topological order,
/// each sorted.
std::vector<std::vector<std::size_t>>
strongly_connected_components(const Adjacency &adj);

/// Marks every node reachable from `sources` (sources included).
std::vector<char> reachable_from(const Adjacency &adj,
                                 const std::vector<std::size_t> &sources);

Adjacency reversed(const Adjacency &adj);

} // namespace pomodel::detail

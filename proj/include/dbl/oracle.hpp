#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dbl/graph.hpp"

namespace dbl {

/// Index-free reachability by plain forward BFS. Reflexive: reach(u, u) is true.
bool oracle_reach(const DynamicGraph& g, VertexId u, VertexId v);

/// Bidirectional BFS (B-BFS). Alternates a forward frontier from u and a
/// backward frontier from v, always growing the smaller one.
bool bidirectional_bfs(const DynamicGraph& g, VertexId u, VertexId v);

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Hop distances from `source` along edges (or reversed edges). Stops after
/// `max_hops` levels; vertices beyond stay kUnreached.
std::vector<std::uint32_t> bfs_distances(const DynamicGraph& g, VertexId source,
                                         std::uint32_t max_hops = kUnreached,
                                         bool reverse = false);

/// Marks every vertex reachable from `source` (source included).
std::vector<bool> reachable_set(const DynamicGraph& g, VertexId source, bool reverse = false);

/// Strongly connected component id per vertex (iterative Tarjan). Ids are
/// dense, in reverse topological order of the condensation.
std::vector<std::uint32_t> strongly_connected_components(const DynamicGraph& g);

} // namespace dbl

#pragma once
// Shared fixtures for the test binaries.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <utility>
#include <vector>

#include "dbl/graph.hpp"
#include "dbl/index.hpp"

namespace dbl::test {

/// Vertex vN of the running example is id N-1.
constexpr VertexId v(int n) { return static_cast<VertexId>(n - 1); }

/// The 11-vertex running example. Sources v1 v2 v3, sinks v10 v11, one
/// nontrivial SCC {v5, v6, v9}.
inline DynamicGraph example_graph() {
    const std::vector<std::pair<VertexId, VertexId>> edges = {
        {v(1), v(4)}, {v(4), v(8)}, {v(2), v(5)},  {v(2), v(6)}, {v(5), v(6)}, {v(5), v(8)},
        {v(6), v(9)}, {v(9), v(11)}, {v(9), v(5)}, {v(8), v(10)}, {v(3), v(7)}, {v(7), v(11)},
    };
    return DynamicGraph::from_edges(11, edges);
}

/// Landmarks {v5, v8}; two leaf buckets with v1, v10 in bucket 0 and
/// v2, v3, v11 in bucket 1.
inline DblIndex example_index(const DynamicGraph& g) {
    IndexConfig cfg;
    cfg.k = 2;
    cfg.k_prime = 2;
    std::vector<std::uint32_t> bucket(11, kNoBucket);
    bucket[v(1)] = 0;
    bucket[v(10)] = 0;
    bucket[v(2)] = 1;
    bucket[v(3)] = 1;
    bucket[v(11)] = 1;
    auto leaves = make_leaf_sets({v(1), v(2), v(3)}, {v(10), v(11)}, bucket);
    return build_index(g, cfg, LandmarkSet({v(5), v(8)}), std::move(leaves));
}

/// Bit positions set in a label.
inline std::set<std::uint32_t> bits(ConstLabelView label) {
    std::set<std::uint32_t> out;
    for (std::uint32_t i = 0; i < label.size() * 64; ++i)
        if (test_bit(label, i)) out.insert(i);
    return out;
}

inline std::set<std::uint32_t> set_of(std::initializer_list<std::uint32_t> xs) { return {xs}; }

/// Reflexive transitive closure by Floyd-Warshall, independent of any BFS code.
inline std::vector<std::vector<bool>> closure(const DynamicGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (VertexId u = 0; u < n; ++u) {
        r[u][u] = true;
        for (VertexId w : g.successors(u)) r[u][w] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

} // namespace dbl::test

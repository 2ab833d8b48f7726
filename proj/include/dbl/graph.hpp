#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dbl {

using VertexId = std::uint32_t;

/// Mutable directed graph with forward and reverse adjacency.
///
/// Adjacency lists keep insertion order. Parallel edges are collapsed: adding
/// an edge that already exists leaves the graph untouched. Self-loops are
/// stored like any other edge.
class DynamicGraph {
public:
    DynamicGraph() = default;
    explicit DynamicGraph(std::size_t vertex_count);

    /// Bulk construction. Duplicates collapse; first occurrence fixes the order.
    static DynamicGraph from_edges(std::size_t vertex_count,
                                   std::span<const std::pair<VertexId, VertexId>> edges);

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    VertexId add_vertex();

    /// Returns false if the edge was already present. Throws std::out_of_range
    /// on a bad id.
    bool add_edge(VertexId u, VertexId v);
    bool remove_edge(VertexId u, VertexId v);
    bool has_edge(VertexId u, VertexId v) const;

    std::span<const VertexId> successors(VertexId u) const { return out_[u]; }
    std::span<const VertexId> predecessors(VertexId v) const { return in_[v]; }
    std::size_t out_degree(VertexId u) const { return out_[u].size(); }
    std::size_t in_degree(VertexId v) const { return in_[v].size(); }

    /// Full scan of the symmetry and no-duplicate invariants.
    bool check_consistency() const;

    friend bool operator==(const DynamicGraph&, const DynamicGraph&) = default;

private:
    void check_range(VertexId u, VertexId v) const;

    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::size_t edge_count_ = 0;
};

} // namespace dbl

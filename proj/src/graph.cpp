#include "dbl/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace dbl {

DynamicGraph::DynamicGraph(std::size_t vertex_count) : out_(vertex_count), in_(vertex_count) {}

DynamicGraph DynamicGraph::from_edges(std::size_t vertex_count,
                                      std::span<const std::pair<VertexId, VertexId>> edges) {
    DynamicGraph g(vertex_count);
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    std::vector<bool> keep(edges.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || edges[order[i]] != edges[order[i - 1]]) keep[order[i]] = true;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!keep[i]) continue;
        auto [u, v] = edges[i];
        g.check_range(u, v);
        g.out_[u].push_back(v);
        g.in_[v].push_back(u);
        ++g.edge_count_;
    }
    return g;
}

VertexId DynamicGraph::add_vertex() {
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<VertexId>(out_.size() - 1);
}

void DynamicGraph::check_range(VertexId u, VertexId v) const {
    if (u >= vertex_count() || v >= vertex_count()) {
        throw std::out_of_range("vertex id out of range: (" + std::to_string(u) + ", " +
                                std::to_string(v) + ") with n=" + std::to_string(vertex_count()));
    }
}

bool DynamicGraph::has_edge(VertexId u, VertexId v) const {
    check_range(u, v);
    // scan whichever side is shorter
    if (out_[u].size() <= in_[v].size()) {
        return std::find(out_[u].begin(), out_[u].end(), v) != out_[u].end();
    }
    return std::find(in_[v].begin(), in_[v].end(), u) != in_[v].end();
}

bool DynamicGraph::add_edge(VertexId u, VertexId v) {
    if (has_edge(u, v)) return false;
    out_[u].push_back(v);
    in_[v].push_back(u);
    ++edge_count_;
    return true;
}

bool DynamicGraph::remove_edge(VertexId u, VertexId v) {
    check_range(u, v);
    auto& succ = out_[u];
    auto it = std::find(succ.begin(), succ.end(), v);
    if (it == succ.end()) return false;
    succ.erase(it);
    auto& pred = in_[v];
    pred.erase(std::find(pred.begin(), pred.end(), u));
    --edge_count_;
    return true;
}

bool DynamicGraph::check_consistency() const {
    if (out_.size() != in_.size()) return false;
    std::size_t out_total = 0;
    std::size_t in_total = 0;
    const auto n = vertex_count();
    for (std::size_t u = 0; u < n; ++u) {
        std::unordered_set<VertexId> seen;
        for (VertexId v : out_[u]) {
            if (v >= n || !seen.insert(v).second) return false;
            const auto& pred = in_[v];
            if (std::count(pred.begin(), pred.end(), static_cast<VertexId>(u)) != 1) return false;
        }
        out_total += out_[u].size();
        seen.clear();
        for (VertexId p : in_[u]) {
            if (p >= n || !seen.insert(p).second) return false;
            const auto& succ = out_[p];
            if (std::count(succ.begin(), succ.end(), static_cast<VertexId>(u)) != 1) return false;
        }
        in_total += in_[u].size();
    }
    return out_total == edge_count_ && in_total == edge_count_;
}

} // namespace dbl

#include "dbl/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dbl {
namespace {

void check_ids(const DynamicGraph& g, VertexId u, VertexId v) {
    if (u >= g.vertex_count() || v >= g.vertex_count()) {
        throw std::out_of_range("vertex id out of range");
    }
}

} // namespace

bool oracle_reach(const DynamicGraph& g, VertexId u, VertexId v) {
    check_ids(g, u, v);
    if (u == v) return true;
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> queue{u};
    seen[u] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (VertexId x : g.successors(queue[head])) {
            if (x == v) return true;
            if (!seen[x]) {
                seen[x] = true;
                queue.push_back(x);
            }
        }
    }
    return false;
}

bool bidirectional_bfs(const DynamicGraph& g, VertexId u, VertexId v) {
    check_ids(g, u, v);
    if (u == v) return true;

    // 0 = unseen, 1 = seen from u, 2 = seen from v
    std::vector<std::uint8_t> side(g.vertex_count(), 0);
    std::vector<VertexId> fwd{u};
    std::vector<VertexId> bwd{v};
    std::vector<VertexId> next;
    side[u] = 1;
    side[v] = 2;

    while (!fwd.empty() && !bwd.empty()) {
        const bool forward = fwd.size() <= bwd.size();
        auto& frontier = forward ? fwd : bwd;
        const std::uint8_t mine = forward ? 1 : 2;
        next.clear();
        for (VertexId x : frontier) {
            auto nbrs = forward ? g.successors(x) : g.predecessors(x);
            for (VertexId y : nbrs) {
                if (side[y] == mine) continue;
                if (side[y] != 0) return true;
                side[y] = mine;
                next.push_back(y);
            }
        }
        frontier.swap(next);
    }
    return false;
}

std::vector<std::uint32_t> bfs_distances(const DynamicGraph& g, VertexId source,
                                         std::uint32_t max_hops, bool reverse) {
    std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
    std::vector<VertexId> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId x = queue[head];
        if (dist[x] >= max_hops) continue;
        auto nbrs = reverse ? g.predecessors(x) : g.successors(x);
        for (VertexId y : nbrs) {
            if (dist[y] != kUnreached) continue;
            dist[y] = dist[x] + 1;
            queue.push_back(y);
        }
    }
    return dist;
}

std::vector<bool> reachable_set(const DynamicGraph& g, VertexId source, bool reverse) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> queue{source};
    seen[source] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto nbrs = reverse ? g.predecessors(queue[head]) : g.successors(queue[head]);
        for (VertexId y : nbrs) {
            if (!seen[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    return seen;
}

std::vector<std::uint32_t> strongly_connected_components(const DynamicGraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::uint32_t kUnset = kUnreached;
    std::vector<std::uint32_t> index(n, kUnset);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<std::uint32_t> comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<VertexId> stack;
    // call stack frames: (vertex, next successor position)
    std::vector<std::pair<VertexId, std::size_t>> frames;
    std::uint32_t counter = 0;
    std::uint32_t comp_count = 0;

    for (VertexId root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [x, pos] = frames.back();
            auto succ = g.successors(x);
            if (pos < succ.size()) {
                const VertexId y = succ[pos++];
                if (index[y] == kUnset) {
                    index[y] = low[y] = counter++;
                    stack.push_back(y);
                    on_stack[y] = true;
                    frames.emplace_back(y, 0);
                } else if (on_stack[y]) {
                    low[x] = std::min(low[x], index[y]);
                }
                continue;
            }
            const VertexId done = x;
            frames.pop_back();
            if (!frames.empty()) {
                const VertexId parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                VertexId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comp_count;
                } while (w != done);
                ++comp_count;
            }
        }
    }
    return comp;
}

} // namespace dbl

#include "dbl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

namespace dbl {
namespace {

std::uint64_t edge_key(VertexId u, VertexId v) { return (std::uint64_t{u} << 32) | v; }

std::size_t target_edges(std::size_t n, double avg_degree) {
    const auto wanted = static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree));
    const std::size_t cap = n < 2 ? 0 : n * (n - 1);
    return std::min(wanted, cap);
}

/// Draws `m` distinct non-loop edges from `draw` and builds the graph. Callers
/// keep `m` well below the number of possible edges.
template <typename Draw>
DynamicGraph sample_edges(std::size_t n, std::size_t m, Draw&& draw) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    while (edges.size() < m) {
        auto [u, v] = draw();
        if (u == v || !seen.insert(edge_key(u, v)).second) continue;
        edges.emplace_back(u, v);
    }
    return DynamicGraph::from_edges(n, edges);
}

} // namespace

DynamicGraph random_digraph(std::size_t n, double avg_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t m = target_edges(n, avg_degree);
    if (n >= 2 && m * 2 > n * (n - 1)) {
        std::vector<std::pair<VertexId, VertexId>> all;
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = 0; v < n; ++v)
                if (u != v) all.emplace_back(u, v);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(m);
        return DynamicGraph::from_edges(n, all);
    }
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    return sample_edges(n, m, [&] { return std::pair{pick(rng), pick(rng)}; });
}

DynamicGraph random_dag(std::size_t n, double avg_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<VertexId> rank(n);
    std::iota(rank.begin(), rank.end(), VertexId{0});
    std::shuffle(rank.begin(), rank.end(), rng);
    const std::size_t m = std::min(target_edges(n, avg_degree), n < 2 ? 0 : n * (n - 1) / 2);
    auto orient = [&](VertexId a, VertexId b) {
        return rank[a] < rank[b] ? std::pair{a, b} : std::pair{b, a};
    };
    if (n >= 2 && m * 4 > n * (n - 1)) {
        std::vector<std::pair<VertexId, VertexId>> all;
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = a + 1; b < n; ++b) all.push_back(orient(a, b));
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(m);
        return DynamicGraph::from_edges(n, all);
    }
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    return sample_edges(n, m, [&] { return orient(pick(rng), pick(rng)); });
}

DynamicGraph power_law_digraph(std::size_t n, double avg_degree, double gamma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double exponent = -1.0 / (gamma - 1.0);
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i) weight[i] = std::pow(static_cast<double>(i + 1), exponent);

    std::vector<VertexId> out_perm(n);
    std::vector<VertexId> in_perm(n);
    std::iota(out_perm.begin(), out_perm.end(), VertexId{0});
    std::iota(in_perm.begin(), in_perm.end(), VertexId{0});
    std::shuffle(out_perm.begin(), out_perm.end(), rng);
    std::shuffle(in_perm.begin(), in_perm.end(), rng);

    std::discrete_distribution<std::size_t> rank(weight.begin(), weight.end());
    const std::size_t m = std::min(target_edges(n, avg_degree), n * (n - 1) / 4);
    return sample_edges(n, m, [&] { return std::pair{out_perm[rank(rng)], in_perm[rank(rng)]}; });
}

std::string FamilyGraph::describe() const {
    return "n=" + std::to_string(graph.vertex_count()) + " m=" + std::to_string(graph.edge_count()) +
           (acyclic ? " dag" : " cyclic") + " d=" + std::to_string(avg_degree);
}

FamilyGraph family_graph(std::size_t i, std::uint64_t seed, std::size_t max_n) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + i);
    std::uniform_int_distribution<std::size_t> size(10, std::max<std::size_t>(10, max_n));
    // log-uniform degree in [1, 20]
    std::uniform_real_distribution<double> log_deg(0.0, std::log(20.0));
    FamilyGraph out;
    const std::size_t n = size(rng);
    out.avg_degree = std::exp(log_deg(rng));
    out.acyclic = i % 2 == 1;
    const std::uint64_t graph_seed = rng();
    out.graph = out.acyclic ? random_dag(n, out.avg_degree, graph_seed)
                            : random_digraph(n, out.avg_degree, graph_seed);
    return out;
}

} // namespace dbl

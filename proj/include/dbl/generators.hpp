#pragma once

#include <cstdint>
#include <string>

#include "dbl/graph.hpp"

namespace dbl {

/// Uniform random digraph with round(n * avg_degree) distinct edges, no self-loops.
DynamicGraph random_digraph(std::size_t n, double avg_degree, std::uint64_t seed);

/// Uniform random DAG: like random_digraph, with every edge oriented along a
/// hidden random vertex order.
DynamicGraph random_dag(std::size_t n, double avg_degree, std::uint64_t seed);

/// Chung-Lu style digraph with power-law in/out weights w_i ~ (i+1)^(-1/(gamma-1)),
/// assigned through independent random permutations.
DynamicGraph power_law_digraph(std::size_t n, double avg_degree, double gamma, std::uint64_t seed);

/// Member `i` of the seeded small-graph family used for differential tests:
/// n in [10, 200], average degree in [1, 20], alternating cyclic digraphs and DAGs.
struct FamilyGraph {
    DynamicGraph graph;
    bool acyclic = false;
    double avg_degree = 0.0;
    std::string describe() const;
};
FamilyGraph family_graph(std::size_t i, std::uint64_t seed, std::size_t max_n = 200);

} // namespace dbl

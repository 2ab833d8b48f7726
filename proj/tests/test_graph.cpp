#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dbl/errors.hpp"
#include "dbl/generators.hpp"
#include "dbl/graph.hpp"
#include "dbl/io.hpp"
#include "dbl/oracle.hpp"
#include "support.hpp"

using namespace dbl;
using dbl::test::v;

TEST_CASE("add_vertex hands out sequential ids") {
    DynamicGraph g;
    CHECK(g.add_vertex() == 0);
    CHECK(g.vertex_count() == 1);

    auto ex = test::example_graph();
    CHECK(ex.add_vertex() == 11);
    CHECK(ex.vertex_count() == 12);
    CHECK(ex.in_degree(11) == 0);
    CHECK(ex.out_degree(11) == 0);
}

TEST_CASE("add_edge") {
    auto g = test::example_graph();
    const auto m = g.edge_count();

    SUBCASE("new edge lands in both adjacencies") {
        CHECK(g.add_edge(v(9), v(2)));
        CHECK(g.has_edge(v(9), v(2)));
        auto pre = g.predecessors(v(2));
        CHECK(std::find(pre.begin(), pre.end(), v(9)) != pre.end());
        CHECK(g.edge_count() == m + 1);
    }
    SUBCASE("existing edge is a no-op") {
        CHECK_FALSE(g.add_edge(v(1), v(4)));
        CHECK(g.edge_count() == m);
    }
    SUBCASE("self-loop appears once per list") {
        CHECK(g.add_edge(v(3), v(3)));
        CHECK(g.out_degree(v(3)) == 2);
        CHECK(g.in_degree(v(3)) == 1);
        CHECK(g.check_consistency());
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(g.add_edge(0, 11), std::out_of_range);
        CHECK_THROWS_AS(g.add_edge(99, 0), std::out_of_range);
    }
}

TEST_CASE("remove_edge") {
    auto g = test::example_graph();
    const auto original = g;
    CHECK(g.remove_edge(v(6), v(9)));
    CHECK_FALSE(g.has_edge(v(6), v(9)));
    CHECK(g.in_degree(v(9)) == 0);
    CHECK_FALSE(g.remove_edge(v(6), v(9)));
    CHECK_THROWS_AS(g.remove_edge(0, 50), std::out_of_range);

    g.add_edge(v(6), v(9));
    CHECK(g.check_consistency());
    for (VertexId u = 0; u < 11; ++u) {
        std::set<VertexId> a(g.successors(u).begin(), g.successors(u).end());
        std::set<VertexId> b(original.successors(u).begin(), original.successors(u).end());
        CHECK(a == b);
    }
}

TEST_CASE("from_edges collapses duplicates") {
    std::vector<std::pair<VertexId, VertexId>> e = {{0, 1}, {0, 1}, {1, 2}, {0, 1}};
    auto g = DynamicGraph::from_edges(3, e);
    CHECK(g.edge_count() == 2);
    CHECK(g.check_consistency());
}

TEST_CASE("adjacency symmetry under random mutation") {
    auto g = random_digraph(60, 4.0, 7);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<VertexId> pick(0, 59);
    for (int i = 0; i < 2000; ++i) {
        const VertexId a = pick(rng), b = pick(rng);
        if (rng() % 2) g.add_edge(a, b);
        else g.remove_edge(a, b);
    }
    CHECK(g.check_consistency());
}

TEST_CASE("load_edge_list") {
    SUBCASE("plain") {
        auto lg = parse_edge_list("0 1\n1 2\n");
        CHECK(lg.graph.vertex_count() == 3);
        CHECK(lg.graph.edge_count() == 2);
    }
    SUBCASE("comments and remap") {
        auto lg = parse_edge_list("# comment\n5 7\n");
        CHECK(lg.graph.vertex_count() == 2);
        CHECK(lg.graph.edge_count() == 1);
        CHECK(lg.original_ids == std::vector<std::uint64_t>{5, 7});
        CHECK(lg.graph.has_edge(0, 1));
    }
    SUBCASE("duplicates collapse, tabs and CRLF accepted") {
        auto lg = parse_edge_list("1\t2\r\n1 2\n\n% other comment\n2 1\n");
        CHECK(lg.graph.edge_count() == 2);
    }
    SUBCASE("malformed line reports its number") {
        try {
            parse_edge_list("0 1\n# ok\n3 x\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_edge_list("7\n"), ParseError);
        CHECK_THROWS_AS(parse_edge_list("1 2 3\n"), ParseError);
        CHECK_THROWS_AS(parse_edge_list("-1 2\n"), ParseError);
    }
    SUBCASE("stream overload") {
        std::istringstream in("10 20\n20 30\n");
        auto lg = load_edge_list(in);
        CHECK(lg.graph.edge_count() == 2);
    }
}

TEST_CASE("edge list round-trip") {
    auto lg = parse_edge_list("100 5\n5 9\n9 100\n42 5\n");
    std::ostringstream out;
    write_edge_list(out, lg.graph, lg.original_ids);
    auto again = parse_edge_list(out.str());
    CHECK(again.graph == lg.graph);
    CHECK(again.original_ids == lg.original_ids);

    auto g = random_digraph(80, 3.0, 11);
    std::ostringstream out2;
    write_edge_list(out2, g);
    CHECK(parse_edge_list(out2.str()).graph.edge_count() == g.edge_count());
}

TEST_CASE("load_temporal_edge_list sorts stably by timestamp") {
    auto t = parse_temporal_edge_list("0 1 10\n2 3 5\n");
    REQUIRE(t.edges.size() == 2);
    CHECK(t.edges[0].timestamp == 5);
    CHECK(t.original_ids[t.edges[0].src] == 2);
    CHECK(t.original_ids[t.edges[1].src] == 0);

    auto ties = parse_temporal_edge_list("4 5 1\n1 2 1\n7 8 1\n");
    CHECK(t.original_ids.size() == 4);
    CHECK(ties.original_ids[ties.edges[0].src] == 4);
    CHECK(ties.original_ids[ties.edges[1].src] == 1);
    CHECK(ties.original_ids[ties.edges[2].src] == 7);

    CHECK_THROWS_AS(parse_temporal_edge_list("0 1\n"), ParseError);
}

TEST_CASE("parse_pairs") {
    auto p = parse_pairs("3 4\n# x\n5 6\n");
    REQUIRE(p.size() == 2);
    CHECK(p[1] == std::pair<std::uint64_t, std::uint64_t>{5, 6});
}

TEST_CASE("oracle_reach on the running example") {
    auto g = test::example_graph();
    CHECK(oracle_reach(g, v(3), v(11)));
    CHECK_FALSE(oracle_reach(g, v(4), v(6)));
    CHECK(oracle_reach(g, v(4), v(4)));
    CHECK(bidirectional_bfs(g, v(3), v(11)));
    CHECK(bidirectional_bfs(g, v(7), v(7)));
}

TEST_CASE("oracle_reach equals Floyd-Warshall closure") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = random_digraph(50, 1.0 + static_cast<double>(seed) * 0.5, seed);
        auto tc = test::closure(g);
        for (VertexId a = 0; a < 50; ++a)
            for (VertexId b = 0; b < 50; ++b) REQUIRE(oracle_reach(g, a, b) == tc[a][b]);
    }
}

TEST_CASE("bidirectional_bfs equals oracle_reach") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto g = seed % 2 ? random_digraph(100, 1.5, seed) : random_dag(100, 3.0, seed);
        for (VertexId a = 0; a < 100; ++a) {
            auto truth = reachable_set(g, a);
            for (VertexId b = 0; b < 100; ++b) REQUIRE(bidirectional_bfs(g, a, b) == truth[b]);
        }
    }
    // two components
    std::vector<std::pair<VertexId, VertexId>> e = {{0, 1}, {1, 0}, {2, 3}};
    auto g = DynamicGraph::from_edges(4, e);
    CHECK_FALSE(bidirectional_bfs(g, 0, 3));
    CHECK_FALSE(oracle_reach(g, 0, 3));
}

TEST_CASE("bfs_distances and scc") {
    std::vector<std::pair<VertexId, VertexId>> chain = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    auto g = DynamicGraph::from_edges(5, chain);
    auto d = bfs_distances(g, 0, 10);
    CHECK(d == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
    auto cut = bfs_distances(g, 0, 2);
    CHECK(cut[2] == 2);
    CHECK(cut[3] == kUnreached);

    auto ex = test::example_graph();
    auto comp = strongly_connected_components(ex);
    CHECK(comp[v(5)] == comp[v(6)]);
    CHECK(comp[v(5)] == comp[v(9)]);
    CHECK(comp[v(2)] != comp[v(5)]);
    CHECK(comp[v(8)] != comp[v(5)]);
}

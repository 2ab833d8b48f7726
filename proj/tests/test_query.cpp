#include "doctest.h"

#include <stdexcept>

#include "dbl/errors.hpp"
#include "dbl/generators.hpp"
#include "dbl/oracle.hpp"
#include "dbl/query.hpp"
#include "dbl/workload.hpp"
#include "support.hpp"

using namespace dbl;
using dbl::test::v;

TEST_CASE("running example queries") {
    auto g = test::example_graph();
    auto idx = test::example_index(g);

    auto a = query(g, idx, v(1), v(10));
    CHECK(a.reachable);
    CHECK(a.answered_by == AnswerRule::DlPositive);
    CHECK(a.visited == 0);

    auto b = query(g, idx, v(4), v(6));
    CHECK_FALSE(b.reachable);
    CHECK(b.answered_by == AnswerRule::BlNegative);

    auto c = query(g, idx, v(3), v(11));
    CHECK(c.reachable);
    CHECK(c.answered_by == AnswerRule::BfsPositive);
    CHECK(c.visited == 2); // v3, v7

    auto d = query(g, idx, v(7), v(7));
    CHECK(d.reachable);
    CHECK(d.answered_by == AnswerRule::Reflexive);

    // v10 is reached by v8 and v8 cannot reach v5
    auto e = query(g, idx, v(10), v(5));
    CHECK_FALSE(e.reachable);
}

TEST_CASE("cross-label negative rules fire") {
    auto g = test::example_graph();
    auto idx = test::example_index(g);
    // v9 shares an SCC with landmark v5
    auto t2 = query(g, idx, v(9), v(7));
    CHECK_FALSE(t2.reachable);
    CHECK(t2.answered_by == AnswerRule::Thm2Negative);

    // v8 reaches v10 through its own landmark bit
    auto t1 = query(g, idx, v(10), v(8));
    CHECK_FALSE(t1.reachable);
    CHECK(t1.answered_by == AnswerRule::Thm1Negative);
}

TEST_CASE("query rejects a stale index") {
    auto g = test::example_graph();
    auto idx = test::example_index(g);
    g.add_vertex();
    CHECK_THROWS_AS(query(g, idx, 0, 1), ConsistencyError);
    auto idx2 = test::example_index(test::example_graph());
    auto g2 = test::example_graph();
    CHECK_THROWS_AS(query(g2, idx2, 0, 40), std::out_of_range);
}

TEST_CASE("query equals oracle on random graphs") {
    for (std::size_t i = 0; i < 16; ++i) {
        auto fam = family_graph(i, 7, 150);
        const auto& g = fam.graph;
        for (std::uint32_t width : {8u, 64u}) {
            IndexConfig cfg;
            cfg.k = width;
            cfg.k_prime = width;
            auto idx = build_index(g, cfg);
            QueryScratch scratch;
            for (VertexId s = 0; s < g.vertex_count(); ++s) {
                auto truth = reachable_set(g, s);
                for (VertexId t = 0; t < g.vertex_count(); ++t) {
                    auto out = query(g, idx, s, t, scratch);
                    REQUIRE(out.reachable == truth[t]);
                    if (out.label_answered()) REQUIRE(out.visited == 0);
                }
            }
        }
    }
}

TEST_CASE("rule toggles change visits only") {
    for (std::size_t i = 0; i < 8; ++i) {
        auto fam = family_graph(i, 99, 120);
        const auto& g = fam.graph;
        auto idx = build_index(g, IndexConfig{});
        QueryOptions bare;
        bare.thm1 = bare.thm2 = bare.dl_prune = bare.bl_prune = false;
        QueryOptions no_prune;
        no_prune.dl_prune = no_prune.bl_prune = false;
        QueryScratch scratch;
        for (VertexId s = 0; s < g.vertex_count(); ++s)
            for (VertexId t = 0; t < g.vertex_count(); ++t) {
                auto full = query(g, idx, s, t, scratch);
                auto a = query(g, idx, s, t, scratch, bare);
                auto b = query(g, idx, s, t, scratch, no_prune);
                REQUIRE(a.reachable == full.reachable);
                REQUIRE(b.reachable == full.reachable);
                REQUIRE(full.visited <= b.visited);
            }
    }
}

TEST_CASE("DL-only and BL-only modes stay correct") {
    auto g = random_digraph(120, 2.0, 3);
    auto idx = build_index(g, IndexConfig{});
    QueryOptions dl_only, bl_only;
    dl_only.use_bl = false;
    bl_only.use_dl = false;
    for (VertexId s = 0; s < 120; ++s) {
        auto truth = reachable_set(g, s);
        for (VertexId t = 0; t < 120; ++t) {
            auto a = query(g, idx, s, t, dl_only);
            auto b = query(g, idx, s, t, bl_only);
            REQUIRE(a.reachable == truth[t]);
            REQUIRE(b.reachable == truth[t]);
            REQUIRE(a.answered_by != AnswerRule::BlNegative);
            REQUIRE(b.answered_by != AnswerRule::DlPositive);
        }
    }
}

TEST_CASE("query_batch") {
    SUBCASE("three example queries give two label answers") {
        auto g = test::example_graph();
        auto idx = test::example_index(g);
        std::vector<QueryPair> q = {{v(1), v(10)}, {v(4), v(6)}, {v(3), v(11)}};
        auto res = query_batch(g, idx, q, 1);
        CHECK(res.stats.rho == doctest::Approx(2.0 / 3.0));
        CHECK(res.stats.label_answered == 2);
        CHECK(res.stats.visited_total == 2);
        CHECK(res.stats.reachable == 2);
    }
    SUBCASE("worker count does not change outcomes") {
        auto g = random_digraph(300, 3.0, 8);
        auto idx = build_index(g, IndexConfig{});
        auto q = gen_random_queries(300, 10000, 5);
        auto one = query_batch(g, idx, q, 1);
        auto many = query_batch(g, idx, q, 8);
        CHECK(one.outcomes == many.outcomes);
        CHECK(one.stats.by_rule == many.stats.by_rule);
        // rho counts exactly the zero-visit outcomes
        std::size_t zero = 0;
        for (auto& o : one.outcomes) zero += o.visited == 0;
        CHECK(one.stats.rho * static_cast<double>(q.size()) == doctest::Approx(zero));
    }
    SUBCASE("label-only workload") {
        auto g = test::example_graph();
        auto idx = test::example_index(g);
        std::vector<QueryPair> q = {{v(1), v(10)}, {v(2), v(2)}, {v(4), v(6)}};
        auto res = query_batch(g, idx, q, 2);
        CHECK(res.stats.rho == 1.0);
        CHECK(res.stats.visited_total == 0);
    }
    SUBCASE("empty batch") {
        auto g = test::example_graph();
        auto idx = test::example_index(g);
        auto res = query_batch(g, idx, {}, 4);
        CHECK(res.outcomes.empty());
        CHECK(res.stats.rho == 1.0);
    }
}

TEST_CASE("explain and rule names") {
    CHECK(explain({true, AnswerRule::DlPositive, 0}) == "answered positive by DL label intersection");
    CHECK(explain({false, AnswerRule::BfsNegative, 42}).find("42") != std::string::npos);
    CHECK(explain({true, AnswerRule::Reflexive, 0}).find("self-query") != std::string::npos);
    for (int i = 0; i <= static_cast<int>(AnswerRule::BfsNegative); ++i) {
        auto r = static_cast<AnswerRule>(i);
        CHECK(parse_answer_rule(to_string(r)) == r);
    }
}

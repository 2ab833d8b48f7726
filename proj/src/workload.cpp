#include "dbl/workload.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "dbl/errors.hpp"
#include "dbl/generators.hpp"
#include "dbl/oracle.hpp"

namespace dbl {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t edge_key(VertexId u, VertexId v) { return (std::uint64_t{u} << 32) | v; }

GraphStats stats_of(const DynamicGraph& g) {
    GraphStats s{g.vertex_count(), g.edge_count(), 0.0};
    if (s.n > 0) s.d_avg = static_cast<double>(s.m) / static_cast<double>(s.n);
    return s;
}

void fill_query_stats(BenchReport& r, const BatchStats& s) {
    r.queries = s.queries;
    r.rho = s.rho;
    r.visited_total = s.visited_total;
    r.reachable_fraction =
        s.queries == 0 ? 0.0 : static_cast<double>(s.reachable) / static_cast<double>(s.queries);
    r.by_rule.clear();
    for (std::size_t i = 0; i < s.by_rule.size(); ++i) {
        r.by_rule[std::string(to_string(static_cast<AnswerRule>(i)))] = s.by_rule[i];
    }
    r.query_ms = s.elapsed_ms;
}

} // namespace

std::vector<QueryPair> gen_random_queries(std::size_t n_vertices, std::size_t count, std::uint64_t seed) {
    std::vector<QueryPair> out;
    if (count == 0) return out;
    if (n_vertices == 0) throw ConfigError("cannot generate queries on an empty graph");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n_vertices - 1));
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        VertexId u = pick(rng);
        VertexId v = pick(rng);
        out.emplace_back(u, v);
    }
    return out;
}

std::string HopTarget::label() const {
    return hops ? std::to_string(*hops) : std::string("unreachable");
}

HopTarget HopTarget::parse(std::string_view text) {
    if (text == "unreachable" || text == "UNREACHABLE" || text == "inf") return unreachable();
    std::uint32_t h = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw ConfigError("bad hop distance '" + std::string(text) + "'");
        h = h * 10 + static_cast<std::uint32_t>(c - '0');
    }
    if (text.empty() || h == 0) throw ConfigError("hop distance must be positive");
    return exactly(h);
}

DistanceQueries gen_distance_queries(const DynamicGraph& g, HopTarget target, std::size_t count,
                                     std::uint64_t seed, std::size_t attempts_per_pair) {
    DistanceQueries out;
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        out.shortfall = count;
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::vector<VertexId> candidates;
    for (std::size_t i = 0; i < count; ++i) {
        bool found = false;
        for (std::size_t attempt = 0; attempt < attempts_per_pair && !found; ++attempt) {
            const VertexId u = pick(rng);
            candidates.clear();
            if (target.hops) {
                const auto dist = bfs_distances(g, u, *target.hops);
                for (VertexId v = 0; v < n; ++v)
                    if (dist[v] == *target.hops) candidates.push_back(v);
            } else {
                const auto seen = reachable_set(g, u);
                for (VertexId v = 0; v < n; ++v)
                    if (!seen[v]) candidates.push_back(v);
            }
            if (candidates.empty()) continue;
            std::uniform_int_distribution<std::size_t> choose(0, candidates.size() - 1);
            out.pairs.emplace_back(u, candidates[choose(rng)]);
            found = true;
        }
        if (!found) ++out.shortfall;
    }
    return out;
}

std::vector<WorkloadEvent> gen_insert_workload(const DynamicGraph& g, std::size_t count,
                                               std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    std::size_t loops = 0;
    for (VertexId v = 0; v < n; ++v)
        if (g.has_edge(v, v)) ++loops;
    const std::size_t possible = n < 2 ? 0 : n * (n - 1);
    const std::size_t available = possible - (g.edge_count() - loops);
    if (count > available) {
        throw ExhaustedError("requested " + std::to_string(count) + " new edges but only " +
                             std::to_string(available) + " are absent");
    }
    std::vector<WorkloadEvent> out;
    if (count == 0) return out;
    std::mt19937_64 rng(seed);
    out.reserve(count);

    if (count * 2 > available) {
        std::vector<std::pair<VertexId, VertexId>> absent;
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = 0; v < n; ++v)
                if (u != v && !g.has_edge(u, v)) absent.emplace_back(u, v);
        std::shuffle(absent.begin(), absent.end(), rng);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back({EventKind::Insert, absent[i].first, absent[i].second, std::nullopt});
        }
        return out;
    }

    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::unordered_set<std::uint64_t> chosen;
    while (out.size() < count) {
        const VertexId u = pick(rng);
        const VertexId v = pick(rng);
        if (u == v || g.has_edge(u, v) || !chosen.insert(edge_key(u, v)).second) continue;
        out.push_back({EventKind::Insert, u, v, std::nullopt});
    }
    return out;
}

std::vector<WorkloadEvent> gen_delete_workload(const DynamicGraph& g, std::size_t count,
                                               std::uint64_t seed) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(g.edge_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v : g.successors(u)) edges.emplace_back(u, v);
    std::mt19937_64 rng(seed);
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(std::min(count, edges.size()));
    std::vector<WorkloadEvent> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) out.push_back({EventKind::Delete, u, v, std::nullopt});
    return out;
}

std::vector<StreamEvent> parse_update_stream(std::string_view text) {
    std::vector<StreamEvent> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;

        StreamEvent ev;
        ev.line = line_no;
        switch (line[first]) {
        case '+': ev.kind = EventKind::Insert; break;
        case '-': ev.kind = EventKind::Delete; break;
        case '?': ev.kind = EventKind::Query; break;
        default: throw ParseError(line_no, "expected '+', '-' or '?' in '" + std::string(line) + "'");
        }
        try {
            const auto pairs = parse_pairs(line.substr(first + 1));
            if (pairs.size() != 1) throw ParseError(1, "");
            ev.u = pairs[0].first;
            ev.v = pairs[0].second;
        } catch (const ParseError&) {
            throw ParseError(line_no, "expected two vertex ids in '" + std::string(line) + "'");
        }
        out.push_back(ev);
    }
    return out;
}

BenchReport replay_temporal(const TemporalEdgeList& edges, const ReplayOptions& opts,
                            DblIndex* final_index, DynamicGraph* final_graph) {
    if (opts.warm_fraction < 0.0 || opts.warm_fraction > 1.0) {
        throw ConfigError("warm fraction must lie in [0, 1]");
    }
    if (opts.report_every == 0) throw ConfigError("report interval must be positive");
    const std::size_t total = edges.edges.size();
    const auto warm = static_cast<std::size_t>(static_cast<double>(total) * opts.warm_fraction);
    const std::size_t n = edges.original_ids.size();

    // Multiplicity of each edge inside the current window; the graph holds an
    // edge while its count is positive.
    std::unordered_map<std::uint64_t, std::uint32_t> live;
    std::vector<std::pair<VertexId, VertexId>> initial;
    initial.reserve(warm);
    for (std::size_t i = 0; i < warm; ++i) {
        const auto& e = edges.edges[i];
        initial.emplace_back(e.src, e.dst);
        ++live[edge_key(e.src, e.dst)];
    }

    BenchReport report;
    report.config = opts.config;
    auto start = Clock::now();
    DynamicGraph g = DynamicGraph::from_edges(n, initial);
    DblIndex idx = build_index(g, opts.config);
    report.build_ms = ms_since(start);
    report.landmark_leaf_overlap = idx.landmark_leaf_overlap();

    std::uint64_t events = 0;
    for (std::size_t i = warm; i < total; ++i) {
        const auto& e = edges.edges[i];
        start = Clock::now();
        insert_edge(g, idx, e.src, e.dst);
        ++live[edge_key(e.src, e.dst)];
        report.insert_ms += ms_since(start);
        ++report.inserts;

        if (opts.allow_delete && i >= warm && warm > 0) {
            const auto& old = edges.edges[i - warm];
            auto it = live.find(edge_key(old.src, old.dst));
            if (--it->second == 0) {
                live.erase(it);
                start = Clock::now();
                const auto st = delete_edge(g, idx, old.src, old.dst);
                report.delete_ms += ms_since(start);
                ++report.deletes;
                if (st.tainted) ++report.tainted_deletes;
            }
        }

        ++events;
        if (events % opts.report_every == 0) {
            report.replay.push_back(
                {events, report.inserts, report.deletes, report.insert_ms, report.delete_ms});
        }
    }

    report.graph = stats_of(g);
    if (final_index) *final_index = std::move(idx);
    if (final_graph) *final_graph = std::move(g);
    return report;
}

BenchReport run_bench(const LoadedGraph& loaded, const BenchOptions& opts) {
    BenchReport report;
    report.config = opts.config;
    report.seed = opts.seed;
    report.workers = opts.workers;

    DynamicGraph g = loaded.graph;
    auto start = Clock::now();
    DblIndex idx = build_index(g, opts.config);
    report.build_ms = ms_since(start);
    report.landmark_leaf_overlap = idx.landmark_leaf_overlap();

    if (opts.inserts > 0) {
        const auto events = gen_insert_workload(g, opts.inserts, opts.seed ^ 0x5851F42D4C957F2DULL);
        start = Clock::now();
        for (const auto& ev : events) insert_edge(g, idx, ev.u, ev.v);
        report.insert_ms = ms_since(start);
        report.inserts = events.size();
    }
    report.graph = stats_of(g);

    const auto queries = gen_random_queries(g.vertex_count(), opts.queries, opts.seed);
    const auto batch = query_batch(g, idx, queries, opts.workers);
    fill_query_stats(report, batch.stats);

    for (std::size_t i = 0; i < opts.distances.size(); ++i) {
        const auto target = opts.distances[i];
        const auto dq = gen_distance_queries(g, target, opts.distance_queries, opts.seed + 1 + i);
        const auto res = query_batch(g, idx, dq.pairs, opts.workers);
        report.per_distance.push_back({target.label(), opts.distance_queries, dq.pairs.size(),
                                       dq.shortfall, res.stats.rho, res.stats.visited_total,
                                       res.stats.elapsed_ms});
    }
    return report;
}

VerifySummary verify_graph(const DynamicGraph& graph, const IndexConfig& cfg, std::size_t inserts,
                           std::uint64_t seed) {
    VerifySummary summary;
    summary.graphs = 1;
    DynamicGraph g = graph;
    DblIndex idx = build_index(g, cfg);

    auto check_all_pairs = [&](const char* phase) {
        const std::size_t n = g.vertex_count();
        QueryScratch scratch;
        for (VertexId s = 0; s < n; ++s) {
            const auto truth = reachable_set(g, s);
            for (VertexId t = 0; t < n; ++t) {
                ++summary.pairs;
                const auto out = query(g, idx, s, t, scratch);
                if (out.reachable != truth[t]) {
                    ++summary.disagreements;
                    if (summary.failures.size() < 10) {
                        summary.failures.push_back(std::string(phase) + ": q(" + std::to_string(s) +
                                                   "," + std::to_string(t) + ") = " +
                                                   (out.reachable ? "true" : "false") + " via " +
                                                   std::string(to_string(out.answered_by)));
                    }
                }
            }
        }
        const auto report = verify_labels(g, idx, true);
        summary.label_violations += report.violations.size();
        if (!report.ok && summary.failures.size() < 10) {
            summary.failures.push_back(std::string(phase) + ": " +
                                       std::to_string(report.violations.size()) +
                                       " label violations");
        }
    };

    check_all_pairs("build");
    if (inserts > 0) {
        const std::size_t n = g.vertex_count();
        const std::size_t room = n < 2 ? 0 : n * (n - 1) - g.edge_count();
        for (const auto& ev : gen_insert_workload(g, std::min(inserts, room), seed)) {
            insert_edge(g, idx, ev.u, ev.v);
        }
        check_all_pairs("inserts");
    }
    return summary;
}

VerifySummary verify_family(const VerifyOptions& opts) {
    VerifySummary total;
    for (std::size_t i = 0; i < opts.graphs; ++i) {
        const auto fam = family_graph(i, opts.seed, opts.max_n);
        for (std::uint32_t width : opts.widths) {
            IndexConfig cfg;
            cfg.k = width;
            cfg.k_prime = width;
            cfg.hash_seed = opts.seed + i;
            auto one = verify_graph(fam.graph, cfg, opts.inserts, opts.seed + i);
            total.pairs += one.pairs;
            total.disagreements += one.disagreements;
            total.label_violations += one.label_violations;
            for (auto& f : one.failures) {
                if (total.failures.size() < 20) {
                    total.failures.push_back("graph " + std::to_string(i) + " (" + fam.describe() +
                                             ", k=" + std::to_string(width) + ") " + f);
                }
            }
        }
        ++total.graphs;
    }
    return total;
}

std::size_t default_workers() {
    if (const char* env = std::getenv("DBL_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace dbl

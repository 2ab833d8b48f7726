// dbl: build, query, update and benchmark reachability indexes from the shell.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 verification failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dbl/errors.hpp"
#include "dbl/io.hpp"
#include "dbl/query.hpp"
#include "dbl/report.hpp"
#include "dbl/snapshot.hpp"
#include "dbl/update.hpp"
#include "dbl/workload.hpp"

namespace {

using namespace dbl;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct IndexFlags {
    std::uint32_t k = 64;
    std::uint32_t k_prime = 64;
    std::string strategy = "ours";
    std::uint64_t leaf_r = 0;
    std::uint64_t seed = 0;

    /// `seed_alias` also binds --seed to the hash seed, for commands without a
    /// workload seed of their own.
    void attach(CLI::App* app, bool seed_alias = true) {
        app->add_option("--k", k, "DL label width (landmark count)")->capture_default_str();
        app->add_option("--kprime", k_prime, "BL label width (leaf buckets)")->capture_default_str();
        app->add_option("--strategy", strategy, "landmark ranking: a|b|c|ours")->capture_default_str();
        app->add_option("--leaf-r", leaf_r, "leaf threshold on in*out degree")->capture_default_str();
        app->add_option(seed_alias ? "--hash-seed,--seed" : "--hash-seed", seed, "leaf hash seed")
            ->capture_default_str();
    }

    IndexConfig config() const {
        IndexConfig cfg;
        cfg.k = k;
        cfg.k_prime = k_prime;
        cfg.strategy = parse_strategy(strategy);
        cfg.leaf_threshold = leaf_r;
        cfg.hash_seed = seed;
        cfg.validate();
        return cfg;
    }
};

/// Graph plus index, from a snapshot (which must carry its graph) or from an
/// edge list that is indexed on the spot.
struct Loaded {
    LoadedGraph graph;
    DblIndex index;
    std::unordered_map<std::uint64_t, VertexId> dense;

    VertexId lookup(std::uint64_t original, std::size_t line) const {
        auto it = dense.find(original);
        if (it == dense.end()) throw ParseError(line, "unknown vertex id " + std::to_string(original));
        return it->second;
    }
    std::uint64_t original(VertexId v) const {
        return v < graph.original_ids.size() ? graph.original_ids[v] : v;
    }
};

void index_ids(Loaded& l) {
    l.dense.clear();
    for (VertexId v = 0; v < l.graph.original_ids.size(); ++v) l.dense.emplace(l.graph.original_ids[v], v);
}

Loaded load_input(const std::string& path, const IndexFlags& flags) {
    if (is_snapshot_file(path)) {
        auto snap = load_snapshot_file(path);
        if (!snap.graph) throw FormatError("snapshot " + path + " has no graph section");
        Loaded l{std::move(*snap.graph), std::move(snap.index), {}};
        index_ids(l);
        return l;
    }
    auto g = load_edge_list_file(path);
    auto cfg = flags.config();
    auto idx = build_index(g.graph, cfg);
    Loaded l{std::move(g), std::move(idx), {}};
    index_ids(l);
    return l;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string outcome_csv(const Loaded& l, VertexId u, VertexId v, const QueryOutcome& o) {
    return std::to_string(l.original(u)) + "," + std::to_string(l.original(v)) + "," +
           (o.reachable ? "true" : "false") + "," + std::string(to_string(o.answered_by)) + "," +
           std::to_string(o.visited);
}

json outcome_json(const Loaded& l, VertexId u, VertexId v, const QueryOutcome& o) {
    return {{"u", l.original(u)},
            {"v", l.original(v)},
            {"reachable", o.reachable},
            {"answered_by", std::string(to_string(o.answered_by))},
            {"visited", o.visited}};
}

// ---- subcommands ---------------------------------------------------------

int cmd_build(const std::string& graph_path, const IndexFlags& flags, const std::string& out_path) {
    auto g = load_edge_list_file(graph_path);
    const auto cfg = flags.config();
    const auto start = std::chrono::steady_clock::now();
    auto idx = build_index(g.graph, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (auto overlap = idx.landmark_leaf_overlap()) {
        std::cerr << "warning: " << overlap << " vertices are both landmark and leaf\n";
    }
    if (!out_path.empty()) save_snapshot_file(out_path, idx, &g);
    json summary = {{"n", g.graph.vertex_count()},
                    {"m", g.graph.edge_count()},
                    {"k", idx.config().k},
                    {"k_prime", idx.config().k_prime},
                    {"landmarks", idx.landmarks().size()},
                    {"leaves_in", idx.leaves().leaves_in.size()},
                    {"leaves_out", idx.leaves().leaves_out.size()},
                    {"build_ms", ms}};
    std::cout << summary.dump() << '\n';
    return 0;
}

int cmd_query(const std::string& input, const std::string& queries_path, const IndexFlags& flags,
              std::size_t workers, const std::string& format, const std::string& out_path) {
    auto l = load_input(input, flags);
    const auto raw = parse_pairs(read_text_file(queries_path));
    std::vector<QueryPair> pairs;
    pairs.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        pairs.emplace_back(l.lookup(raw[i].first, i + 1), l.lookup(raw[i].second, i + 1));
    }
    auto res = query_batch(l.graph.graph, l.index, pairs, workers);

    std::ostringstream out;
    if (format == "json") {
        json records = json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i)
            records.push_back(outcome_json(l, pairs[i].first, pairs[i].second, res.outcomes[i]));
        out << records.dump(1) << '\n';
    } else {
        out << "u,v,reachable,answered_by,visited\n";
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out << outcome_csv(l, pairs[i].first, pairs[i].second, res.outcomes[i]) << '\n';
    }
    write_output(out_path, out.str());
    std::cerr << "queries=" << res.stats.queries << " rho=" << res.stats.rho
              << " visited=" << res.stats.visited_total << " ms=" << res.stats.elapsed_ms << '\n';
    return 0;
}

int cmd_update(const std::string& input, const std::string& stream_path, const IndexFlags& flags,
               bool allow_delete, bool rebuild_on_taint, bool log_json, const std::string& out_path) {
    auto l = load_input(input, flags);
    const auto events = parse_update_stream(read_text_file(stream_path));
    if (!allow_delete) {
        for (const auto& ev : events)
            if (ev.kind == EventKind::Delete)
                throw ParseError(ev.line, "deletions are experimental; pass --allow-delete");
    }
    auto& g = l.graph.graph;
    UpdateOptions opts{rebuild_on_taint};
    UpdateStats total;
    std::size_t inserts = 0, deletes = 0, queries = 0, tainted = 0;

    auto resolve_or_add = [&](std::uint64_t original) {
        auto it = l.dense.find(original);
        if (it != l.dense.end()) return it->second;
        const VertexId id = insert_vertex(g, l.index, {}, {}).id;
        l.graph.original_ids.push_back(original);
        l.dense.emplace(original, id);
        return id;
    };

    for (const auto& ev : events) {
        switch (ev.kind) {
        case EventKind::Insert: {
            const VertexId u = resolve_or_add(ev.u);
            const VertexId v = resolve_or_add(ev.v);
            auto st = insert_edge(g, l.index, u, v);
            total += st;
            ++inserts;
            if (log_json) {
                std::cout << json{{"line", ev.line}, {"op", "+"}, {"u", ev.u}, {"v", ev.v},
                                  {"visited", st.visited}, {"labels_changed", st.labels_changed},
                                  {"early_terminated", st.early_terminated}}
                                 .dump()
                          << '\n';
            }
            break;
        }
        case EventKind::Delete: {
            const VertexId u = l.lookup(ev.u, ev.line);
            const VertexId v = l.lookup(ev.v, ev.line);
            auto st = delete_edge(g, l.index, u, v, opts);
            total += st;
            ++deletes;
            tainted += st.tainted;
            if (st.tainted && !st.rebuilt) {
                std::cerr << "warning: line " << ev.line << ": deletion inside a cycle may leave stale labels\n";
            }
            if (log_json) {
                std::cout << json{{"line", ev.line}, {"op", "-"}, {"u", ev.u}, {"v", ev.v},
                                  {"visited", st.visited}, {"labels_changed", st.labels_changed},
                                  {"tainted", st.tainted}, {"rebuilt", st.rebuilt}}
                                 .dump()
                          << '\n';
            }
            break;
        }
        case EventKind::Query: {
            const VertexId u = l.lookup(ev.u, ev.line);
            const VertexId v = l.lookup(ev.v, ev.line);
            auto o = query(g, l.index, u, v);
            ++queries;
            if (log_json) {
                auto rec = outcome_json(l, u, v, o);
                rec["line"] = ev.line;
                rec["op"] = "?";
                std::cout << rec.dump() << '\n';
            } else {
                std::cout << outcome_csv(l, u, v, o) << '\n';
            }
            break;
        }
        }
    }
    if (!out_path.empty()) save_snapshot_file(out_path, l.index, &l.graph);
    std::cerr << "inserts=" << inserts << " deletes=" << deletes << " tainted=" << tainted
              << " queries=" << queries << " visited=" << total.visited
              << " labels_changed=" << total.labels_changed << '\n';
    return 0;
}

int cmd_replay(const std::string& path, const IndexFlags& flags, double warm, std::size_t every,
               bool allow_delete, const std::string& out_path) {
    auto edges = load_temporal_edge_list_file(path);
    ReplayOptions opts;
    opts.warm_fraction = warm;
    opts.report_every = every;
    opts.allow_delete = allow_delete;
    opts.config = flags.config();
    auto report = replay_temporal(edges, opts);
    write_output(out_path, json(report).dump(2) + "\n");
    return 0;
}

int cmd_bench(const std::string& path, const IndexFlags& flags, std::size_t queries, std::size_t inserts,
              std::uint64_t seed, std::size_t workers, const std::vector<std::string>& distances,
              std::size_t distance_queries, const std::string& out_path) {
    auto g = load_edge_list_file(path);
    BenchOptions opts;
    opts.config = flags.config();
    opts.queries = queries;
    opts.inserts = inserts;
    opts.seed = seed;
    opts.workers = workers;
    opts.distance_queries = distance_queries;
    for (const auto& d : distances) opts.distances.push_back(HopTarget::parse(d));
    auto report = run_bench(g, opts);
    write_output(out_path, json(report).dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::string& path, const IndexFlags& flags, std::uint64_t seed, std::size_t graphs,
               std::size_t max_n, std::size_t inserts) {
    VerifySummary total;
    auto merge = [&](const VerifySummary& s, const std::string& prefix) {
        total.graphs += s.graphs;
        total.pairs += s.pairs;
        total.disagreements += s.disagreements;
        total.label_violations += s.label_violations;
        for (const auto& f : s.failures) total.failures.push_back(prefix + f);
    };
    if (!path.empty()) {
        auto g = load_edge_list_file(path);
        merge(verify_graph(g.graph, flags.config(), inserts, seed), path + ": ");
    }
    if (graphs > 0) {
        VerifyOptions opts;
        opts.graphs = graphs;
        opts.max_n = max_n;
        opts.seed = seed;
        opts.inserts = inserts;
        merge(verify_family(opts), "");
    }
    for (const auto& f : total.failures) std::cerr << "FAIL " << f << '\n';
    std::cout << json{{"graphs", total.graphs},
                      {"pairs", total.pairs},
                      {"disagreements", total.disagreements},
                      {"label_violations", total.label_violations},
                      {"ok", total.ok()}}
                     .dump()
              << '\n';
    return total.ok() ? 0 : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic reachability index over directed graphs"};
    app.require_subcommand(1);
    IndexFlags flags;
    std::string out_path;

    std::string graph_path, input_path, second_path;
    auto* build = app.add_subcommand("build", "build an index from an edge list");
    build->add_option("graph", graph_path, "edge list (plain or gzip)")->required();
    flags.attach(build);
    build->add_option("-o,--output", out_path, "write a snapshot (index plus graph)");

    std::size_t workers = default_workers();
    std::string format = "csv";
    auto* query_cmd = app.add_subcommand("query", "answer reachability queries");
    query_cmd->add_option("input", input_path, "edge list or snapshot")->required();
    query_cmd->add_option("queries", second_path, "file of 'u v' lines")->required();
    query_cmd->add_option("--workers", workers, "query threads (default DBL_WORKERS or cores)");
    query_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    query_cmd->add_option("-o,--output", out_path, "result file (default stdout)");
    flags.attach(query_cmd);

    bool allow_delete = false, rebuild_on_taint = false, log_json = false;
    auto* update = app.add_subcommand("update", "apply a '+ u v' / '- u v' / '? u v' stream");
    update->add_option("input", input_path, "edge list or snapshot")->required();
    update->add_option("stream", second_path, "update stream file")->required();
    update->add_flag("--allow-delete", allow_delete, "enable experimental edge deletion");
    update->add_flag("--rebuild-on-taint", rebuild_on_taint, "rebuild when a deletion touches a cycle");
    update->add_flag("--log-json", log_json, "one JSON record per stream line");
    update->add_option("-o,--output", out_path, "write the updated snapshot");
    flags.attach(update);

    double warm = 0.5;
    std::size_t every = 10000;
    auto* replay = app.add_subcommand("replay", "replay a timestamped edge list");
    replay->add_option("temporal", input_path, "'src dst timestamp' lines")->required();
    replay->add_option("--warm", warm, "fraction of edges in the initial build")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    replay->add_option("--report-every", every, "events per report row")->capture_default_str();
    replay->add_flag("--allow-delete", allow_delete, "delete edges that slide out of the window");
    replay->add_option("-o,--output", out_path, "report file (default stdout)");
    flags.attach(replay);

    std::size_t bench_queries = 1000000, bench_inserts = 0, distance_queries = 100000;
    std::uint64_t bench_seed = 1;
    std::vector<std::string> distances;
    auto* bench = app.add_subcommand("bench", "build, update and query with a JSON report");
    bench->add_option("graph", input_path, "edge list")->required();
    bench->add_option("--queries", bench_queries, "random queries")->capture_default_str();
    bench->add_option("--inserts", bench_inserts, "random edge insertions before querying")
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "workload seed")->capture_default_str();
    bench->add_option("--workers", workers, "query threads");
    bench->add_option("--distances", distances, "hop targets, e.g. 2,4,6,8,unreachable")->delimiter(',');
    bench->add_option("--distance-queries", distance_queries, "pairs per hop target")->capture_default_str();
    bench->add_option("-o,--output", out_path, "report file (default stdout)");
    flags.attach(bench, false);

    std::uint64_t verify_seed = 1;
    std::size_t verify_graphs = 0, verify_max_n = 200, verify_inserts = 100;
    bool family_given = false;
    auto* verify = app.add_subcommand("verify", "compare every query against plain BFS");
    verify->add_option("graph", input_path, "edge list (optional)");
    verify->add_option("--seed", verify_seed, "workload and family seed")->capture_default_str();
    auto* graphs_opt = verify->add_option("--graphs", verify_graphs, "random graphs to check (default 50 without a graph)");
    verify->add_option("--max-n", verify_max_n, "largest random graph")->capture_default_str();
    verify->add_option("--inserts", verify_inserts, "random insertions before the second check")
        ->capture_default_str();
    flags.attach(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (workers == 0) throw ConfigError("--workers must be at least 1");
        if (*build) return cmd_build(graph_path, flags, out_path);
        if (*query_cmd) return cmd_query(input_path, second_path, flags, workers, format, out_path);
        if (*update)
            return cmd_update(input_path, second_path, flags, allow_delete, rebuild_on_taint, log_json, out_path);
        if (*replay) return cmd_replay(input_path, flags, warm, every, allow_delete, out_path);
        if (*bench)
            return cmd_bench(input_path, flags, bench_queries, bench_inserts, bench_seed, workers, distances,
                             distance_queries, out_path);
        if (*verify) {
            family_given = graphs_opt->count() > 0;
            if (!family_given && input_path.empty()) verify_graphs = 50;
            return cmd_verify(input_path, flags, verify_seed, verify_graphs, verify_max_n, verify_inserts);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

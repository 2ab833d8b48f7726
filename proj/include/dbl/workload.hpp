#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dbl/graph.hpp"
#include "dbl/index.hpp"
#include "dbl/io.hpp"
#include "dbl/query.hpp"
#include "dbl/report.hpp"
#include "dbl/update.hpp"

namespace dbl {

enum class EventKind : std::uint8_t { Insert, Delete, Query };

struct WorkloadEvent {
    EventKind kind = EventKind::Query;
    VertexId u = 0;
    VertexId v = 0;
    std::optional<std::uint64_t> timestamp;

    friend bool operator==(const WorkloadEvent&, const WorkloadEvent&) = default;
};

/// Uniform independent (u, v) pairs.
std::vector<QueryPair> gen_random_queries(std::size_t n_vertices, std::size_t count, std::uint64_t seed);

/// Target distance for gen_distance_queries; nullopt hops means "unreachable".
struct HopTarget {
    std::optional<std::uint32_t> hops;

    static HopTarget unreachable() { return {}; }
    static HopTarget exactly(std::uint32_t h) { return {h}; }
    std::string label() const;
    static HopTarget parse(std::string_view text); // "2", "4", ..., "unreachable"
};

struct DistanceQueries {
    std::vector<QueryPair> pairs;
    std::size_t shortfall = 0; // requested but not found
};

/// Rejection sampling: draw u, BFS at most hops levels, pick v at exactly that
/// shortest-path distance. Each pair gets `attempts_per_pair` tries.
DistanceQueries gen_distance_queries(const DynamicGraph& g, HopTarget target, std::size_t count,
                                     std::uint64_t seed, std::size_t attempts_per_pair = 64);

/// `count` distinct absent non-loop edges as Insert events. Throws
/// ExhaustedError when the graph does not have that many non-edges.
std::vector<WorkloadEvent> gen_insert_workload(const DynamicGraph& g, std::size_t count,
                                               std::uint64_t seed);

/// `count` distinct existing edges as Delete events (fewer if m < count).
std::vector<WorkloadEvent> gen_delete_workload(const DynamicGraph& g, std::size_t count,
                                               std::uint64_t seed);

/// Update stream line as written in the file, ids not yet mapped.
struct StreamEvent {
    EventKind kind = EventKind::Query;
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    std::size_t line = 0;
};

/// Parses "+ u v" / "- u v" / "? u v" lines. Throws ParseError.
std::vector<StreamEvent> parse_update_stream(std::string_view text);

struct ReplayOptions {
    double warm_fraction = 0.5;
    std::size_t report_every = 10000;
    bool allow_delete = false; // slide the window: delete edges leaving it
    IndexConfig config;
};

/// Builds graph and index on the first warm_fraction of the time-sorted
/// edges, then inserts the rest in order. With allow_delete, each insertion
/// also removes the edge that falls out of a window of the warm size.
BenchReport replay_temporal(const TemporalEdgeList& edges, const ReplayOptions& opts,
                            DblIndex* final_index = nullptr, DynamicGraph* final_graph = nullptr);

struct BenchOptions {
    IndexConfig config;
    std::size_t queries = 1000000;
    std::size_t inserts = 0;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::vector<HopTarget> distances; // per-distance breakdown when non-empty
    std::size_t distance_queries = 100000;
};

/// load -> build -> optional inserts -> query batch -> report.
BenchReport run_bench(const LoadedGraph& graph, const BenchOptions& opts);

struct VerifyOptions {
    std::size_t graphs = 50;
    std::size_t max_n = 200;
    std::uint64_t seed = 1;
    std::size_t inserts = 100;
    std::vector<std::uint32_t> widths = {8, 64}; // k = k' values to try
};

struct VerifySummary {
    std::size_t graphs = 0;
    std::uint64_t pairs = 0;
    std::uint64_t disagreements = 0;
    std::uint64_t label_violations = 0;
    std::vector<std::string> failures; // first few, human readable

    bool ok() const noexcept { return disagreements == 0 && label_violations == 0; }
};

/// All-pairs differential check of query() against the BFS oracle on one
/// graph, before and after a seeded insert workload.
VerifySummary verify_graph(const DynamicGraph& g, const IndexConfig& cfg, std::size_t inserts,
                           std::uint64_t seed);

/// verify_graph over the seeded small-graph family.
VerifySummary verify_family(const VerifyOptions& opts);

/// Worker count from DBL_WORKERS, else hardware concurrency (at least 1).
std::size_t default_workers();

} // namespace dbl

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "dbl/index.hpp"

namespace dbl {

inline constexpr int kReportSchemaVersion = 1;

struct GraphStats {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double d_avg = 0.0;

    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

struct DistanceRow {
    std::string target; // "2", "4", ..., "unreachable"
    std::uint64_t requested = 0;
    std::uint64_t generated = 0;
    std::uint64_t shortfall = 0;
    double rho = 0.0;
    std::uint64_t visited_total = 0;
    double query_ms = 0.0;

    friend bool operator==(const DistanceRow&, const DistanceRow&) = default;
};

/// Cumulative totals after `events` replayed updates.
struct ReplayRow {
    std::uint64_t events = 0;
    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    double insert_ms = 0.0;
    double delete_ms = 0.0;

    friend bool operator==(const ReplayRow&, const ReplayRow&) = default;
};

/// Benchmark output. All durations are milliseconds from a monotonic clock.
struct BenchReport {
    int schema_version = kReportSchemaVersion;
    GraphStats graph;
    IndexConfig config;
    std::uint64_t seed = 0;
    std::uint64_t workers = 1;
    std::uint64_t landmark_leaf_overlap = 0;

    double build_ms = 0.0;
    double insert_ms = 0.0;
    double delete_ms = 0.0;
    double query_ms = 0.0;

    std::uint64_t inserts = 0;
    std::uint64_t deletes = 0;
    std::uint64_t tainted_deletes = 0;
    std::uint64_t queries = 0;
    double rho = 1.0;
    double reachable_fraction = 0.0;
    std::uint64_t visited_total = 0;
    std::map<std::string, std::uint64_t> by_rule;

    std::vector<DistanceRow> per_distance;
    std::vector<ReplayRow> replay;

    /// Copy with every duration zeroed, for reproducibility comparisons.
    BenchReport without_timings() const;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

void to_json(nlohmann::json& j, const BenchReport& r);
void from_json(const nlohmann::json& j, BenchReport& r);

} // namespace dbl

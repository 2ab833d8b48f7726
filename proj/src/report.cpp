#include "dbl/report.hpp"

#include <stdexcept>

namespace dbl {

BenchReport BenchReport::without_timings() const {
    BenchReport r = *this;
    r.build_ms = r.insert_ms = r.delete_ms = r.query_ms = 0.0;
    for (auto& row : r.per_distance) row.query_ms = 0.0;
    for (auto& row : r.replay) row.insert_ms = row.delete_ms = 0.0;
    return r;
}

void to_json(nlohmann::json& j, const BenchReport& r) {
    using nlohmann::json;
    json distances = json::array();
    for (const auto& d : r.per_distance) {
        distances.push_back({{"target", d.target},
                             {"requested", d.requested},
                             {"generated", d.generated},
                             {"shortfall", d.shortfall},
                             {"rho", d.rho},
                             {"visited_total", d.visited_total},
                             {"query_ms", d.query_ms}});
    }
    json replay = json::array();
    for (const auto& row : r.replay) {
        replay.push_back({{"events", row.events},
                          {"inserts", row.inserts},
                          {"deletes", row.deletes},
                          {"insert_ms", row.insert_ms},
                          {"delete_ms", row.delete_ms}});
    }
    j = json{
        {"schema_version", r.schema_version},
        {"graph", {{"n", r.graph.n}, {"m", r.graph.m}, {"d_avg", r.graph.d_avg}}},
        {"config",
         {{"k", r.config.k},
          {"k_prime", r.config.k_prime},
          {"strategy", std::string(to_string(r.config.strategy))},
          {"leaf_r", r.config.leaf_threshold},
          {"hash_seed", r.config.hash_seed},
          {"seed", r.seed},
          {"workers", r.workers}}},
        {"landmark_leaf_overlap", r.landmark_leaf_overlap},
        {"timings_ms",
         {{"build", r.build_ms}, {"insert", r.insert_ms}, {"delete", r.delete_ms}, {"query", r.query_ms}}},
        {"counts",
         {{"inserts", r.inserts},
          {"deletes", r.deletes},
          {"tainted_deletes", r.tainted_deletes},
          {"queries", r.queries}}},
        {"rho", r.rho},
        {"reachable_fraction", r.reachable_fraction},
        {"visited_total", r.visited_total},
        {"by_rule", r.by_rule},
        {"per_distance", distances},
        {"replay", replay},
    };
}

void from_json(const nlohmann::json& j, BenchReport& r) {
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
        throw std::runtime_error("unsupported report schema version " +
                                 std::to_string(r.schema_version));
    }
    const auto& g = j.at("graph");
    r.graph = {g.at("n").get<std::uint64_t>(), g.at("m").get<std::uint64_t>(),
               g.at("d_avg").get<double>()};
    const auto& c = j.at("config");
    r.config.k = c.at("k").get<std::uint32_t>();
    r.config.k_prime = c.at("k_prime").get<std::uint32_t>();
    r.config.strategy = parse_strategy(c.at("strategy").get<std::string>());
    r.config.leaf_threshold = c.at("leaf_r").get<std::uint64_t>();
    r.config.hash_seed = c.at("hash_seed").get<std::uint64_t>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.workers = c.at("workers").get<std::uint64_t>();
    r.landmark_leaf_overlap = j.at("landmark_leaf_overlap").get<std::uint64_t>();
    const auto& t = j.at("timings_ms");
    r.build_ms = t.at("build").get<double>();
    r.insert_ms = t.at("insert").get<double>();
    r.delete_ms = t.at("delete").get<double>();
    r.query_ms = t.at("query").get<double>();
    const auto& n = j.at("counts");
    r.inserts = n.at("inserts").get<std::uint64_t>();
    r.deletes = n.at("deletes").get<std::uint64_t>();
    r.tainted_deletes = n.at("tainted_deletes").get<std::uint64_t>();
    r.queries = n.at("queries").get<std::uint64_t>();
    r.rho = j.at("rho").get<double>();
    r.reachable_fraction = j.at("reachable_fraction").get<double>();
    r.visited_total = j.at("visited_total").get<std::uint64_t>();
    r.by_rule = j.at("by_rule").get<std::map<std::string, std::uint64_t>>();
    r.per_distance.clear();
    for (const auto& d : j.at("per_distance")) {
        r.per_distance.push_back({d.at("target").get<std::string>(),
                                  d.at("requested").get<std::uint64_t>(),
                                  d.at("generated").get<std::uint64_t>(),
                                  d.at("shortfall").get<std::uint64_t>(), d.at("rho").get<double>(),
                                  d.at("visited_total").get<std::uint64_t>(),
                                  d.at("query_ms").get<double>()});
    }
    r.replay.clear();
    for (const auto& row : j.at("replay")) {
        r.replay.push_back({row.at("events").get<std::uint64_t>(),
                            row.at("inserts").get<std::uint64_t>(),
                            row.at("deletes").get<std::uint64_t>(),
                            row.at("insert_ms").get<double>(), row.at("delete_ms").get<double>()});
    }
}

} // namespace dbl

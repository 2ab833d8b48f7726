#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbl/graph.hpp"
#include "dbl/index.hpp"

namespace dbl {

enum class AnswerRule : std::uint8_t {
    Reflexive,
    DlPositive,
    BlNegative,
    Thm1Negative, // DL certifies v reaches u, so u cannot reach v
    Thm2Negative, // u or v shares an SCC with a landmark
    BfsPositive,
    BfsNegative,
};

std::string_view to_string(AnswerRule r);
AnswerRule parse_answer_rule(std::string_view text);

struct QueryOutcome {
    bool reachable = false;
    AnswerRule answered_by = AnswerRule::BfsNegative;
    std::uint64_t visited = 0; // vertices dequeued by the BFS; 0 when labels answered

    bool label_answered() const noexcept {
        return answered_by != AnswerRule::BfsPositive && answered_by != AnswerRule::BfsNegative;
    }

    friend bool operator==(const QueryOutcome&, const QueryOutcome&) = default;
};

/// Switches for ablation runs. Defaults enable every rule.
struct QueryOptions {
    bool use_dl = true; // off: no DL checks anywhere (BL-only index)
    bool use_bl = true; // off: no BL checks anywhere (DL-only index)
    bool thm1 = true;
    bool thm2 = true;
    bool dl_prune = true;
    bool bl_prune = true;
};

/// Per-worker BFS state. Visited marks are epoch stamps, so a reset is O(1).
class QueryScratch {
public:
    void prepare(std::size_t n);
    bool mark(VertexId v) {
        if (stamp_[v] == epoch_) return false;
        stamp_[v] = epoch_;
        return true;
    }
    std::vector<VertexId>& queue() noexcept { return queue_; }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<VertexId> queue_;
};

/// Answers q(u, v). Label rules run first (DL positive, BL negative, then the
/// two DL early-termination rules); otherwise a forward BFS from u that skips
/// vertices already certified reachable from u or failing BL containment
/// against v.
QueryOutcome query(const DynamicGraph& g, const DblIndex& idx, VertexId u, VertexId v,
                   QueryScratch& scratch, const QueryOptions& opts = {});
QueryOutcome query(const DynamicGraph& g, const DblIndex& idx, VertexId u, VertexId v,
                   const QueryOptions& opts = {});

struct BatchStats {
    std::size_t queries = 0;
    std::size_t label_answered = 0;
    std::size_t reachable = 0;
    std::uint64_t visited_total = 0;
    std::vector<std::size_t> by_rule; // indexed by AnswerRule
    double rho = 0.0;                 // label_answered / queries (1 when empty)
    double elapsed_ms = 0.0;
};

struct BatchResult {
    std::vector<QueryOutcome> outcomes;
    BatchStats stats;
};

using QueryPair = std::pair<VertexId, VertexId>;

/// Runs the queries on `workers` threads over contiguous slices. The outcome
/// vector is identical for every worker count.
BatchResult query_batch(const DynamicGraph& g, const DblIndex& idx,
                        std::span<const QueryPair> queries, std::size_t workers,
                        const QueryOptions& opts = {});

BatchStats summarize(std::span<const QueryOutcome> outcomes);

/// One-line provenance for logs.
std::string explain(const QueryOutcome& outcome);

} // namespace dbl

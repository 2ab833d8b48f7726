#include "dbl/query.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "dbl/errors.hpp"

namespace dbl {

std::string_view to_string(AnswerRule r) {
    switch (r) {
    case AnswerRule::Reflexive: return "REFLEXIVE";
    case AnswerRule::DlPositive: return "DL_POSITIVE";
    case AnswerRule::BlNegative: return "BL_NEGATIVE";
    case AnswerRule::Thm1Negative: return "THM1_NEGATIVE";
    case AnswerRule::Thm2Negative: return "THM2_NEGATIVE";
    case AnswerRule::BfsPositive: return "BFS_POSITIVE";
    case AnswerRule::BfsNegative: return "BFS_NEGATIVE";
    }
    return "UNKNOWN";
}

AnswerRule parse_answer_rule(std::string_view text) {
    for (int i = 0; i <= static_cast<int>(AnswerRule::BfsNegative); ++i) {
        auto r = static_cast<AnswerRule>(i);
        if (to_string(r) == text) return r;
    }
    throw std::invalid_argument("unknown answer rule '" + std::string(text) + "'");
}

void QueryScratch::prepare(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    queue_.clear();
}

QueryOutcome query(const DynamicGraph& g, const DblIndex& idx, VertexId u, VertexId v,
                   QueryScratch& scratch, const QueryOptions& opts) {
    const std::size_t n = g.vertex_count();
    if (idx.vertex_count() != n) {
        throw ConsistencyError("index covers " + std::to_string(idx.vertex_count()) +
                               " vertices but graph has " + std::to_string(n));
    }
    if (u >= n || v >= n) throw std::out_of_range("query vertex out of range");

    if (u == v) return {true, AnswerRule::Reflexive, 0};
    if (opts.use_dl && dl_intersec(idx, u, v)) return {true, AnswerRule::DlPositive, 0};
    if (opts.use_bl && !bl_contain(idx, u, v)) return {false, AnswerRule::BlNegative, 0};
    if (opts.use_dl && opts.thm1 && dl_intersec(idx, v, u)) {
        return {false, AnswerRule::Thm1Negative, 0};
    }
    if (opts.use_dl && opts.thm2 && (dl_intersec(idx, u, u) || dl_intersec(idx, v, v))) {
        return {false, AnswerRule::Thm2Negative, 0};
    }

    const bool dl_prune = opts.use_dl && opts.dl_prune;
    const bool bl_prune = opts.use_bl && opts.bl_prune;
    scratch.prepare(n);
    auto& queue = scratch.queue();
    scratch.mark(u);
    queue.push_back(u);
    std::uint64_t visited = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId w = queue[head];
        ++visited;
        for (VertexId x : g.successors(w)) {
            if (x == v) return {true, AnswerRule::BfsPositive, visited};
            if (!scratch.mark(x)) continue;
            if (dl_prune && dl_intersec(idx, u, x)) continue;
            if (bl_prune && !bl_contain(idx, x, v)) continue;
            queue.push_back(x);
        }
    }
    return {false, AnswerRule::BfsNegative, visited};
}

QueryOutcome query(const DynamicGraph& g, const DblIndex& idx, VertexId u, VertexId v,
                   const QueryOptions& opts) {
    QueryScratch scratch;
    return query(g, idx, u, v, scratch, opts);
}

BatchStats summarize(std::span<const QueryOutcome> outcomes) {
    BatchStats s;
    s.queries = outcomes.size();
    s.by_rule.assign(static_cast<std::size_t>(AnswerRule::BfsNegative) + 1, 0);
    for (const auto& o : outcomes) {
        ++s.by_rule[static_cast<std::size_t>(o.answered_by)];
        if (o.label_answered()) ++s.label_answered;
        if (o.reachable) ++s.reachable;
        s.visited_total += o.visited;
    }
    s.rho = s.queries == 0 ? 1.0
                           : static_cast<double>(s.label_answered) / static_cast<double>(s.queries);
    return s;
}

BatchResult query_batch(const DynamicGraph& g, const DblIndex& idx,
                        std::span<const QueryPair> queries, std::size_t workers,
                        const QueryOptions& opts) {
    if (workers == 0) throw std::invalid_argument("workers must be at least 1");
    if (idx.vertex_count() != g.vertex_count()) {
        throw ConsistencyError("index and graph vertex counts differ");
    }
    BatchResult result;
    result.outcomes.resize(queries.size());
    workers = std::max<std::size_t>(1, std::min(workers, queries.size()));

    auto run_slice = [&](std::size_t begin, std::size_t end) {
        QueryScratch scratch;
        for (std::size_t i = begin; i < end; ++i) {
            result.outcomes[i] = query(g, idx, queries[i].first, queries[i].second, scratch, opts);
        }
    };

    const auto start = std::chrono::steady_clock::now();
    if (workers == 1) {
        run_slice(0, queries.size());
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (queries.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(queries.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_slice, begin, end);
        }
    }
    const auto stop = std::chrono::steady_clock::now();

    result.stats = summarize(result.outcomes);
    result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return result;
}

std::string explain(const QueryOutcome& o) {
    const std::string answer = o.reachable ? "reachable" : "unreachable";
    switch (o.answered_by) {
    case AnswerRule::Reflexive:
        return "answered positive as self-query (u == v)";
    case AnswerRule::DlPositive:
        return "answered positive by DL label intersection";
    case AnswerRule::BlNegative:
        return "answered negative by BL label containment failure";
    case AnswerRule::Thm1Negative:
        return "answered negative by DL reverse intersection (v reaches u, same-SCC rule)";
    case AnswerRule::Thm2Negative:
        return "answered negative by DL self intersection (landmark SCC rule)";
    case AnswerRule::BfsPositive:
    case AnswerRule::BfsNegative:
        return "answered " + std::string(o.reachable ? "positive" : "negative") +
               " by pruned BFS after visiting " + std::to_string(o.visited) + " vertices";
    }
    return answer;
}

} // namespace dbl

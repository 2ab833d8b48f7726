#include "dbl/update.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dbl/errors.hpp"
#include "dbl/oracle.hpp"

namespace dbl {

UpdateStats& UpdateStats::operator+=(const UpdateStats& o) {
    visited += o.visited;
    labels_changed += o.labels_changed;
    early_terminated = early_terminated || o.early_terminated;
    tainted = tainted || o.tainted;
    rebuilt = rebuilt || o.rebuilt;
    return *this;
}

namespace {

void check_ids(const DynamicGraph& g, const DblIndex& idx, VertexId u, VertexId v) {
    if (idx.vertex_count() != g.vertex_count()) {
        throw ConsistencyError("index and graph vertex counts differ");
    }
    if (u >= g.vertex_count() || v >= g.vertex_count()) {
        throw std::out_of_range("vertex id out of range");
    }
}

/// One propagation direction: in-labels travel along edges, out-labels
/// against them.
struct Direction {
    LabelTable& dl;
    LabelTable& bl;
    bool forward;

    std::span<const VertexId> next(const DynamicGraph& g, VertexId x) const {
        return forward ? g.successors(x) : g.predecessors(x);
    }
    std::span<const VertexId> sources(const DynamicGraph& g, VertexId x) const {
        return forward ? g.predecessors(x) : g.successors(x);
    }
    std::optional<std::uint32_t> own_leaf_bit(const LeafSets& leaves, VertexId x) const {
        return forward ? leaves.in_bucket(x) : leaves.out_bucket(x);
    }
};

/// Unions (src_dl, src_bl) into every vertex reachable from `start` along
/// `dir`, stopping at vertices that already hold both.
void propagate_union(const DynamicGraph& g, Direction dir, VertexId start, const BitLabel& src_dl,
                     const BitLabel& src_bl, UpdateStats& stats) {
    auto affected = [&](VertexId x) {
        return !is_subset(src_dl, dir.dl[x]) || !is_subset(src_bl, dir.bl[x]);
    };
    if (!affected(start)) return;

    std::vector<VertexId> queue;
    auto absorb = [&](VertexId x) {
        unite(dir.dl[x], src_dl);
        unite(dir.bl[x], src_bl);
        ++stats.labels_changed;
        queue.push_back(x);
    };
    absorb(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ++stats.visited;
        for (VertexId x : dir.next(g, queue[head])) {
            if (affected(x)) absorb(x);
        }
    }
}

/// Deletion propagation for one direction. `seed_dl`/`seed_bl` are the labels
/// that flowed over the removed edge into `start`.
class Retraction {
public:
    Retraction(const DynamicGraph& g, const DblIndex& idx, Direction dir, UpdateStats& stats)
        : g_(g), idx_(idx), dir_(dir), stats_(stats) {}

    void run(VertexId start, const BitLabel& seed_dl, const BitLabel& seed_bl) {
        struct Pending {
            VertexId vertex;
            BitLabel dl;
            BitLabel bl;
        };
        std::deque<Pending> queue;

        BitLabel rd = seed_dl;
        BitLabel rb = seed_bl;
        if (removal_set(start, rd, rb)) queue.push_back({start, std::move(rd), std::move(rb)});

        while (!queue.empty()) {
            Pending p = std::move(queue.front());
            queue.pop_front();
            ++stats_.visited;
            for (VertexId x : dir_.next(g_, p.vertex)) {
                if (x == p.vertex) continue;
                BitLabel xd = p.dl;
                BitLabel xb = p.bl;
                if (removal_set(x, xd, xb)) queue.push_back({x, std::move(xd), std::move(xb)});
            }
        }
    }

private:
    /// Narrows (rd, rb) to the bits x must lose and removes them from x's
    /// labels. Returns whether anything was removed.
    bool removal_set(VertexId x, BitLabel& rd, BitLabel& rb) {
        intersect_with(rd, dir_.dl[x]);
        intersect_with(rb, dir_.bl[x]);
        if (rd.empty() && rb.empty()) return false;

        if (auto p = idx_.landmarks().position(x)) rd.reset(*p);
        if (auto b = dir_.own_leaf_bit(idx_.leaves(), x)) rb.reset(*b);
        const BitLabel before_dl = rd;
        const BitLabel before_bl = rb;

        for (VertexId y : dir_.sources(g_, x)) {
            if (y == x) continue; // self-loops carry nothing
            subtract(rd, dir_.dl[y]);
            subtract(rb, dir_.bl[y]);
            if (rd.empty() && rb.empty()) break;
        }

        // Bits a neighbour still holds survive. Inside a cycle
        // that neighbour may itself be stale.
        if ((rd != before_dl || rb != before_bl) && on_cycle(x)) stats_.tainted = true;

        if (rd.empty() && rb.empty()) return false;
        subtract(dir_.dl[x], rd);
        subtract(dir_.bl[x], rb);
        ++stats_.labels_changed;
        return true;
    }

    bool on_cycle(VertexId x) {
        if (scc_.empty()) {
            scc_ = strongly_connected_components(g_);
            scc_size_.assign(g_.vertex_count(), 0);
            for (auto c : scc_) ++scc_size_[c];
        }
        return scc_size_[scc_[x]] > 1;
    }

    const DynamicGraph& g_;
    const DblIndex& idx_;
    Direction dir_;
    UpdateStats& stats_;
    std::vector<std::uint32_t> scc_;
    std::vector<std::uint32_t> scc_size_;
};

} // namespace

UpdateStats insert_edge(DynamicGraph& g, DblIndex& idx, VertexId u, VertexId v) {
    check_ids(g, idx, u, v);
    UpdateStats stats;
    // Evaluated on the pre-insertion labels.
    const bool certified = dl_intersec(idx, u, v);
    if (!g.add_edge(u, v)) return stats;
    if (certified) {
        stats.early_terminated = true;
        return stats;
    }

    const auto& cfg = idx.config();
    const BitLabel in_dl(cfg.k, idx.dl_in(u));
    const BitLabel in_bl(cfg.k_prime, idx.bl_in(u));
    propagate_union(g, {idx.dl_in_table(), idx.bl_in_table(), true}, v, in_dl, in_bl, stats);

    const BitLabel out_dl(cfg.k, idx.dl_out(v));
    const BitLabel out_bl(cfg.k_prime, idx.bl_out(v));
    propagate_union(g, {idx.dl_out_table(), idx.bl_out_table(), false}, u, out_dl, out_bl, stats);
    return stats;
}

UpdateStats delete_edge(DynamicGraph& g, DblIndex& idx, VertexId u, VertexId v,
                        const UpdateOptions& opts) {
    check_ids(g, idx, u, v);
    if (!g.remove_edge(u, v)) {
        throw PreconditionError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") is not in the graph");
    }
    UpdateStats stats;
    if (u == v) return stats;

    const auto& cfg = idx.config();
    {
        const BitLabel seed_dl(cfg.k, idx.dl_in(u));
        const BitLabel seed_bl(cfg.k_prime, idx.bl_in(u));
        Retraction(g, idx, {idx.dl_in_table(), idx.bl_in_table(), true}, stats)
            .run(v, seed_dl, seed_bl);
    }
    {
        const BitLabel seed_dl(cfg.k, idx.dl_out(v));
        const BitLabel seed_bl(cfg.k_prime, idx.bl_out(v));
        Retraction(g, idx, {idx.dl_out_table(), idx.bl_out_table(), false}, stats)
            .run(u, seed_dl, seed_bl);
    }

    if (stats.tainted && opts.rebuild_on_taint) {
        idx = rebuild_index(g, idx);
        stats.rebuilt = true;
    }
    return stats;
}

VertexInsertResult insert_vertex(DynamicGraph& g, DblIndex& idx,
                                 std::span<const VertexId> out_edges,
                                 std::span<const VertexId> in_edges) {
    if (idx.vertex_count() != g.vertex_count()) {
        throw ConsistencyError("index and graph vertex counts differ");
    }
    const std::size_t n_after = g.vertex_count() + 1;
    for (auto list : {out_edges, in_edges}) {
        for (VertexId w : list) {
            if (w >= n_after) throw std::out_of_range("vertex id out of range");
        }
    }
    VertexInsertResult result;
    result.id = g.add_vertex();
    idx.add_vertex();
    for (VertexId w : out_edges) result.stats += insert_edge(g, idx, result.id, w);
    for (VertexId w : in_edges) result.stats += insert_edge(g, idx, w, result.id);
    return result;
}

UpdateStats delete_vertex(DynamicGraph& g, DblIndex& idx, VertexId v, const UpdateOptions& opts) {
    check_ids(g, idx, v, v);
    UpdateStats stats;
    const std::vector<VertexId> succ(g.successors(v).begin(), g.successors(v).end());
    const std::vector<VertexId> pred(g.predecessors(v).begin(), g.predecessors(v).end());
    for (VertexId w : succ) stats += delete_edge(g, idx, v, w, opts);
    for (VertexId w : pred) {
        if (g.has_edge(w, v)) stats += delete_edge(g, idx, w, v, opts);
    }
    idx.reset_labels(v);
    return stats;
}

std::string_view to_string(LabelFamily f) {
    switch (f) {
    case LabelFamily::DlIn: return "DL_in";
    case LabelFamily::DlOut: return "DL_out";
    case LabelFamily::BlIn: return "BL_in";
    case LabelFamily::BlOut: return "BL_out";
    }
    return "?";
}

VerifyReport verify_labels(const DynamicGraph& g, const DblIndex& idx, bool exact) {
    VerifyReport report;
    if (idx.vertex_count() != g.vertex_count()) {
        report.ok = false;
        return report;
    }
    std::set<std::tuple<LabelFamily, VertexId, std::uint32_t>> seen;
    auto record = [&](LabelFamily f, VertexId v, std::uint32_t bit, bool present,
                      const char* reason) {
        if (seen.emplace(f, v, bit).second) {
            report.violations.push_back({f, v, bit, present, reason});
        }
    };

    struct Family {
        LabelFamily id;
        const LabelTable& table;
        bool forward;
    };
    const Family families[] = {
        {LabelFamily::DlIn, idx.dl_in_table(), true},
        {LabelFamily::DlOut, idx.dl_out_table(), false},
        {LabelFamily::BlIn, idx.bl_in_table(), true},
        {LabelFamily::BlOut, idx.bl_out_table(), false},
    };

    for (const auto& fam : families) {
        BitLabel expected(fam.table.width());
        BitLabel diff(fam.table.width());
        const bool is_dl = fam.id == LabelFamily::DlIn || fam.id == LabelFamily::DlOut;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::fill(expected.view().begin(), expected.view().end(), Word{0});
            for (VertexId y : fam.forward ? g.predecessors(v) : g.successors(v)) {
                if (y != v) unite(expected, fam.table[y]);
            }
            std::optional<std::uint32_t> own;
            if (is_dl) {
                own = idx.landmarks().position(v);
            } else {
                own = fam.forward ? idx.leaves().in_bucket(v) : idx.leaves().out_bucket(v);
            }
            if (own) expected.set(*own);

            const ConstLabelView actual = fam.table[v];
            if (std::equal(actual.begin(), actual.end(), expected.view().begin())) continue;
            // symmetric difference
            for (std::size_t w = 0; w < actual.size(); ++w) {
                diff.view()[w] = actual[w] ^ expected.view()[w];
            }
            for (std::size_t bit : diff.members()) {
                record(fam.id, v, static_cast<std::uint32_t>(bit), test_bit(actual, bit), "fixpoint");
            }
        }
    }

    if (exact) {
        const DblIndex fresh = rebuild_index(g, idx);
        const Family rebuilt[] = {
            {LabelFamily::DlIn, fresh.dl_in_table(), true},
            {LabelFamily::DlOut, fresh.dl_out_table(), false},
            {LabelFamily::BlIn, fresh.bl_in_table(), true},
            {LabelFamily::BlOut, fresh.bl_out_table(), false},
        };
        for (std::size_t f = 0; f < 4; ++f) {
            const auto& mine = families[f].table;
            const auto& truth = rebuilt[f].table;
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                for (std::size_t bit = 0; bit < mine.width(); ++bit) {
                    const bool have = test_bit(mine[v], bit);
                    if (have != test_bit(truth[v], bit)) {
                        record(families[f].id, v, static_cast<std::uint32_t>(bit), have, "exactness");
                    }
                }
            }
        }
    }

    report.ok = report.violations.empty();
    return report;
}

} // namespace dbl

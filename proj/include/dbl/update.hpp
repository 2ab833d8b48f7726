#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dbl/graph.hpp"
#include "dbl/index.hpp"

namespace dbl {

struct UpdateStats {
    std::uint64_t visited = 0;        // vertices dequeued during maintenance
    std::uint64_t labels_changed = 0; // vertex label rows modified (per direction)
    bool early_terminated = false;    // insertion skipped: DL already certified u -> v
    bool tainted = false;             // deletion retained bits inside a cycle
    bool rebuilt = false;             // taint escalated to a full rebuild

    UpdateStats& operator+=(const UpdateStats& o);
};

struct UpdateOptions {
    /// Rebuild the labels from scratch when a deletion reports taint.
    bool rebuild_on_taint = false;
};

/// Adds (u, v) and propagates labels: DL_in(u)/BL_in(u) flood forward from v,
/// DL_out(v)/BL_out(v) flood backward from u. A vertex whose labels already
/// contain both sources is not expanded. Skipped entirely when DL already
/// certified u -> v before the insertion, or when the edge existed.
UpdateStats insert_edge(DynamicGraph& g, DblIndex& idx, VertexId u, VertexId v);

/// Removes (u, v) and retracts bits carried only by that edge.
///
/// Experimental. For each affected vertex x the removal set is the incoming
/// removal set, restricted to x's label, minus the labels of x's remaining
/// predecessors (successors, for out-labels) and minus x's own landmark/leaf
/// bit. Exact on DAGs. On cyclic graphs bits that sustain each other around a
/// cycle can survive; that case sets `tainted`. Throws PreconditionError if
/// the edge is absent.
UpdateStats delete_edge(DynamicGraph& g, DblIndex& idx, VertexId u, VertexId v,
                        const UpdateOptions& opts = {});

struct VertexInsertResult {
    VertexId id = 0;
    UpdateStats stats;
};

/// Adds a vertex with empty labels, then each edge (id, w) for w in
/// `out_edges` and (w, id) for w in `in_edges` through insert_edge.
VertexInsertResult insert_vertex(DynamicGraph& g, DblIndex& idx,
                                 std::span<const VertexId> out_edges,
                                 std::span<const VertexId> in_edges);

/// Removes every edge incident to v through delete_edge. v stays as an
/// isolated id with base-state labels.
UpdateStats delete_vertex(DynamicGraph& g, DblIndex& idx, VertexId v,
                          const UpdateOptions& opts = {});

enum class LabelFamily : std::uint8_t { DlIn, DlOut, BlIn, BlOut };
std::string_view to_string(LabelFamily f);

struct LabelViolation {
    LabelFamily family = LabelFamily::DlIn;
    VertexId vertex = 0;
    std::uint32_t bit = 0;
    bool present = false;   // bit is set in the stored label
    std::string reason;     // "fixpoint" or "exactness"

    friend bool operator==(const LabelViolation&, const LabelViolation&) = default;
};

struct VerifyReport {
    bool ok = true;
    std::vector<LabelViolation> violations;
};

/// Checks every label against the union of its neighbours' labels plus the
/// vertex's own bit, in O((k + k') m). With `exact`, also compares against a
/// from-scratch build. Each (family, vertex, bit) is reported once.
VerifyReport verify_labels(const DynamicGraph& g, const DblIndex& idx, bool exact = false);

} // namespace dbl

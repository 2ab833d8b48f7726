#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dbl/bit_label.hpp"
#include "dbl/graph.hpp"

namespace dbl {

/// Landmark ranking score over (in-degree, out-degree).
enum class LandmarkStrategy : std::uint8_t {
    Max,     // A: max(|Pre|, |Suc|)
    Min,     // B: min(|Pre|, |Suc|)
    Sum,     // C: |Pre| + |Suc|
    Product, // |Pre| * |Suc|, the default
};

std::string_view to_string(LandmarkStrategy s);
/// Accepts "A"/"max", "B"/"min", "C"/"sum", "ours"/"product" (case-insensitive).
LandmarkStrategy parse_strategy(std::string_view text);

std::uint64_t landmark_score(LandmarkStrategy s, std::uint64_t in_degree, std::uint64_t out_degree);

struct IndexConfig {
    std::uint32_t k = 64;       // DL width, one bit per landmark
    std::uint32_t k_prime = 64; // BL width, one bit per leaf bucket
    LandmarkStrategy strategy = LandmarkStrategy::Product;
    std::uint64_t leaf_threshold = 0; // r
    std::uint64_t hash_seed = 0;

    /// Throws ConfigError. k may be 0 (no landmarks); k_prime must be positive.
    void validate() const;

    friend bool operator==(const IndexConfig&, const IndexConfig&) = default;
};

class LandmarkSet {
public:
    LandmarkSet() = default;
    explicit LandmarkSet(std::vector<VertexId> landmarks);

    const std::vector<VertexId>& vertices() const noexcept { return landmarks_; }
    std::size_t size() const noexcept { return landmarks_.size(); }
    /// Bit index of `v` if it is a landmark.
    std::optional<std::uint32_t> position(VertexId v) const;

    friend bool operator==(const LandmarkSet& a, const LandmarkSet& b) {
        return a.landmarks_ == b.landmarks_;
    }

private:
    std::vector<VertexId> landmarks_;
    std::unordered_map<VertexId, std::uint32_t> position_;
};

inline constexpr std::uint32_t kNoBucket = std::numeric_limits<std::uint32_t>::max();

/// Leaf vertices feeding BL_in (sources) and BL_out (sinks), and the bucket
/// each leaf hashes to.
struct LeafSets {
    std::vector<VertexId> leaves_in;
    std::vector<VertexId> leaves_out;
    std::vector<std::uint32_t> bucket; // per vertex; kNoBucket for non-leaves

    std::optional<std::uint32_t> in_bucket(VertexId v) const;
    std::optional<std::uint32_t> out_bucket(VertexId v) const;

    /// Extends the per-vertex tables to n vertices; new vertices are not leaves.
    void grow(std::size_t n);

    friend bool operator==(const LeafSets&, const LeafSets&) = default;

private:
    friend LeafSets make_leaf_sets(std::vector<VertexId>, std::vector<VertexId>,
                                   std::vector<std::uint32_t>);
    std::vector<std::uint8_t> role_; // bit 0: in-leaf, bit 1: out-leaf
};

/// Assembles LeafSets from explicit lists and a per-vertex bucket table.
/// `bucket` must cover every listed leaf.
LeafSets make_leaf_sets(std::vector<VertexId> leaves_in, std::vector<VertexId> leaves_out,
                        std::vector<std::uint32_t> bucket);

/// Deterministic leaf bucket in [0, k_prime).
///
///   x = (v XOR seed) * 0x9E3779B97F4A7C15      (mod 2^64)
///   x = x XOR (x >> 29)
///   x = x * 0xBF58476D1CE4E5B9                 (mod 2^64)
///   x = x XOR (x >> 32)
///   bucket = x mod k_prime
std::uint32_t leaf_hash(VertexId v, std::uint32_t k_prime, std::uint64_t seed);

/// Top-k vertices by strategy score; ties go to the smaller id.
LandmarkSet select_landmarks(const DynamicGraph& g, std::size_t k, LandmarkStrategy strategy);

/// r = 0: zero in-degree vertices feed BL_in, zero out-degree vertices feed
/// BL_out. r > 0: every v with |Pre(v)|*|Suc(v)| <= r goes into both sets.
LeafSets select_leaves(const DynamicGraph& g, std::uint64_t r, std::uint32_t k_prime,
                       std::uint64_t seed);

/// The DBL index: four bitmaps per vertex plus the frozen landmark and leaf
/// selections they were built from.
class DblIndex {
public:
    DblIndex() = default;
    DblIndex(IndexConfig config, LandmarkSet landmarks, LeafSets leaves, std::size_t n);

    std::size_t vertex_count() const noexcept { return dl_in_.rows(); }
    const IndexConfig& config() const noexcept { return config_; }
    const LandmarkSet& landmarks() const noexcept { return landmarks_; }
    const LeafSets& leaves() const noexcept { return leaves_; }

    LabelView dl_in(VertexId v) noexcept { return dl_in_[v]; }
    LabelView dl_out(VertexId v) noexcept { return dl_out_[v]; }
    LabelView bl_in(VertexId v) noexcept { return bl_in_[v]; }
    LabelView bl_out(VertexId v) noexcept { return bl_out_[v]; }
    ConstLabelView dl_in(VertexId v) const noexcept { return dl_in_[v]; }
    ConstLabelView dl_out(VertexId v) const noexcept { return dl_out_[v]; }
    ConstLabelView bl_in(VertexId v) const noexcept { return bl_in_[v]; }
    ConstLabelView bl_out(VertexId v) const noexcept { return bl_out_[v]; }

    LabelTable& dl_in_table() noexcept { return dl_in_; }
    LabelTable& dl_out_table() noexcept { return dl_out_; }
    LabelTable& bl_in_table() noexcept { return bl_in_; }
    LabelTable& bl_out_table() noexcept { return bl_out_; }
    const LabelTable& dl_in_table() const noexcept { return dl_in_; }
    const LabelTable& dl_out_table() const noexcept { return dl_out_; }
    const LabelTable& bl_in_table() const noexcept { return bl_in_; }
    const LabelTable& bl_out_table() const noexcept { return bl_out_; }

    /// Appends a vertex with empty labels. It is neither landmark nor leaf.
    VertexId add_vertex();

    /// Resets v's labels to the base state: only its own landmark/leaf bits.
    void reset_labels(VertexId v);

    /// Number of vertices that are both a landmark and a leaf.
    std::size_t landmark_leaf_overlap() const;

    friend bool operator==(const DblIndex&, const DblIndex&) = default;

private:
    IndexConfig config_;
    LandmarkSet landmarks_;
    LeafSets leaves_;
    LabelTable dl_in_;
    LabelTable dl_out_;
    LabelTable bl_in_;
    LabelTable bl_out_;
};

/// Selects landmarks and leaves per `cfg`, then builds all four label families.
DblIndex build_index(const DynamicGraph& g, const IndexConfig& cfg);

/// Builds labels for a fixed selection. Each landmark (each leaf bucket) gets
/// one BFS that sets its bit in every vertex it reaches, skipping vertices
/// that already carry the bit. Backward BFS on the reversed graph fills the
/// out-labels.
DblIndex build_index(const DynamicGraph& g, const IndexConfig& cfg, LandmarkSet landmarks,
                     LeafSets leaves);

/// Rebuilds `idx` from scratch on `g`, keeping its configuration and selections.
DblIndex rebuild_index(const DynamicGraph& g, const DblIndex& idx);

/// DL_out(x) ∩ DL_in(y) ≠ ∅, i.e. x certainly reaches y.
inline bool dl_intersec(const DblIndex& idx, VertexId x, VertexId y) {
    return intersects(idx.dl_out(x), idx.dl_in(y));
}

/// BL_in(x) ⊆ BL_in(y) and BL_out(y) ⊆ BL_out(x). False means x cannot reach y.
inline bool bl_contain(const DblIndex& idx, VertexId x, VertexId y) {
    return is_subset(idx.bl_in(x), idx.bl_in(y)) && is_subset(idx.bl_out(y), idx.bl_out(x));
}

} // namespace dbl

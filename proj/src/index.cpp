#include "dbl/index.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>

#include "dbl/errors.hpp"

namespace dbl {

std::string_view to_string(LandmarkStrategy s) {
    switch (s) {
    case LandmarkStrategy::Max: return "A";
    case LandmarkStrategy::Min: return "B";
    case LandmarkStrategy::Sum: return "C";
    case LandmarkStrategy::Product: return "ours";
    }
    return "?";
}

LandmarkStrategy parse_strategy(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "a" || t == "max") return LandmarkStrategy::Max;
    if (t == "b" || t == "min") return LandmarkStrategy::Min;
    if (t == "c" || t == "sum") return LandmarkStrategy::Sum;
    if (t == "ours" || t == "product") return LandmarkStrategy::Product;
    throw ConfigError("unknown landmark strategy '" + std::string(text) + "'");
}

std::uint64_t landmark_score(LandmarkStrategy s, std::uint64_t in_degree, std::uint64_t out_degree) {
    switch (s) {
    case LandmarkStrategy::Max: return std::max(in_degree, out_degree);
    case LandmarkStrategy::Min: return std::min(in_degree, out_degree);
    case LandmarkStrategy::Sum: return in_degree + out_degree;
    case LandmarkStrategy::Product: return in_degree * out_degree;
    }
    return 0;
}

void IndexConfig::validate() const {
    if (k_prime == 0) throw ConfigError("BL width k' must be at least 1");
}

LandmarkSet::LandmarkSet(std::vector<VertexId> landmarks) : landmarks_(std::move(landmarks)) {
    for (std::uint32_t i = 0; i < landmarks_.size(); ++i) {
        if (!position_.emplace(landmarks_[i], i).second) {
            throw ConfigError("duplicate landmark " + std::to_string(landmarks_[i]));
        }
    }
}

std::optional<std::uint32_t> LandmarkSet::position(VertexId v) const {
    auto it = position_.find(v);
    if (it == position_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> LeafSets::in_bucket(VertexId v) const {
    if (v < role_.size() && (role_[v] & 1u)) return bucket[v];
    return std::nullopt;
}

std::optional<std::uint32_t> LeafSets::out_bucket(VertexId v) const {
    if (v < role_.size() && (role_[v] & 2u)) return bucket[v];
    return std::nullopt;
}

void LeafSets::grow(std::size_t n) {
    if (bucket.size() < n) bucket.resize(n, kNoBucket);
    if (role_.size() < n) role_.resize(n, 0);
}

LeafSets make_leaf_sets(std::vector<VertexId> leaves_in, std::vector<VertexId> leaves_out,
                        std::vector<std::uint32_t> bucket) {
    LeafSets s;
    s.role_.assign(bucket.size(), 0);
    for (VertexId v : leaves_in) {
        if (v >= bucket.size() || bucket[v] == kNoBucket) throw ConfigError("leaf without bucket");
        s.role_[v] |= 1u;
    }
    for (VertexId v : leaves_out) {
        if (v >= bucket.size() || bucket[v] == kNoBucket) throw ConfigError("leaf without bucket");
        s.role_[v] |= 2u;
    }
    s.leaves_in = std::move(leaves_in);
    s.leaves_out = std::move(leaves_out);
    s.bucket = std::move(bucket);
    return s;
}

std::uint32_t leaf_hash(VertexId v, std::uint32_t k_prime, std::uint64_t seed) {
    std::uint64_t x = (static_cast<std::uint64_t>(v) ^ seed) * 0x9E3779B97F4A7C15ULL;
    x ^= x >> 29;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 32;
    return static_cast<std::uint32_t>(x % k_prime);
}

LandmarkSet select_landmarks(const DynamicGraph& g, std::size_t k, LandmarkStrategy strategy) {
    const std::size_t n = g.vertex_count();
    if (k > n) {
        throw ConfigError("cannot select " + std::to_string(k) + " landmarks from " +
                          std::to_string(n) + " vertices");
    }
    std::vector<std::uint64_t> score(n);
    for (VertexId v = 0; v < n; ++v) {
        score[v] = landmark_score(strategy, g.in_degree(v), g.out_degree(v));
    }
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), VertexId{0});
    auto better = [&](VertexId a, VertexId b) {
        return score[a] != score[b] ? score[a] > score[b] : a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      better);
    order.resize(k);
    return LandmarkSet(std::move(order));
}

LeafSets select_leaves(const DynamicGraph& g, std::uint64_t r, std::uint32_t k_prime,
                       std::uint64_t seed) {
    if (k_prime == 0) throw ConfigError("BL width k' must be at least 1");
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> in;
    std::vector<VertexId> out;
    std::vector<std::uint32_t> bucket(n, kNoBucket);
    for (VertexId v = 0; v < n; ++v) {
        const std::uint64_t pre = g.in_degree(v);
        const std::uint64_t suc = g.out_degree(v);
        bool is_in = false;
        bool is_out = false;
        if (r == 0) {
            is_in = pre == 0;
            is_out = suc == 0;
        } else {
            is_in = is_out = pre * suc <= r;
        }
        if (is_in) in.push_back(v);
        if (is_out) out.push_back(v);
        if (is_in || is_out) bucket[v] = leaf_hash(v, k_prime, seed);
    }
    return make_leaf_sets(std::move(in), std::move(out), std::move(bucket));
}

DblIndex::DblIndex(IndexConfig config, LandmarkSet landmarks, LeafSets leaves, std::size_t n)
    : config_(config),
      landmarks_(std::move(landmarks)),
      leaves_(std::move(leaves)),
      dl_in_(n, config.k),
      dl_out_(n, config.k),
      bl_in_(n, config.k_prime),
      bl_out_(n, config.k_prime) {
    leaves_.grow(n);
    if (landmarks_.size() > config_.k) throw ConfigError("more landmarks than DL bits");
    for (VertexId v : landmarks_.vertices()) {
        if (v >= n) throw ConfigError("landmark id out of range");
    }
    for (VertexId v = 0; v < std::min(n, leaves_.bucket.size()); ++v) {
        if (leaves_.bucket[v] != kNoBucket && leaves_.bucket[v] >= config_.k_prime) {
            throw ConfigError("leaf bucket out of range");
        }
    }
}

VertexId DblIndex::add_vertex() {
    dl_in_.add_row();
    leaves_.grow(dl_in_.rows());
    dl_out_.add_row();
    bl_in_.add_row();
    bl_out_.add_row();
    return static_cast<VertexId>(dl_in_.rows() - 1);
}

void DblIndex::reset_labels(VertexId v) {
    for (LabelTable* t : {&dl_in_, &dl_out_, &bl_in_, &bl_out_}) {
        auto row = (*t)[v];
        std::fill(row.begin(), row.end(), Word{0});
    }
    if (auto p = landmarks_.position(v)) {
        set_bit(dl_in_[v], *p);
        set_bit(dl_out_[v], *p);
    }
    if (auto b = leaves_.in_bucket(v)) set_bit(bl_in_[v], *b);
    if (auto b = leaves_.out_bucket(v)) set_bit(bl_out_[v], *b);
}

std::size_t DblIndex::landmark_leaf_overlap() const {
    std::size_t count = 0;
    for (VertexId v : landmarks_.vertices()) {
        if (leaves_.in_bucket(v) || leaves_.out_bucket(v)) ++count;
    }
    return count;
}

namespace {

/// Sets `bit` in every vertex reachable from `seeds` (seeds included), not
/// re-expanding vertices that already carry it.
void flood(const DynamicGraph& g, LabelTable& table, std::span<const VertexId> seeds,
           std::size_t bit, bool reverse, std::vector<VertexId>& queue) {
    queue.clear();
    for (VertexId s : seeds) {
        if (test_bit(table[s], bit)) continue;
        set_bit(table[s], bit);
        queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId p = queue[head];
        auto nbrs = reverse ? g.predecessors(p) : g.successors(p);
        for (VertexId x : nbrs) {
            if (test_bit(table[x], bit)) continue;
            set_bit(table[x], bit);
            queue.push_back(x);
        }
    }
}

std::vector<std::vector<VertexId>> group_by_bucket(const std::vector<VertexId>& leaves,
                                                   const LeafSets& sets, std::uint32_t k_prime) {
    std::vector<std::vector<VertexId>> groups(k_prime);
    for (VertexId v : leaves) groups[sets.bucket[v]].push_back(v);
    return groups;
}

} // namespace

DblIndex build_index(const DynamicGraph& g, const IndexConfig& cfg) {
    cfg.validate();
    auto landmarks = select_landmarks(g, std::min<std::size_t>(cfg.k, g.vertex_count()), cfg.strategy);
    auto leaves = select_leaves(g, cfg.leaf_threshold, cfg.k_prime, cfg.hash_seed);
    return build_index(g, cfg, std::move(landmarks), std::move(leaves));
}

DblIndex build_index(const DynamicGraph& g, const IndexConfig& cfg, LandmarkSet landmarks,
                     LeafSets leaves) {
    cfg.validate();
    DblIndex idx(cfg, std::move(landmarks), std::move(leaves), g.vertex_count());
    std::vector<VertexId> queue;
    queue.reserve(g.vertex_count());

    const auto& lm = idx.landmarks().vertices();
    for (std::uint32_t i = 0; i < lm.size(); ++i) {
        const VertexId seed[] = {lm[i]};
        flood(g, idx.dl_in_table(), seed, i, false, queue);
        flood(g, idx.dl_out_table(), seed, i, true, queue);
    }

    const auto sources = group_by_bucket(idx.leaves().leaves_in, idx.leaves(), cfg.k_prime);
    const auto sinks = group_by_bucket(idx.leaves().leaves_out, idx.leaves(), cfg.k_prime);
    for (std::uint32_t b = 0; b < cfg.k_prime; ++b) {
        if (!sources[b].empty()) flood(g, idx.bl_in_table(), sources[b], b, false, queue);
        if (!sinks[b].empty()) flood(g, idx.bl_out_table(), sinks[b], b, true, queue);
    }
    return idx;
}

DblIndex rebuild_index(const DynamicGraph& g, const DblIndex& idx) {
    LeafSets leaves = idx.leaves();
    leaves.grow(g.vertex_count());
    return build_index(g, idx.config(), idx.landmarks(), std::move(leaves));
}

} // namespace dbl

#include "dbl/snapshot.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "dbl/errors.hpp"

namespace dbl {
namespace {

constexpr std::uint32_t kFlagGraph = 1u;
constexpr std::uint64_t kNoVertexLimit = std::uint64_t{1} << 32;

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    template <typename T>
    void put(T value) {
        static_assert(std::is_unsigned_v<T>);
        std::array<char, sizeof(T)> bytes{};
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
        }
        out_.write(bytes.data(), bytes.size());
    }

    void raw(const char* data, std::size_t size) { out_.write(data, static_cast<std::streamsize>(size)); }

private:
    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    template <typename T>
    T get() {
        static_assert(std::is_unsigned_v<T>);
        std::array<unsigned char, sizeof(T)> bytes{};
        in_.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
        if (in_.gcount() != static_cast<std::streamsize>(sizeof(T))) {
            throw FormatError("truncated snapshot");
        }
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
        return value;
    }

    void raw(char* data, std::size_t size) {
        in_.read(data, static_cast<std::streamsize>(size));
        if (in_.gcount() != static_cast<std::streamsize>(size)) throw FormatError("truncated snapshot");
    }

private:
    std::istream& in_;
};

void put_row(Writer& w, ConstLabelView row) {
    for (Word word : row) w.put<std::uint64_t>(word);
}

void get_row(Reader& r, LabelView row) {
    for (Word& word : row) word = r.get<std::uint64_t>();
}

} // namespace

void save_snapshot(std::ostream& out, const DblIndex& idx, const LoadedGraph* graph) {
    const auto& cfg = idx.config();
    const std::size_t n = idx.vertex_count();
    if (graph && graph->graph.vertex_count() != n) {
        throw ConsistencyError("snapshot graph and index vertex counts differ");
    }
    Writer w(out);
    w.raw(kSnapshotMagic, sizeof kSnapshotMagic);
    w.put<std::uint32_t>(kSnapshotVersion);
    w.put<std::uint32_t>(graph ? kFlagGraph : 0u);
    w.put<std::uint64_t>(n);
    w.put<std::uint32_t>(cfg.k);
    w.put<std::uint32_t>(cfg.k_prime);
    w.put<std::uint64_t>(cfg.hash_seed);
    w.put<std::uint64_t>(cfg.leaf_threshold);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(cfg.strategy));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(idx.landmarks().size()));
    for (VertexId l : idx.landmarks().vertices()) w.put<std::uint32_t>(l);

    const auto& leaves = idx.leaves();
    for (const auto* list : {&leaves.leaves_in, &leaves.leaves_out}) {
        w.put<std::uint64_t>(list->size());
        for (VertexId v : *list) {
            w.put<std::uint32_t>(v);
            w.put<std::uint32_t>(leaves.bucket[v]);
        }
    }

    for (VertexId v = 0; v < n; ++v) {
        put_row(w, idx.dl_in(v));
        put_row(w, idx.dl_out(v));
        put_row(w, idx.bl_in(v));
        put_row(w, idx.bl_out(v));
    }

    if (graph) {
        const auto& g = graph->graph;
        w.put<std::uint64_t>(g.edge_count());
        for (VertexId v = 0; v < n; ++v) {
            w.put<std::uint64_t>(graph->original_ids.empty() ? v : graph->original_ids[v]);
        }
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v : g.successors(u)) {
                w.put<std::uint32_t>(u);
                w.put<std::uint32_t>(v);
            }
        }
    }
    if (!out) throw std::runtime_error("failed writing snapshot");
}

Snapshot load_snapshot(std::istream& in) {
    Reader r(in);
    char magic[sizeof kSnapshotMagic];
    r.raw(magic, sizeof magic);
    if (std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0) throw FormatError("bad snapshot magic");
    const auto version = r.get<std::uint32_t>();
    if (version != kSnapshotVersion) {
        throw FormatError("unsupported snapshot version " + std::to_string(version));
    }
    const auto flags = r.get<std::uint32_t>();
    const auto n = r.get<std::uint64_t>();
    if (n >= kNoVertexLimit) throw FormatError("vertex count too large");

    IndexConfig cfg;
    cfg.k = r.get<std::uint32_t>();
    cfg.k_prime = r.get<std::uint32_t>();
    cfg.hash_seed = r.get<std::uint64_t>();
    cfg.leaf_threshold = r.get<std::uint64_t>();
    const auto strategy = r.get<std::uint32_t>();
    if (strategy > static_cast<std::uint32_t>(LandmarkStrategy::Product)) {
        throw FormatError("bad landmark strategy code");
    }
    cfg.strategy = static_cast<LandmarkStrategy>(strategy);

    const auto landmark_count = r.get<std::uint32_t>();
    if (landmark_count > cfg.k) throw FormatError("landmark count exceeds k");
    std::vector<VertexId> landmarks(landmark_count);
    for (auto& l : landmarks) l = r.get<std::uint32_t>();

    std::vector<std::uint32_t> bucket(n, kNoBucket);
    std::vector<VertexId> lists[2];
    for (auto& list : lists) {
        const auto count = r.get<std::uint64_t>();
        if (count > n) throw FormatError("leaf count exceeds vertex count");
        list.resize(count);
        for (auto& v : list) {
            v = r.get<std::uint32_t>();
            const auto b = r.get<std::uint32_t>();
            if (v >= n || b >= cfg.k_prime) throw FormatError("leaf entry out of range");
            bucket[v] = b;
        }
    }

    Snapshot snap;
    try {
        snap.index = DblIndex(cfg, LandmarkSet(std::move(landmarks)),
                              make_leaf_sets(std::move(lists[0]), std::move(lists[1]), std::move(bucket)),
                              n);
    } catch (const ConfigError& e) {
        throw FormatError(std::string("inconsistent snapshot header: ") + e.what());
    }
    auto& idx = snap.index;
    for (VertexId v = 0; v < n; ++v) {
        get_row(r, idx.dl_in(v));
        get_row(r, idx.dl_out(v));
        get_row(r, idx.bl_in(v));
        get_row(r, idx.bl_out(v));
    }

    if (flags & kFlagGraph) {
        const auto m = r.get<std::uint64_t>();
        if (m > n * n) throw FormatError("edge count exceeds n^2");
        LoadedGraph lg;
        lg.original_ids.resize(n);
        for (auto& id : lg.original_ids) id = r.get<std::uint64_t>();
        std::vector<std::pair<VertexId, VertexId>> edges(m);
        for (auto& [u, v] : edges) {
            u = r.get<std::uint32_t>();
            v = r.get<std::uint32_t>();
            if (u >= n || v >= n) throw FormatError("edge endpoint out of range");
        }
        lg.graph = DynamicGraph::from_edges(n, edges);
        snap.graph = std::move(lg);
    }
    return snap;
}

void save_snapshot_file(const std::filesystem::path& path, const DblIndex& idx,
                        const LoadedGraph* graph) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    save_snapshot(out, idx, graph);
}

Snapshot load_snapshot_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_snapshot(in);
}

bool is_snapshot_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[sizeof kSnapshotMagic] = {};
    in.read(magic, sizeof magic);
    return in.gcount() == sizeof magic && std::memcmp(magic, kSnapshotMagic, sizeof magic) == 0;
}

} // namespace dbl

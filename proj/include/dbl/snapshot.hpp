#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "dbl/index.hpp"
#include "dbl/io.hpp"

namespace dbl {

inline constexpr char kSnapshotMagic[8] = {'D', 'B', 'L', 'I', 'N', 'D', 'E', 'X'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Index snapshot, optionally with the graph it was built on. The byte layout
/// is documented in docs/index-format.md.
struct Snapshot {
    DblIndex index;
    std::optional<LoadedGraph> graph;
};

void save_snapshot(std::ostream& out, const DblIndex& idx, const LoadedGraph* graph = nullptr);
Snapshot load_snapshot(std::istream& in);

void save_snapshot_file(const std::filesystem::path& path, const DblIndex& idx,
                        const LoadedGraph* graph = nullptr);
Snapshot load_snapshot_file(const std::filesystem::path& path);

/// True if the file starts with the snapshot magic.
bool is_snapshot_file(const std::filesystem::path& path);

} // namespace dbl

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "dbl/graph.hpp"

namespace dbl {

/// A graph read from text plus the table mapping dense ids back to the ids
/// used in the file (original_ids[dense] == file id).
struct LoadedGraph {
    DynamicGraph graph;
    std::vector<std::uint64_t> original_ids;
};

struct TemporalEdge {
    VertexId src = 0;
    VertexId dst = 0;
    std::uint64_t timestamp = 0;

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

struct TemporalEdgeList {
    std::vector<TemporalEdge> edges; // sorted by timestamp, stable
    std::vector<std::uint64_t> original_ids;
};

/// Parses "src dst" lines. '#' and '%' lines and blank lines are skipped, ids are
/// remapped densely in order of first appearance, duplicate edges collapse.
/// Throws ParseError on malformed lines.
LoadedGraph parse_edge_list(std::string_view text);
LoadedGraph load_edge_list(std::istream& in);

/// Parses "src dst timestamp" lines and stable-sorts by timestamp.
TemporalEdgeList parse_temporal_edge_list(std::string_view text);
TemporalEdgeList load_temporal_edge_list(std::istream& in);

/// Reads a whole file, transparently inflating gzip when built with zlib.
std::string read_text_file(const std::filesystem::path& path);

LoadedGraph load_edge_list_file(const std::filesystem::path& path);
TemporalEdgeList load_temporal_edge_list_file(const std::filesystem::path& path);

/// Writes "src dst" lines using original ids (dense ids if the table is empty).
void write_edge_list(std::ostream& out, const DynamicGraph& g,
                     const std::vector<std::uint64_t>& original_ids = {});

/// Reads "u v" pairs into a flat list. Used for query files.
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(std::string_view text);

} // namespace dbl

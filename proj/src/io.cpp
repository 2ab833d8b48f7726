#include "dbl/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dbl/errors.hpp"

#ifdef DBL_WITH_ZLIB
#include <zlib.h>
#endif

namespace dbl {
namespace {

class IdMapper {
public:
    explicit IdMapper(std::vector<std::uint64_t>& table) : table_(table) {}

    VertexId map(std::uint64_t raw) {
        auto [it, inserted] = ids_.try_emplace(raw, static_cast<VertexId>(table_.size()));
        if (inserted) table_.push_back(raw);
        return it->second;
    }

private:
    std::unordered_map<std::uint64_t, VertexId> ids_;
    std::vector<std::uint64_t>& table_;
};

/// Splits text into lines and hands each non-comment line's integer fields to
/// `fn`. Exactly `arity` fields are required.
template <std::size_t Arity, typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (line[first] == '#' || line[first] == '%') continue;

        std::uint64_t fields[Arity];
        const char* p = line.data() + first;
        const char* last = line.data() + line.size();
        for (std::size_t i = 0; i < Arity; ++i) {
            while (p < last && (*p == ' ' || *p == '\t')) ++p;
            auto [next, ec] = std::from_chars(p, last, fields[i]);
            if (ec != std::errc{} || next == p) {
                throw ParseError(line_no, "expected " + std::to_string(Arity) +
                                              " non-negative integers, got '" +
                                              std::string(line) + "'");
            }
            p = next;
        }
        while (p < last && (*p == ' ' || *p == '\t')) ++p;
        if (p != last) {
            throw ParseError(line_no, "trailing characters in '" + std::string(line) + "'");
        }
        fn(fields);
    }
}

std::string slurp(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

LoadedGraph parse_edge_list(std::string_view text) {
    std::vector<std::uint64_t> table;
    IdMapper mapper(table);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for_each_record<2>(text, [&](const std::uint64_t* f) {
        VertexId u = mapper.map(f[0]);
        VertexId v = mapper.map(f[1]);
        edges.emplace_back(u, v);
    });

    return {DynamicGraph::from_edges(table.size(), edges), std::move(table)};
}

LoadedGraph load_edge_list(std::istream& in) { return parse_edge_list(slurp(in)); }

TemporalEdgeList parse_temporal_edge_list(std::string_view text) {
    TemporalEdgeList out;
    IdMapper mapper(out.original_ids);
    for_each_record<3>(text, [&](const std::uint64_t* f) {
        VertexId u = mapper.map(f[0]);
        VertexId v = mapper.map(f[1]);
        out.edges.push_back({u, v, f[2]});
    });
    std::stable_sort(out.edges.begin(), out.edges.end(),
                     [](const TemporalEdge& a, const TemporalEdge& b) {
                         return a.timestamp < b.timestamp;
                     });
    return out;
}

TemporalEdgeList load_temporal_edge_list(std::istream& in) {
    return parse_temporal_edge_list(slurp(in));
}

std::string read_text_file(const std::filesystem::path& path) {
#ifdef DBL_WITH_ZLIB
    gzFile file = gzopen(path.string().c_str(), "rb");
    if (file == nullptr) throw std::runtime_error("cannot open " + path.string());
    std::string text;
    char buf[1 << 16];
    int got = 0;
    while ((got = gzread(file, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(got));
    bool failed = got < 0;
    gzclose(file);
    if (failed) throw std::runtime_error("read error in " + path.string());
    return text;
#else
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return slurp(in);
#endif
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path) {
    return parse_edge_list(read_text_file(path));
}

TemporalEdgeList load_temporal_edge_list_file(const std::filesystem::path& path) {
    return parse_temporal_edge_list(read_text_file(path));
}

void write_edge_list(std::ostream& out, const DynamicGraph& g,
                     const std::vector<std::uint64_t>& original_ids) {
    auto id = [&](VertexId v) -> std::uint64_t {
        return original_ids.empty() ? v : original_ids[v];
    };
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v : g.successors(u)) out << id(u) << ' ' << id(v) << '\n';
    }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(std::string_view text) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for_each_record<2>(text, [&](const std::uint64_t* f) { out.emplace_back(f[0], f[1]); });
    return out;
}

} // namespace dbl

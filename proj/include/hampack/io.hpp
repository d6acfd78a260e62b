#pragma once

// Plain-text graph formats (1-based vertex labels):
//   digraph:   "n m" followed by m lines "u v", u != v
//   bipartite: "n m" followed by m lines "x y"
//   cycles:    one cycle per line, vertices separated by spaces

#include "hampack/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hampack {

Digraph read_digraph(std::istream& in);
void write_digraph(std::ostream& out, const Digraph& d);

BipartiteGraph read_bipartite(std::istream& in);
void write_bipartite(std::ostream& out, const BipartiteGraph& b);

std::vector<Cycle> read_cycles(std::istream& in);
void write_cycles(std::ostream& out, std::span<const Cycle> cycles);

Digraph load_digraph(const std::filesystem::path& path);
BipartiteGraph load_bipartite(const std::filesystem::path& path);
std::vector<Cycle> load_cycles(const std::filesystem::path& path);

/// Writes through a temporary stream; throws hampack::Error with the path on I/O failure.
void save_text(const std::filesystem::path& path, const std::string& contents);
std::string load_text(const std::filesystem::path& path);

} // namespace hampack

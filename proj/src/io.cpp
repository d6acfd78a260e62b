#include "hampack/io.hpp"

#include "hampack/errors.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace hampack {

namespace {

struct Header {
  std::size_t n = 0;
  std::size_t m = 0;
};

Header read_header(std::istream& in, const char* what) {
  Header h;
  if (!(in >> h.n >> h.m)) throw InvalidInputError(std::string("missing '") + what + "' header line");
  return h;
}

std::vector<Edge> read_pairs(std::istream& in, const Header& h) {
  std::vector<Edge> edges;
  edges.reserve(h.m);
  for (std::size_t i = 0; i < h.m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw InvalidInputError("expected " + std::to_string(h.m) + " edge lines");
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > h.n || static_cast<std::size_t>(v) > h.n)
      throw InvalidInputError("edge line " + std::to_string(i + 1) + " is out of range");
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
  }
  return edges;
}

} // namespace

Digraph read_digraph(std::istream& in) {
  const auto h = read_header(in, "n m");
  const auto edges = read_pairs(in, h);
  return Digraph::from_edges(h.n, edges);
}

void write_digraph(std::ostream& out, const Digraph& d) {
  out << d.vertex_count() << ' ' << d.edge_count() << '\n';
  for (const Edge& e : d.edges()) out << e.from + 1 << ' ' << e.to + 1 << '\n';
}

BipartiteGraph read_bipartite(std::istream& in) {
  const auto h = read_header(in, "n m");
  const auto edges = read_pairs(in, h);
  return BipartiteGraph::from_edges(h.n, edges);
}

void write_bipartite(std::ostream& out, const BipartiteGraph& b) {
  out << b.side_size() << ' ' << b.edge_count() << '\n';
  for (const Edge& e : b.edges()) out << e.from + 1 << ' ' << e.to + 1 << '\n';
}

std::vector<Cycle> read_cycles(std::istream& in) {
  std::vector<Cycle> cycles;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<Vertex> vs;
    long long v = 0;
    while (fields >> v) {
      if (v < 1) throw InvalidInputError("cycle vertices are 1-based");
      vs.push_back(static_cast<Vertex>(v - 1));
    }
    if (!vs.empty()) cycles.emplace_back(std::move(vs));
  }
  return cycles;
}

void write_cycles(std::ostream& out, std::span<const Cycle> cycles) {
  for (const Cycle& c : cycles) {
    bool first = true;
    for (Vertex v : c.vertices()) {
      out << (first ? "" : " ") << v + 1;
      first = false;
    }
    out << '\n';
  }
}

std::string load_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void save_text(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

Digraph load_digraph(const std::filesystem::path& path) {
  std::istringstream in(load_text(path));
  try {
    return read_digraph(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

BipartiteGraph load_bipartite(const std::filesystem::path& path) {
  std::istringstream in(load_text(path));
  try {
    return read_bipartite(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

std::vector<Cycle> load_cycles(const std::filesystem::path& path) {
  std::istringstream in(load_text(path));
  return read_cycles(in);
}

} // namespace hampack

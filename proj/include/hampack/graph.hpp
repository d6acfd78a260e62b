#pragma once

// Core graph types: digraphs, balanced bipartite graphs, permutations and
// the cycle covers (1-factors) that connect them.
//
// Vertices are 0-based everywhere in the library. Text formats and JSON use
// 1-based labels; conversion happens only at the I/O boundary.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hampack {

using Vertex = std::uint32_t;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Dense key for an ordered pair, used by edge-indexed tables.
constexpr std::uint64_t edge_key(Edge e) {
  return (static_cast<std::uint64_t>(e.from) << 32) | e.to;
}
constexpr Edge edge_from_key(std::uint64_t key) {
  return {static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)};
}

/// Simple digraph: no loops, no parallel edges. Adjacency lists are kept
/// sorted so that every iteration order is deterministic.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(std::size_t n);

  /// Builds from an arbitrary edge list; loops are rejected, duplicates collapse.
  static Digraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Returns false if the edge was already present. Throws on loops or out-of-range ends.
  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  /// All edges in lexicographic order.
  std::vector<Edge> edges() const;

  /// Checks that in-lists are exactly the transpose of out-lists.
  bool transpose_consistent() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t edge_count_ = 0;
};

/// Balanced bipartite graph on X = {x_0..x_{n-1}} and Y = {y_0..y_{n-1}}.
/// An Edge here means (x index, y index).
class BipartiteGraph {
public:
  BipartiteGraph() = default;
  explicit BipartiteGraph(std::size_t n);

  static BipartiteGraph from_edges(std::size_t n, std::span<const Edge> edges);
  static BipartiteGraph complete(std::size_t n);

  std::size_t side_size() const { return x_adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  bool add_edge(Vertex x, Vertex y);
  bool remove_edge(Vertex x, Vertex y);
  bool has_edge(Vertex x, Vertex y) const;

  std::span<const Vertex> x_neighbors(Vertex x) const { return x_adj_[x]; }
  std::span<const Vertex> y_neighbors(Vertex y) const { return y_adj_[y]; }
  std::size_t x_degree(Vertex x) const { return x_adj_[x].size(); }
  std::size_t y_degree(Vertex y) const { return y_adj_[y].size(); }

  std::vector<Edge> edges() const;

  /// Minimum over all 2n vertices.
  std::size_t min_degree() const;
  /// Second smallest entry of the sorted degree sequence of all 2n vertices.
  std::size_t second_min_degree() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
  std::vector<std::vector<Vertex>> x_adj_;
  std::vector<std::vector<Vertex>> y_adj_;
  std::size_t edge_count_ = 0;
};

/// A bijection of {0..n-1}.
class Permutation {
public:
  Permutation() = default;
  /// Throws InvalidInputError unless `image` is a bijection.
  explicit Permutation(std::vector<Vertex> image);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  Vertex operator()(Vertex i) const { return image_[i]; }
  std::span<const Vertex> image() const { return image_; }
  Permutation inverse() const;

  /// Number of cycles, fixed points included.
  std::size_t cycle_count() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<Vertex> image_;
};

/// Directed cycle stored as its vertex sequence; edges are consecutive pairs
/// plus the wrap-around. A single vertex is a degenerate cycle without edges.
class Cycle {
public:
  Cycle() = default;
  /// Stores the rotation that starts at the minimum vertex. Throws on repeats or emptiness.
  explicit Cycle(std::vector<Vertex> vertices);

  std::size_t length() const { return vertices_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex front() const { return vertices_.front(); }

  /// The sequence rotated to start at `v`. Throws if `v` is not on the cycle.
  std::vector<Vertex> starting_at(Vertex v) const;
  /// Edges in traversal order from the canonical start; empty for a singleton.
  std::vector<Edge> edges() const;
  bool contains(Vertex v) const;

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;

private:
  std::vector<Vertex> vertices_;
};

/// Vertex-disjoint cycles covering {0..n-1}.
class OneFactor {
public:
  OneFactor() = default;
  /// Throws InvalidInputError unless the cycles partition {0..n-1}.
  OneFactor(std::size_t n, std::vector<Cycle> cycles);

  std::size_t vertex_count() const { return vertex_to_cycle_.size(); }
  std::span<const Cycle> cycles() const { return cycles_; }
  std::size_t cycle_index(Vertex v) const { return vertex_to_cycle_[v]; }
  const Cycle& cycle_of(Vertex v) const { return cycles_[vertex_to_cycle_[v]]; }
  std::size_t singleton_count() const;
  std::vector<Edge> edges() const;

  /// Same factor with cycles ordered by decreasing length, ties broken by
  /// smaller first vertex. Element 0 is then a longest cycle.
  OneFactor ordered_for_merging() const;

  friend bool operator==(const OneFactor&, const OneFactor&) = default;

private:
  std::vector<Cycle> cycles_;
  std::vector<std::size_t> vertex_to_cycle_;
};

/// Perfect matching of X into Y stored as y = match[x].
using Matching = std::vector<Vertex>;

/// D_pi(B): every x_i y_j in B becomes i -> pi(j); loops are erased.
Digraph bipartite_to_digraph(const BipartiteGraph& b, const Permutation& pi);

/// Cycle decomposition of x -> pi(m(x)). Fixed points become singleton cycles.
OneFactor matching_to_one_factor(const Matching& m, const Permutation& pi);

/// Throws InvalidInputError unless `m` is a perfect matching using only edges of `b`
/// (pass nullptr for `b` to check the bijection only).
void check_perfect_matching(const Matching& m, const BipartiteGraph* b = nullptr);

/// (X,c)-heavy test: at least c|X| out-neighbours or c|X| in-neighbours inside X.
/// `members` is a membership mask over all vertices of `d`.
bool is_heavy(Vertex v, const std::vector<bool>& members, double c, const Digraph& d);
bool is_heavy(Vertex v, std::span<const Vertex> subset, double c, const Digraph& d);

struct MinDegreePair {
  Vertex x = 0;
  Vertex y = 0;
};

/// Lowest-index minimum-degree vertex on each side.
MinDegreePair min_degree_vertices(const BipartiteGraph& b);

struct DegreeProfile {
  std::size_t min_out = 0;
  std::size_t min_in = 0;
  std::size_t delta_pm = 0;
  std::vector<std::size_t> out_degrees;
  std::vector<std::size_t> in_degrees;
};

DegreeProfile degree_profile(const Digraph& d);

} // namespace hampack

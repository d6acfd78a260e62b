#include "hampack/graph.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hampack {

namespace {

bool sorted_insert(std::vector<Vertex>& list, Vertex v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) return false;
  list.insert(it, v);
  return true;
}

bool sorted_erase(std::vector<Vertex>& list, Vertex v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) return false;
  list.erase(it);
  return true;
}

bool sorted_contains(const std::vector<Vertex>& list, Vertex v) {
  return std::binary_search(list.begin(), list.end(), v);
}

void sort_unique(std::vector<Vertex>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

} // namespace

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(std::size_t n) : out_(n), in_(n) {}

Digraph Digraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Digraph d(n);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw InvalidInputError("edge endpoint out of range");
    if (e.from == e.to) throw InvalidInputError("self-loop " + std::to_string(e.from + 1));
    d.out_[e.from].push_back(e.to);
    d.in_[e.to].push_back(e.from);
  }
  d.edge_count_ = 0;
  for (std::size_t v = 0; v < n; ++v) {
    sort_unique(d.out_[v]);
    sort_unique(d.in_[v]);
    d.edge_count_ += d.out_[v].size();
  }
  return d;
}

bool Digraph::add_edge(Vertex u, Vertex v) {
  if (u >= out_.size() || v >= out_.size()) throw InvalidInputError("edge endpoint out of range");
  if (u == v) throw InvalidInputError("self-loop " + std::to_string(u + 1));
  if (!sorted_insert(out_[u], v)) return false;
  sorted_insert(in_[v], u);
  ++edge_count_;
  return true;
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  return u < out_.size() && sorted_contains(out_[u], v);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Vertex u = 0; u < out_.size(); ++u)
    for (Vertex v : out_[u]) result.push_back({u, v});
  return result;
}

bool Digraph::transpose_consistent() const {
  std::size_t in_total = 0;
  for (Vertex v = 0; v < in_.size(); ++v) {
    in_total += in_[v].size();
    if (!std::is_sorted(in_[v].begin(), in_[v].end())) return false;
    for (Vertex u : in_[v])
      if (!sorted_contains(out_[u], v)) return false;
  }
  return in_total == edge_count_;
}

// ---------------------------------------------------------- BipartiteGraph

BipartiteGraph::BipartiteGraph(std::size_t n) : x_adj_(n), y_adj_(n) {}

BipartiteGraph BipartiteGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  BipartiteGraph b(n);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw InvalidInputError("bipartite edge endpoint out of range");
    b.x_adj_[e.from].push_back(e.to);
    b.y_adj_[e.to].push_back(e.from);
  }
  b.edge_count_ = 0;
  for (std::size_t v = 0; v < n; ++v) {
    sort_unique(b.x_adj_[v]);
    sort_unique(b.y_adj_[v]);
    b.edge_count_ += b.x_adj_[v].size();
  }
  return b;
}

BipartiteGraph BipartiteGraph::complete(std::size_t n) {
  BipartiteGraph b(n);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  for (std::size_t v = 0; v < n; ++v) {
    b.x_adj_[v] = all;
    b.y_adj_[v] = all;
  }
  b.edge_count_ = n * n;
  return b;
}

bool BipartiteGraph::add_edge(Vertex x, Vertex y) {
  if (x >= x_adj_.size() || y >= y_adj_.size())
    throw InvalidInputError("bipartite edge endpoint out of range");
  if (!sorted_insert(x_adj_[x], y)) return false;
  sorted_insert(y_adj_[y], x);
  ++edge_count_;
  return true;
}

bool BipartiteGraph::remove_edge(Vertex x, Vertex y) {
  if (x >= x_adj_.size() || !sorted_erase(x_adj_[x], y)) return false;
  sorted_erase(y_adj_[y], x);
  --edge_count_;
  return true;
}

bool BipartiteGraph::has_edge(Vertex x, Vertex y) const {
  return x < x_adj_.size() && sorted_contains(x_adj_[x], y);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Vertex x = 0; x < x_adj_.size(); ++x)
    for (Vertex y : x_adj_[x]) result.push_back({x, y});
  return result;
}

std::size_t BipartiteGraph::min_degree() const {
  std::size_t best = x_adj_.size();
  for (const auto& a : x_adj_) best = std::min(best, a.size());
  for (const auto& a : y_adj_) best = std::min(best, a.size());
  return best;
}

std::size_t BipartiteGraph::second_min_degree() const {
  std::vector<std::size_t> degrees;
  degrees.reserve(2 * x_adj_.size());
  for (const auto& a : x_adj_) degrees.push_back(a.size());
  for (const auto& a : y_adj_) degrees.push_back(a.size());
  if (degrees.size() < 2) return degrees.empty() ? 0 : degrees.front();
  std::nth_element(degrees.begin(), degrees.begin() + 1, degrees.end());
  return std::max(degrees[0], degrees[1]);
}

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Vertex v : image_) {
    if (v >= image_.size() || seen[v]) throw InvalidInputError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> image(n);
  std::iota(image.begin(), image.end(), Vertex{0});
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(image_.size());
  for (Vertex i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

std::size_t Permutation::cycle_count() const {
  std::vector<bool> seen(image_.size(), false);
  std::size_t cycles = 0;
  for (Vertex start = 0; start < image_.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (Vertex v = start; !seen[v]; v = image_[v]) seen[v] = true;
  }
  return cycles;
}

// ------------------------------------------------------------------ Cycle

Cycle::Cycle(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidInputError("empty cycle");
  auto sorted = vertices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInputError("cycle repeats a vertex");
  auto min_it = std::min_element(vertices_.begin(), vertices_.end());
  std::rotate(vertices_.begin(), min_it, vertices_.end());
}

std::vector<Vertex> Cycle::starting_at(Vertex v) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) throw InvalidInputError("vertex not on cycle");
  std::vector<Vertex> result(vertices_);
  std::rotate(result.begin(), result.begin() + (it - vertices_.begin()), result.end());
  return result;
}

std::vector<Edge> Cycle::edges() const {
  std::vector<Edge> result;
  if (vertices_.size() < 2) return result;
  result.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    result.push_back({vertices_[i], vertices_[(i + 1) % vertices_.size()]});
  return result;
}

bool Cycle::contains(Vertex v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

// -------------------------------------------------------------- OneFactor

OneFactor::OneFactor(std::size_t n, std::vector<Cycle> cycles)
    : cycles_(std::move(cycles)), vertex_to_cycle_(n, static_cast<std::size_t>(-1)) {
  std::size_t covered = 0;
  for (std::size_t c = 0; c < cycles_.size(); ++c) {
    for (Vertex v : cycles_[c].vertices()) {
      if (v >= n) throw InvalidInputError("cycle vertex out of range");
      if (vertex_to_cycle_[v] != static_cast<std::size_t>(-1))
        throw InvalidInputError("cycles of a 1-factor overlap");
      vertex_to_cycle_[v] = c;
      ++covered;
    }
  }
  if (covered != n) throw InvalidInputError("cycles do not cover every vertex");
}

std::size_t OneFactor::singleton_count() const {
  return static_cast<std::size_t>(
      std::count_if(cycles_.begin(), cycles_.end(), [](const Cycle& c) { return c.length() == 1; }));
}

std::vector<Edge> OneFactor::edges() const {
  std::vector<Edge> result;
  for (const Cycle& c : cycles_) {
    auto e = c.edges();
    result.insert(result.end(), e.begin(), e.end());
  }
  return result;
}

OneFactor OneFactor::ordered_for_merging() const {
  auto ordered = cycles_;
  std::sort(ordered.begin(), ordered.end(), [](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() > b.length();
    return a.front() < b.front();
  });
  return OneFactor(vertex_count(), std::move(ordered));
}

// ------------------------------------------------------------- operations

Digraph bipartite_to_digraph(const BipartiteGraph& b, const Permutation& pi) {
  const std::size_t n = b.side_size();
  if (pi.size() != n) throw DimensionError("bipartite graph and permutation sizes differ");
  std::vector<Edge> edges;
  edges.reserve(b.edge_count());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y : b.x_neighbors(x)) {
      Vertex head = pi(y);
      if (head != x) edges.push_back({x, head});
    }
  return Digraph::from_edges(n, edges);
}

void check_perfect_matching(const Matching& m, const BipartiteGraph* b) {
  std::vector<bool> used(m.size(), false);
  for (Vertex x = 0; x < m.size(); ++x) {
    Vertex y = m[x];
    if (y >= m.size() || used[y]) throw InvalidInputError("not a perfect matching");
    used[y] = true;
    if (b != nullptr && !b->has_edge(x, y))
      throw InvalidInputError("matching uses an edge outside the graph");
  }
  if (b != nullptr && b->side_size() != m.size())
    throw DimensionError("matching and graph sizes differ");
}

OneFactor matching_to_one_factor(const Matching& m, const Permutation& pi) {
  if (pi.size() != m.size()) throw DimensionError("matching and permutation sizes differ");
  check_perfect_matching(m);
  const std::size_t n = m.size();
  std::vector<bool> seen(n, false);
  std::vector<Cycle> cycles;
  for (Vertex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> seq;
    for (Vertex v = start; !seen[v]; v = pi(m[v])) {
      seen[v] = true;
      seq.push_back(v);
    }
    cycles.emplace_back(std::move(seq));
  }
  return OneFactor(n, std::move(cycles));
}

bool is_heavy(Vertex v, const std::vector<bool>& members, double c, const Digraph& d) {
  if (v >= members.size() || !members[v]) throw InvalidInputError("vertex is not in the set");
  const auto size = static_cast<double>(std::count(members.begin(), members.end(), true));
  const double bound = c * size;
  std::size_t out = 0, in = 0;
  for (Vertex w : d.out_neighbors(v)) out += members[w] ? 1 : 0;
  for (Vertex w : d.in_neighbors(v)) in += members[w] ? 1 : 0;
  return static_cast<double>(out) >= bound || static_cast<double>(in) >= bound;
}

bool is_heavy(Vertex v, std::span<const Vertex> subset, double c, const Digraph& d) {
  std::vector<bool> members(d.vertex_count(), false);
  for (Vertex w : subset) {
    if (w >= members.size()) throw InvalidInputError("subset vertex out of range");
    members[w] = true;
  }
  return is_heavy(v, members, c, d);
}

MinDegreePair min_degree_vertices(const BipartiteGraph& b) {
  MinDegreePair pair;
  for (Vertex v = 1; v < b.side_size(); ++v) {
    if (b.x_degree(v) < b.x_degree(pair.x)) pair.x = v;
    if (b.y_degree(v) < b.y_degree(pair.y)) pair.y = v;
  }
  return pair;
}

DegreeProfile degree_profile(const Digraph& d) {
  DegreeProfile p;
  const std::size_t n = d.vertex_count();
  p.out_degrees.resize(n);
  p.in_degrees.resize(n);
  if (n == 0) return p;
  p.min_out = p.min_in = n;
  for (Vertex v = 0; v < n; ++v) {
    p.out_degrees[v] = d.out_degree(v);
    p.in_degrees[v] = d.in_degree(v);
    p.min_out = std::min(p.min_out, p.out_degrees[v]);
    p.min_in = std::min(p.min_in, p.in_degrees[v]);
  }
  p.delta_pm = std::min(p.min_out, p.min_in);
  return p;
}

} // namespace hampack

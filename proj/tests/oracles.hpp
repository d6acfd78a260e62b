#pragma once

// Independent reference computations for the test suite. Each is written
// against definitions directly, deliberately naive and sharing no code paths
// with the library beyond its value types.

#include "hampack/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using hampack::BipartiteGraph;
using hampack::Digraph;
using hampack::Edge;
using hampack::Vertex;

/// E[k^sigma] for a uniform permutation of n: k(k+1)...(k+n-1) / n!.
inline double rising_factorial_moment(double k, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= (k + i) / (i + 1);
  return v;
}

inline double harmonic(int n) {
  double h = 0.0;
  for (int i = n; i >= 1; --i) h += 1.0 / i;
  return h;
}

inline std::size_t cycle_count(const std::vector<Vertex>& image) {
  std::vector<bool> seen(image.size(), false);
  std::size_t cycles = 0;
  for (std::size_t s = 0; s < image.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t v = s; !seen[v]; v = image[v]) seen[v] = true;
  }
  return cycles;
}

/// Walks `seq` as a closed directed walk and checks it is a Hamilton cycle of `d`.
inline bool is_hamilton_cycle(const Digraph& d, const std::vector<Vertex>& seq) {
  const std::size_t n = d.vertex_count();
  if (seq.size() != n || n < 2) return false;
  std::vector<int> seen(n, 0);
  for (Vertex v : seq) {
    if (v >= n || seen[v]++) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!d.has_edge(seq[i], seq[(i + 1) % n])) return false;
  return true;
}

/// Hamilton cycles of d as edge sets, by trying every ordering starting at 0.
inline std::vector<std::set<std::pair<Vertex, Vertex>>> hamilton_edge_sets(const Digraph& d) {
  const std::size_t n = d.vertex_count();
  std::vector<std::set<std::pair<Vertex, Vertex>>> out;
  if (n < 2) return out;
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  do {
    std::vector<Vertex> seq{0};
    seq.insert(seq.end(), rest.begin(), rest.end());
    if (!is_hamilton_cycle(d, seq)) continue;
    std::set<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.insert({seq[i], seq[(i + 1) % n]});
    out.push_back(std::move(edges));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

/// Maximum number of pairwise edge-disjoint Hamilton cycles, no pruning at all.
inline std::size_t naive_psi(const Digraph& d) {
  const auto cycles = hamilton_edge_sets(d);
  std::size_t best = 0;
  std::vector<const std::set<std::pair<Vertex, Vertex>>*> chosen;
  auto disjoint = [&](const auto& c) {
    for (const auto* o : chosen)
      for (const auto& e : c)
        if (o->contains(e)) return false;
    return true;
  };
  auto go = [&](auto&& self, std::size_t i) -> void {
    best = std::max(best, chosen.size());
    if (i == cycles.size()) return;
    if (disjoint(cycles[i])) {
      chosen.push_back(&cycles[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  go(go, 0);
  return best;
}

inline std::size_t min_in_out(const Digraph& d) {
  std::size_t best = d.vertex_count();
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    std::size_t out = 0, in = 0;
    for (Vertex u = 0; u < d.vertex_count(); ++u) {
      out += d.has_edge(v, u);
      in += d.has_edge(u, v);
    }
    best = std::min({best, out, in});
  }
  return d.vertex_count() == 0 ? 0 : best;
}

/// Whether some edge subset of b is r-regular, by enumerating all subsets (<= 16 edges).
inline bool has_r_factor_by_subsets(const BipartiteGraph& b, std::size_t r) {
  const auto edges = b.edges();
  const std::size_t n = b.side_size();
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != r * n) continue;
    std::vector<std::size_t> dx(n, 0), dy(n, 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1u) {
        ++dx[edges[i].from];
        ++dy[edges[i].to];
      }
    if (std::all_of(dx.begin(), dx.end(), [&](auto v) { return v == r; }) &&
        std::all_of(dy.begin(), dy.end(), [&](auto v) { return v == r; }))
      return true;
  }
  return false;
}

/// Edge-swap rotation computed on the edge set, then walked from the new start.
inline std::vector<Vertex> rotate_by_edges(const std::vector<Vertex>& path, Edge drop1, Edge drop2,
                                           Edge add1, Edge add2) {
  std::set<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.insert({path[i], path[i + 1]});
  edges.erase({drop1.from, drop1.to});
  edges.erase({drop2.from, drop2.to});
  edges.insert({add1.from, add1.to});
  edges.insert({add2.from, add2.to});
  std::set<Vertex> has_in;
  for (const auto& [u, v] : edges) has_in.insert(v);
  Vertex start = path.front();
  for (Vertex v : path)
    if (!has_in.contains(v)) start = v;
  std::vector<Vertex> out{start};
  while (out.size() < path.size()) {
    auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == out.back(); });
    if (it == edges.end()) break;
    out.push_back(it->second);
  }
  return out;
}

} // namespace oracle

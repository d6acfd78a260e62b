#include "hampack/matching.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>

namespace hampack {

std::size_t edges_between(const BipartiteGraph& g, const std::vector<Vertex>& a,
                          const std::vector<Vertex>& b) {
  std::vector<bool> in_b(g.side_size(), false);
  for (Vertex y : b) in_b[y] = true;
  std::size_t count = 0;
  for (Vertex x : a)
    for (Vertex y : g.x_neighbors(x)) count += in_b[y] ? 1 : 0;
  return count;
}

bool gale_ryser_bruteforce(const BipartiteGraph& g, std::size_t r) {
  const std::size_t n = g.side_size();
  if (n > 6) throw SizeError("exhaustive Gale-Ryser check supports n <= 6");
  // Row bitmasks make e(A, B) a popcount sum.
  std::vector<std::uint32_t> row(n, 0);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y : g.x_neighbors(x)) row[x] |= 1u << y;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t a = 0; a < subsets; ++a) {
    const int size_a = std::popcount(a);
    for (std::uint32_t b = 0; b < subsets; ++b) {
      const std::int64_t rhs =
          static_cast<std::int64_t>(r) * (size_a + std::popcount(b) - static_cast<std::int64_t>(n));
      if (rhs <= 0) continue;
      std::int64_t e = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (a & (1u << x)) e += std::popcount(row[x] & b);
      if (e < rhs) return false;
    }
  }
  return true;
}

namespace {

// Dinic on the network source -> X (cap r) -> Y (cap 1 per edge) -> sink (cap r).
class FlowNetwork {
public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
    return arcs_.size() - 2;
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (build_levels(s, t)) {
      next_.assign(adj_.size(), 0);
      while (std::int64_t pushed = augment(s, t, std::numeric_limits<std::int64_t>::max()))
        total += pushed;
    }
    return total;
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

  /// Nodes reachable from s in the residual network.
  std::vector<bool> residual_reachable(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<std::size_t> queue;
    queue.push(s);
    seen[s] = true;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop();
      for (auto id : adj_[u]) {
        const auto& arc = arcs_[id];
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          queue.push(arc.to);
        }
      }
    }
    return seen;
  }

private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
  };

  bool build_levels(std::size_t s, std::size_t t) {
    level_.assign(adj_.size(), -1);
    std::queue<std::size_t> queue;
    level_[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop();
      for (auto id : adj_[u]) {
        const auto& arc = arcs_[id];
        if (arc.cap > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t augment(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    for (auto& i = next_[u]; i < adj_[u].size(); ++i) {
      auto id = adj_[u][i];
      auto& arc = arcs_[id];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      if (std::int64_t pushed = augment(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= pushed;
        arcs_[id ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

} // namespace

RFactorSearch search_r_factor(const BipartiteGraph& g, std::size_t r) {
  const std::size_t n = g.side_size();
  if (r > n) throw InvalidInputError("r exceeds the side size");
  RFactorSearch result;
  if (r == 0) {
    result.factor = BipartiteGraph(n);
    return result;
  }

  const std::size_t source = 2 * n, sink = 2 * n + 1;
  FlowNetwork net(2 * n + 2);
  for (Vertex x = 0; x < n; ++x) net.add_arc(source, x, static_cast<std::int64_t>(r));
  std::vector<std::pair<Edge, std::size_t>> edge_arcs;
  edge_arcs.reserve(g.edge_count());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y : g.x_neighbors(x)) edge_arcs.emplace_back(Edge{x, y}, net.add_arc(x, n + y, 1));
  for (Vertex y = 0; y < n; ++y) net.add_arc(n + y, sink, static_cast<std::int64_t>(r));

  const auto flow = net.max_flow(source, sink);
  if (flow == static_cast<std::int64_t>(r * n)) {
    BipartiteGraph factor(n);
    for (const auto& [edge, arc] : edge_arcs)
      if (net.flow_on(arc) > 0) factor.add_edge(edge.from, edge.to);
    result.factor = std::move(factor);
    return result;
  }

  // Min cut (S, T): capacity = r|X \ S| + e(X cap S, Y \ S) + r|Y cap S| < rn,
  // which is exactly the Gale-Ryser violation for A = X cap S, B = Y \ S.
  const auto reach = net.residual_reachable(source);
  GaleRyserWitness witness;
  for (Vertex x = 0; x < n; ++x)
    if (reach[x]) witness.a.push_back(x);
  for (Vertex y = 0; y < n; ++y)
    if (!reach[n + y]) witness.b.push_back(y);
  witness.edges_between = edges_between(g, witness.a, witness.b);
  witness.required = static_cast<std::int64_t>(r) *
                     (static_cast<std::int64_t>(witness.a.size() + witness.b.size()) -
                      static_cast<std::int64_t>(n));
  if (static_cast<std::int64_t>(witness.edges_between) >= witness.required)
    throw ConsistencyError("min cut did not produce a Gale-Ryser violation");
  result.witness = std::move(witness);
  return result;
}

std::optional<BipartiteGraph> find_r_factor(const BipartiteGraph& g, std::size_t r) {
  return search_r_factor(g, r).factor;
}

std::vector<Vertex> maximum_matching(const BipartiteGraph& g) {
  const std::size_t n = g.side_size();
  const Vertex none = static_cast<Vertex>(n);
  std::vector<Vertex> match_x(n, none), match_y(n, none);
  std::vector<std::size_t> dist(n);
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  auto bfs = [&] {
    std::queue<Vertex> queue;
    bool found = false;
    for (Vertex x = 0; x < n; ++x) {
      if (match_x[x] == none) {
        dist[x] = 0;
        queue.push(x);
      } else {
        dist[x] = inf;
      }
    }
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop();
      for (Vertex y : g.x_neighbors(x)) {
        Vertex next = match_y[y];
        if (next == none) {
          found = true;
        } else if (dist[next] == inf) {
          dist[next] = dist[x] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> cursor(n);
  // Iterative DFS along the layered graph.
  auto dfs = [&](Vertex root) {
    std::vector<Vertex> stack{root};
    std::vector<Vertex> via;
    while (!stack.empty()) {
      Vertex x = stack.back();
      auto nbrs = g.x_neighbors(x);
      bool advanced = false;
      while (cursor[x] < nbrs.size()) {
        Vertex y = nbrs[cursor[x]++];
        Vertex next = match_y[y];
        if (next == none) {
          via.push_back(y);
          // Flip the alternating path recorded on the stack.
          for (std::size_t i = stack.size(); i-- > 0;) {
            Vertex xi = stack[i], yi = via[i];
            match_x[xi] = yi;
            match_y[yi] = xi;
          }
          return true;
        }
        if (dist[next] == dist[x] + 1) {
          via.push_back(y);
          stack.push_back(next);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[x] = inf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (Vertex x = 0; x < n; ++x)
      if (match_x[x] == none) dfs(x);
  }
  return match_x;
}

std::vector<Matching> decompose_regular(const BipartiteGraph& h, std::size_t r) {
  const std::size_t n = h.side_size();
  for (Vertex v = 0; v < n; ++v)
    if (h.x_degree(v) != r || h.y_degree(v) != r)
      throw InvalidInputError("graph is not " + std::to_string(r) + "-regular");

  std::vector<Matching> result;
  result.reserve(r);
  BipartiteGraph rest = h;
  for (std::size_t k = 0; k < r; ++k) {
    Matching m = maximum_matching(rest);
    for (Vertex x = 0; x < n; ++x) {
      if (m[x] >= n) throw ConsistencyError("regular bipartite graph without a perfect matching");
      rest.remove_edge(x, m[x]);
    }
    result.push_back(std::move(m));
  }
  return result;
}

DeltaMatchingResult find_delta_matchings(const BipartiteGraph& g, Vertex x_plus, Vertex y_minus) {
  DeltaMatchingResult result;
  result.delta = std::min(g.x_degree(x_plus), g.y_degree(y_minus));
  auto search = search_r_factor(g, result.delta);
  if (!search.factor) {
    result.witness = std::move(search.witness);
    return result;
  }
  result.family.matchings = decompose_regular(*search.factor, result.delta);
  result.family.source_id = "phase1-bipartite";
  result.success = true;
  return result;
}

bool is_valid_family(const MatchingFamily& family, const BipartiteGraph& g) {
  const std::size_t n = g.side_size();
  BipartiteGraph used(n);
  for (const Matching& m : family.matchings) {
    if (m.size() != n) return false;
    try {
      check_perfect_matching(m, &g);
    } catch (const Error&) {
      return false;
    }
    for (Vertex x = 0; x < n; ++x)
      if (!used.add_edge(x, m[x])) return false;
  }
  return true;
}

} // namespace hampack

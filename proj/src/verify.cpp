#include "hampack/verify.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace hampack {

namespace {

std::string label(Edge e) { return std::to_string(e.from + 1) + "->" + std::to_string(e.to + 1); }

} // namespace

VerifyResult verify_packing(const Digraph& d, std::span<const Cycle> family, std::size_t delta_pm) {
  VerifyResult result;
  const std::size_t n = d.vertex_count();
  auto note = [&result](std::string text) {
    if (result.witness.empty()) result.witness = std::move(text);
  };

  std::set<Edge> seen;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Cycle& c = family[k];
    bool in_range = std::all_of(c.vertices().begin(), c.vertices().end(),
                                [n](Vertex v) { return v < n; });
    if (c.length() != n || n < 2 || !in_range) {
      result.hamiltonian_ok = false;
      note("cycle " + std::to_string(k + 1) + " has length " + std::to_string(c.length()) +
           " on " + std::to_string(n) + " vertices");
      continue;
    }
    for (const Edge& e : c.edges()) {
      if (!d.has_edge(e.from, e.to)) {
        result.subset_ok = false;
        note("cycle " + std::to_string(k + 1) + " uses " + label(e) + " which is not in the digraph");
      }
      if (!seen.insert(e).second) {
        result.disjoint_ok = false;
        note("edge " + label(e) + " repeated in cycle " + std::to_string(k + 1));
      }
    }
  }
  if (family.size() != delta_pm) {
    result.count_ok = false;
    note("family has " + std::to_string(family.size()) + " cycles, expected " +
         std::to_string(delta_pm));
  }
  return result;
}

std::size_t delta_pm(const Digraph& d) { return degree_profile(d).delta_pm; }

namespace {

struct HamiltonSet {
  std::size_t n = 0;
  std::vector<std::vector<Vertex>> sequences;
  std::vector<std::uint64_t> masks;
};

HamiltonSet collect_hamilton(const Digraph& d) {
  HamiltonSet set;
  set.n = d.vertex_count();
  const std::size_t n = set.n;
  if (n > 8) throw SizeError("exhaustive Hamilton search supports n <= 8");
  if (n < 2) return set;

  std::vector<Vertex> seq{0};
  std::uint32_t visited = 1;
  std::uint64_t mask = 0;
  auto bit = [n](Vertex u, Vertex v) { return std::uint64_t{1} << (u * n + v); };

  auto dfs = [&](auto&& self) -> void {
    const Vertex last = seq.back();
    if (seq.size() == n) {
      if (d.has_edge(last, 0)) {
        set.sequences.push_back(seq);
        set.masks.push_back(mask | bit(last, 0));
      }
      return;
    }
    for (Vertex next : d.out_neighbors(last)) {
      if (visited & (1u << next)) continue;
      visited |= 1u << next;
      mask |= bit(last, next);
      seq.push_back(next);
      self(self);
      seq.pop_back();
      mask &= ~bit(last, next);
      visited &= ~(1u << next);
    }
  };
  dfs(dfs);
  return set;
}

} // namespace

std::vector<Cycle> enumerate_hamilton_cycles(const Digraph& d) {
  auto set = collect_hamilton(d);
  std::vector<Cycle> cycles;
  cycles.reserve(set.sequences.size());
  for (auto& s : set.sequences) cycles.emplace_back(std::move(s));
  return cycles;
}

PsiResult brute_force_psi(const Digraph& d) {
  const auto set = collect_hamilton(d);
  PsiResult result;
  result.hamilton_cycles = set.masks.size();
  const std::size_t n = set.n;
  if (set.masks.empty()) return result;

  // Every cycle leaves vertex 0 through exactly one edge, so a packing holds at
  // most one cycle per successor of 0. Branch group by group.
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < set.sequences.size(); ++i) groups[set.sequences[i][1]].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });

  std::uint64_t all_edges = 0;
  for (const Edge& e : d.edges()) all_edges |= std::uint64_t{1} << (e.from * n + e.to);
  const std::size_t ceiling = delta_pm(d);

  std::vector<std::uint64_t> row_mask(n, 0), col_mask(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      row_mask[u] |= std::uint64_t{1} << (u * n + v);
      col_mask[v] |= std::uint64_t{1} << (u * n + v);
    }
  auto capacity = [&](std::uint64_t used) {
    const std::uint64_t free = all_edges & ~used;
    std::size_t best = n;
    for (Vertex v = 0; v < n; ++v) {
      best = std::min<std::size_t>(best, std::popcount(free & row_mask[v]));
      best = std::min<std::size_t>(best, std::popcount(free & col_mask[v]));
    }
    return best;
  };

  std::vector<std::size_t> chosen, best_choice;
  auto search = [&](auto&& self, std::size_t group, std::uint64_t used) -> void {
    if (chosen.size() > best_choice.size()) best_choice = chosen;
    if (best_choice.size() >= ceiling || group == groups.size()) return;
    const std::size_t bound =
        chosen.size() + std::min(groups.size() - group, capacity(used));
    if (bound <= best_choice.size()) return;
    for (std::size_t idx : groups[group]) {
      if (set.masks[idx] & used) continue;
      chosen.push_back(idx);
      self(self, group + 1, used | set.masks[idx]);
      chosen.pop_back();
      if (best_choice.size() >= ceiling) return;
    }
    self(self, group + 1, used);
  };
  search(search, 0, 0);

  result.psi = best_choice.size();
  for (std::size_t idx : best_choice) result.family.emplace_back(set.sequences[idx]);
  std::sort(result.family.begin(), result.family.end());
  return result;
}

} // namespace hampack

#pragma once

// Edge-disjoint perfect matchings of the first-phase bipartite graph.
//
// An r-factor is found with a unit-capacity max-flow; when none exists the
// minimum cut yields sets (A, B) violating the Gale-Ryser inequality
// e(A, B) >= r (|A| + |B| - n). The factor is then split into r perfect
// matchings one Hopcroft-Karp run at a time.

#include "hampack/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hampack {

struct MatchingFamily {
  std::vector<Matching> matchings;
  std::string source_id;

  friend bool operator==(const MatchingFamily&, const MatchingFamily&) = default;
};

/// Sets A of X and B of Y with e(A, B) < r (|A| + |B| - n).
struct GaleRyserWitness {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  std::size_t edges_between = 0;
  std::int64_t required = 0;

  friend bool operator==(const GaleRyserWitness&, const GaleRyserWitness&) = default;
};

/// e(A, B) for explicit vertex lists.
std::size_t edges_between(const BipartiteGraph& g, const std::vector<Vertex>& a,
                          const std::vector<Vertex>& b);

/// Exhaustive check of the Gale-Ryser inequality over all 4^n subset pairs.
/// Throws SizeError for n > 6.
bool gale_ryser_bruteforce(const BipartiteGraph& g, std::size_t r);

/// Spanning r-regular subgraph of `g`, or nullopt when none exists.
std::optional<BipartiteGraph> find_r_factor(const BipartiteGraph& g, std::size_t r);

/// Like find_r_factor but also reports the min-cut witness on failure.
struct RFactorSearch {
  std::optional<BipartiteGraph> factor;
  std::optional<GaleRyserWitness> witness;
};
RFactorSearch search_r_factor(const BipartiteGraph& g, std::size_t r);

/// Maximum matching with lowest-index-first augmentation. match[x] == n means unmatched.
std::vector<Vertex> maximum_matching(const BipartiteGraph& g);

/// Splits an r-regular bipartite graph into r disjoint perfect matchings whose
/// union is `h`. Throws InvalidInputError if `h` is not r-regular.
std::vector<Matching> decompose_regular(const BipartiteGraph& h, std::size_t r);

struct DeltaMatchingResult {
  bool success = false;
  std::size_t delta = 0;
  MatchingFamily family;
  std::optional<GaleRyserWitness> witness;
};

/// delta = min(deg(x_plus), deg(y_minus)); succeeds iff `g` has a delta-factor,
/// in which case exactly delta disjoint perfect matchings are returned.
DeltaMatchingResult find_delta_matchings(const BipartiteGraph& g, Vertex x_plus, Vertex y_minus);

/// Checks pairwise disjointness and perfection against `g`.
bool is_valid_family(const MatchingFamily& family, const BipartiteGraph& g);

} // namespace hampack

#pragma once

// Monte Carlo probes for the statistical facts the construction leans on:
// the cycle count of a uniform permutation, the third moment of inverse
// cycle lengths seen by a fixed vertex, and the degree gap of a random
// bipartite graph. These are measurements; only exact identities are asserted
// by the test suite.

#include "hampack/exposure.hpp"
#include "hampack/graph.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hampack {

struct PermutationCycleStats {
  std::size_t n = 0;
  std::uint64_t samples = 0;
  double mean_2_sigma = 0.0;
  double mean_sigma = 0.0;
  double tail_4logn = 0.0; ///< frequency of sigma >= 4 ln n
};

/// Uniform permutations drawn from `rng`.
PermutationCycleStats permutation_cycle_stats(std::size_t n, std::uint64_t samples, SeededRng& rng);
/// Every permutation of {0..n-1} exactly once (n <= 10).
PermutationCycleStats permutation_cycle_stats_exhaustive(std::size_t n);

/// (sum over factors of 1 / |cycle containing w|)^3.
double inverse_cycle_length_cube(std::span<const OneFactor> factors, Vertex w);

struct MomentEstimate {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;      ///< trials requested
  std::uint64_t usable = 0;      ///< trials whose first phase succeeded
  double estimate = 0.0;         ///< mean of the cube over usable trials
  double ratio = 0.0;            ///< estimate / (p log^3 n)
};

/// Runs the first phase per trial (seeds seed, seed+1, ...) and samples a uniform vertex.
MomentEstimate designation_moment_estimate(std::size_t n, double p, std::uint64_t trials,
                                           std::uint64_t seed);

struct DegreeGapProbe {
  std::size_t n = 0;
  double p0 = 0.0;
  std::uint64_t trials = 0;
  double bound = 0.0; ///< sqrt(n p0) / log n
  std::map<std::size_t, std::uint64_t> histogram;
  double fraction_meeting_bound = 0.0;
};

/// delta_2(B) - delta(B) for B ~ B(n, n, p0).
DegreeGapProbe degree_gap_probe(std::size_t n, double p0, std::uint64_t trials, SeededRng& rng);

struct StatRow {
  std::size_t n = 0;
  double p = 0.0;
  std::string statistic;
  double value = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// CSV with header n,p,statistic,value,samples,seed.
void write_stat_rows(std::ostream& out, std::span<const StatRow> rows);

} // namespace hampack

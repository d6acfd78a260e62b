#pragma once

// Phase 2: turning each 1-factor into a Hamilton cycle.
//
// merge_two_cycles joins a cycle C with a cycle C* through an exposed edge
// from C*'s designated vertex, rotates the resulting path from both ends and
// closes it with an exposed edge between the two END sets.
// one_factor_to_hamilton folds all cycles of a factor into its longest one,
// and convert_all threads the set of available edges through every factor so
// that the resulting Hamilton cycles are pairwise edge-disjoint.

#include "hampack/exposure.hpp"
#include "hampack/graph.hpp"
#include "hampack/rotation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hampack {

struct MergeSettings {
  std::size_t n = 0;
  double p = 0.0;
  double q = 0.0;
  Mode mode = Mode::practical;
  RotationTarget rotation;
  /// Replaces ceil(b log^7 n / sqrt(np)) when set.
  std::optional<std::size_t> e1_size;
};

/// ceil(b log^7 n / sqrt(np)); SIZE_MAX when np = 0.
std::size_t nominal_e1_size(std::size_t n, double p, std::size_t b);

enum class MergeStage { none, step2, step4, step5 };

std::string_view to_string(MergeStage stage);

struct MergeDiagnostics {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t e1_nominal = 0;
  std::size_t e1_eligible = 0;
  std::size_t e1_size = 0;
  std::size_t e1_successes = 0;
  double rotation_probability = 0.0;
  bool rotation_clamped = false;
  std::size_t rounds_left = 0;
  std::size_t rounds_right = 0;
  std::vector<std::size_t> end_sizes_left;
  std::vector<std::size_t> end_sizes_right;
  std::vector<bool> sandwich_left;  ///< both bounds held, per round t >= 1
  std::vector<bool> sandwich_right;
  std::size_t dropped_derivations = 0;
  std::size_t e2_size = 0;
  std::size_t e2_successes = 0;
  std::optional<Side> stalled;

  friend bool operator==(const MergeDiagnostics&, const MergeDiagnostics&) = default;
};

struct MergeResult {
  bool success = false;
  MergeStage failed_at = MergeStage::none;
  Cycle cycle;                 ///< C' on V(C) and V(C*)
  AvailableEdgeSet remaining;  ///< E''
  Edge link{};                 ///< v1 -> u1
  Edge closing{};              ///< y -> x
  std::vector<Edge> successes; ///< every successful exposure of this call
  MergeDiagnostics diagnostics;
};

MergeResult merge_two_cycles(const Cycle& c, const Cycle& c_star, Vertex v1,
                             const AvailableEdgeSet& available, const MergeSettings& settings,
                             ExposureLedger& ledger, RngStreams& rngs);

struct FactorOutcome {
  bool success = false;
  std::size_t failed_iteration = 0; ///< 1-based i of the merge that failed
  MergeStage failed_stage = MergeStage::none;
  Cycle hamilton;
  AvailableEdgeSet remaining;
  std::vector<MergeDiagnostics> merges; ///< one per attempt, retries included
  std::size_t retries_used = 0;
  std::vector<Edge> successes;
};

/// `factor` must be ordered with a longest cycle first; `designated[i-1]` lies on cycle i.
/// A failed merge is attempted again up to `retries` times with fresh draws.
FactorOutcome one_factor_to_hamilton(const OneFactor& factor, std::span<const Vertex> designated,
                                     const AvailableEdgeSet& available, const MergeSettings& settings,
                                     std::size_t retries, ExposureLedger& ledger, RngStreams& rngs);

/// Per-vertex count of designations across all factors.
struct DesignationLedger {
  std::vector<std::size_t> counts;
  double threshold = 0.0; ///< (np)^{1/3} log^2 n

  std::size_t total() const;
  std::vector<Vertex> over_threshold() const;
};

double designation_threshold(std::size_t n, double p);

/// One uniform vertex per non-first cycle of every (ordered) factor.
std::vector<std::vector<Vertex>> choose_designated(std::span<const OneFactor> factors,
                                                   SeededRng& rng, DesignationLedger& ledger);

struct ConversionOutcome {
  bool success = false;
  std::size_t failed_factor = 0; ///< 1-based k
  std::size_t failed_iteration = 0;
  MergeStage failed_stage = MergeStage::none;
  std::vector<Cycle> hamilton_cycles;
  AvailableEdgeSet remaining;
  std::vector<FactorOutcome> factors;
};

ConversionOutcome convert_all(std::span<const OneFactor> factors,
                              const std::vector<std::vector<Vertex>>& designated,
                              const AvailableEdgeSet& available, const MergeSettings& settings,
                              std::size_t retries, ExposureLedger& ledger, RngStreams& rngs);

} // namespace hampack

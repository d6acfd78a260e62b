#pragma once

// One seeded trial end to end: two-round bipartite exposure, delta disjoint
// perfect matchings, a uniform permutation turning them into 1-factors, the
// screening diagnostics, designation, conversion into Hamilton cycles,
// verification and the coupling audit.

#include "hampack/exposure.hpp"
#include "hampack/graph.hpp"
#include "hampack/matching.hpp"
#include "hampack/merge.hpp"
#include "hampack/verify.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hampack {

struct PipelineOptions {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  Mode mode = Mode::practical;
  std::size_t retries = 3;
  std::optional<std::size_t> t_max;   ///< practical default 10
  std::optional<double> q;            ///< replaces the derived q
  std::optional<std::size_t> target;  ///< replaces ceil(log n / (100 sqrt q))
};

struct Phase1Result {
  Params params;
  BipartiteGraph first;     ///< B'
  BipartiteGraph bipartite; ///< B
  MinDegreePair min_pair;
  DeltaMatchingResult matchings;
  Permutation pi;
  Digraph digraph;                ///< D' = D_pi(B)
  std::vector<OneFactor> factors; ///< ordered for merging
  std::uint64_t draws = 0;
};

/// First phase plus the 1-factor mapping. `factors` is empty on FAILURE.
Phase1Result run_phase1(const Params& params, RngStreams& rngs);

struct StageOutcome {
  std::string stage;
  std::string status; ///< "ok", "failure", "error", "skipped"
  std::string detail;

  friend bool operator==(const StageOutcome&, const StageOutcome&) = default;
};

struct ReportParams {
  std::size_t n = 0;
  double p = 0.0, p0 = 0.0, p1 = 0.0, q = 0.0, q_used = 0.0, epsilon = 0.0;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t retries = 0, t_max = 0, target = 0;
  bool p1_clamped = false, q_overridden = false, rotation_clamped = false;

  friend bool operator==(const ReportParams&, const ReportParams&) = default;
};

struct LedgerAudit {
  std::uint32_t max_attempts = 0;
  double budget = 0.0;
  std::uint64_t total_attempts = 0;
  std::uint64_t attempted_edges = 0;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram;
  std::vector<std::vector<std::uint32_t>> violations; ///< [u, v], 1-based

  friend bool operator==(const LedgerAudit&, const LedgerAudit&) = default;
};

struct ReportVerification {
  bool performed = false;
  bool passed = false;
  bool hamiltonian_ok = false, disjoint_ok = false, subset_ok = false, count_ok = false;
  std::size_t delta_pm_final = 0;
  std::string witness;

  friend bool operator==(const ReportVerification&, const ReportVerification&) = default;
};

struct ReportDiagnostics {
  std::uint64_t phase1_draws = 0, sprinkling_draws = 0, closure_draws = 0;
  std::size_t heavy_checked_cycles = 0, heavy_vertices = 0;
  double long_cycle_bound = 0.0; ///< n / (4 log n)
  bool long_cycles_ok = true;
  double cycle_count_bound = 0.0; ///< 4 log n
  std::size_t max_cycles_per_factor = 0;
  std::size_t singleton_cycles = 0;
  double designation_threshold = 0.0;
  std::size_t designation_max = 0;
  std::vector<std::uint32_t> designation_over_threshold;
  std::size_t merge_attempts = 0, merge_retries = 0;
  std::size_t max_rounds = 0;
  std::size_t sandwich_violations = 0;
  std::size_t dropped_derivations = 0;
  std::map<std::string, std::size_t> merge_failures;

  friend bool operator==(const ReportDiagnostics&, const ReportDiagnostics&) = default;
};

struct TrialReport {
  ReportParams params;
  std::string outcome; ///< "success", "failure" or "error"
  std::size_t delta = 0;
  std::uint32_t x_plus = 0, y_minus = 0, pi_y_minus = 0; ///< 1-based, 0 if unset
  std::vector<StageOutcome> stage_outcomes;
  std::vector<std::vector<std::uint32_t>> matchings; ///< y-images per matching, 1-based
  std::vector<std::size_t> factor_cycle_counts;
  std::vector<std::vector<std::uint32_t>> cycles;    ///< Hamilton cycles, canonical, 1-based
  std::string failure_stage; ///< empty on success
  std::size_t failure_factor = 0, failure_iteration = 0;
  LedgerAudit ledger_audit;
  ReportVerification verification;
  ReportDiagnostics diagnostics;

  bool success() const { return outcome == "success"; }

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

/// In-memory by-products kept for tests and for writing graph files.
struct TrialArtifacts {
  std::optional<Phase1Result> phase1;
  Digraph final_digraph;
  std::vector<Cycle> hamilton_cycles;
  ExposureLedger ledger;
  AuditReport audit;
  std::optional<ConversionOutcome> conversion;
  std::uint64_t sprinkling_draws = 0;
  std::uint64_t closure_draws = 0;
};

struct TrialResult {
  TrialReport report;
  TrialArtifacts artifacts;
};

/// Never throws for a bad parameter choice; errors become an "error" outcome.
TrialResult full_pipeline(const PipelineOptions& options, bool log_exposures = false);

/// Heaviness screening at level c = 1/9 over all cycles of length >= n / log^3 n.
struct HeavyScreening {
  std::size_t checked_cycles = 0;
  std::size_t heavy_vertices = 0;
};
HeavyScreening screen_heavy(const Digraph& d, std::span<const OneFactor> factors);

} // namespace hampack

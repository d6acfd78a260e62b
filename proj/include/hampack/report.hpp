#pragma once

// JSON form of trial reports and a small JSON-Schema checker (the subset the
// shipped schemas use: type, required, properties, items, enum, minimum).

#include "hampack/pipeline.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hampack {

using Json = nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StageOutcome, stage, status, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportParams, n, p, p0, p1, q, q_used, epsilon, mode, seed, retries,
                                   t_max, target, p1_clamped, q_overridden, rotation_clamped)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LedgerAudit, max_attempts, budget, total_attempts, attempted_edges,
                                   histogram, violations)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportVerification, performed, passed, hamiltonian_ok, disjoint_ok,
                                   subset_ok, count_ok, delta_pm_final, witness)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportDiagnostics, phase1_draws, sprinkling_draws, closure_draws,
                                   heavy_checked_cycles, heavy_vertices, long_cycle_bound,
                                   long_cycles_ok, cycle_count_bound, max_cycles_per_factor,
                                   singleton_cycles, designation_threshold, designation_max,
                                   designation_over_threshold, merge_attempts, merge_retries,
                                   max_rounds, sandwich_violations, dropped_derivations,
                                   merge_failures)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TrialReport, params, outcome, delta, x_plus, y_minus, pi_y_minus,
                                   stage_outcomes, matchings, factor_cycle_counts, cycles,
                                   failure_stage, failure_factor, failure_iteration, ledger_audit,
                                   verification, diagnostics)

/// Deterministic text: sorted keys, two-space indent, trailing newline.
std::string dump_report(const TrialReport& report);
TrialReport parse_report(const std::string& text);

/// Violations as "path: message" strings; empty means valid.
std::vector<std::string> validate_schema(const Json& value, const Json& schema);

/// Schemas shipped under schema/, compiled into the library.
const Json& trial_report_schema();
const Json& batch_summary_schema();

} // namespace hampack

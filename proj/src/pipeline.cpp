#include "hampack/pipeline.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hampack {

Phase1Result run_phase1(const Params& params, RngStreams& rngs) {
  Phase1Result result;
  result.params = params;
  const std::size_t n = params.n;
  result.first = first_exposure(n, params.p0, rngs.phase1);
  result.min_pair = min_degree_vertices(result.first);
  result.bipartite =
      second_exposure(result.first, result.min_pair.x, result.min_pair.y, params.p1, rngs.phase1);
  result.draws = rngs.phase1.bernoulli_draws();
  result.matchings = find_delta_matchings(result.bipartite, result.min_pair.x, result.min_pair.y);
  if (!result.matchings.success) return result;

  result.pi = random_permutation(n, rngs.permutation);
  result.digraph = bipartite_to_digraph(result.bipartite, result.pi);
  for (const Matching& m : result.matchings.family.matchings)
    result.factors.push_back(matching_to_one_factor(m, result.pi).ordered_for_merging());
  return result;
}

HeavyScreening screen_heavy(const Digraph& d, std::span<const OneFactor> factors) {
  HeavyScreening screening;
  const std::size_t n = d.vertex_count();
  if (n < 2) return screening;
  const double min_length = static_cast<double>(n) / std::pow(log_n(n), 3);
  std::vector<bool> members(n, false);
  for (const OneFactor& f : factors) {
    for (const Cycle& c : f.cycles()) {
      if (static_cast<double>(c.length()) < min_length) continue;
      ++screening.checked_cycles;
      for (Vertex v : c.vertices()) members[v] = true;
      for (Vertex v : c.vertices())
        if (is_heavy(v, members, 1.0 / 9.0, d)) ++screening.heavy_vertices;
      for (Vertex v : c.vertices()) members[v] = false;
    }
  }
  return screening;
}

namespace {

std::vector<std::uint32_t> one_based(std::span<const Vertex> vs) {
  std::vector<std::uint32_t> out(vs.begin(), vs.end());
  for (auto& v : out) ++v;
  return out;
}

void fill_audit(TrialReport& report, const AuditReport& audit, const ExposureLedger& ledger) {
  auto& out = report.ledger_audit;
  out.max_attempts = audit.max_attempts;
  out.budget = audit.budget;
  out.total_attempts = ledger.total_attempts();
  out.attempted_edges = audit.entries.size();
  out.histogram.assign(audit.histogram.begin(), audit.histogram.end());
  for (const Edge& e : audit.violations) out.violations.push_back({e.from + 1, e.to + 1});
}

void fill_merge_diagnostics(ReportDiagnostics& diag, const ConversionOutcome& conversion) {
  for (const auto& factor : conversion.factors) {
    diag.merge_retries += factor.retries_used;
    for (const auto& m : factor.merges) {
      ++diag.merge_attempts;
      diag.max_rounds = std::max({diag.max_rounds, m.rounds_left, m.rounds_right});
      diag.dropped_derivations += m.dropped_derivations;
      for (bool ok : m.sandwich_left) diag.sandwich_violations += ok ? 0 : 1;
      for (bool ok : m.sandwich_right) diag.sandwich_violations += ok ? 0 : 1;
      if (m.e1_successes == 0) ++diag.merge_failures["step2"];
      else if (m.stalled) ++diag.merge_failures["step4"];
      else if (m.e2_successes == 0) ++diag.merge_failures["step5"];
    }
  }
}

} // namespace

TrialResult full_pipeline(const PipelineOptions& options, bool log_exposures) {
  TrialResult result;
  auto& report = result.report;
  auto& art = result.artifacts;
  auto& rp = report.params;
  rp.n = options.n;
  rp.p = options.p;
  rp.mode = std::string(to_string(options.mode));
  rp.seed = options.seed;
  rp.retries = options.mode == Mode::strict ? 0 : options.retries;

  Params params;
  try {
    params = derive_parameters(options.n, options.p, options.mode);
  } catch (const ParameterRangeError& e) {
    report.outcome = "error";
    report.failure_stage = "parameters";
    report.stage_outcomes.push_back({"parameters", "error", e.what()});
    return result;
  }
  rp.p0 = params.p0;
  rp.p1 = params.p1;
  rp.q = params.q;
  rp.epsilon = params.epsilon;
  rp.p1_clamped = params.clamped.p1;
  rp.q_used = options.q.value_or(params.q);
  rp.q_overridden = options.q.has_value();
  rp.t_max = options.t_max.value_or(options.mode == Mode::strict ? strict_round_cap(options.n) : 10);
  rp.target = options.target.value_or(default_rotation_target(options.n, rp.q_used));
  report.stage_outcomes.push_back({"parameters", "ok", ""});

  RngStreams rngs(options.seed);
  auto& phase1 = art.phase1.emplace(run_phase1(params, rngs));
  const std::size_t n = options.n;
  report.x_plus = phase1.min_pair.x + 1;
  report.y_minus = phase1.min_pair.y + 1;
  report.delta = phase1.matchings.delta;
  report.diagnostics.phase1_draws = phase1.draws;
  report.stage_outcomes.push_back(
      {"first_exposure", "ok", std::to_string(phase1.first.edge_count()) + " edges"});
  report.stage_outcomes.push_back(
      {"second_exposure", "ok", std::to_string(phase1.bipartite.edge_count()) + " edges"});

  if (!phase1.matchings.success) {
    std::string detail = "no " + std::to_string(report.delta) + "-factor";
    if (phase1.matchings.witness) {
      const auto& w = *phase1.matchings.witness;
      detail += ": |A|=" + std::to_string(w.a.size()) + " |B|=" + std::to_string(w.b.size()) +
                " e(A,B)=" + std::to_string(w.edges_between) + " < " + std::to_string(w.required);
    }
    report.stage_outcomes.push_back({"matchings", "failure", detail});
    report.outcome = "failure";
    report.failure_stage = "matchings";
    return result;
  }
  report.stage_outcomes.push_back(
      {"matchings", "ok", std::to_string(report.delta) + " disjoint perfect matchings"});
  for (const Matching& m : phase1.matchings.family.matchings) report.matchings.push_back(one_based(m));

  report.pi_y_minus = phase1.pi(phase1.min_pair.y) + 1;
  auto& diag = report.diagnostics;
  const double L = log_n(n);
  diag.long_cycle_bound = static_cast<double>(n) / (4.0 * L);
  diag.cycle_count_bound = 4.0 * L;
  for (const OneFactor& f : phase1.factors) {
    report.factor_cycle_counts.push_back(f.cycles().size());
    diag.max_cycles_per_factor = std::max(diag.max_cycles_per_factor, f.cycles().size());
    diag.singleton_cycles += f.singleton_count();
    if (static_cast<double>(f.cycles().front().length()) < diag.long_cycle_bound) diag.long_cycles_ok = false;
  }
  report.stage_outcomes.push_back(
      {"permutation", "ok",
       diag.singleton_cycles > 0 ? std::to_string(diag.singleton_cycles) + " singleton cycles"
                                 : std::string()});

  const auto screening = screen_heavy(phase1.digraph, phase1.factors);
  diag.heavy_checked_cycles = screening.checked_cycles;
  diag.heavy_vertices = screening.heavy_vertices;

  DesignationLedger designations;
  designations.counts.assign(n, 0);
  designations.threshold = designation_threshold(n, options.p);
  const auto designated = choose_designated(phase1.factors, rngs.designation, designations);
  diag.designation_threshold = designations.threshold;
  for (auto c : designations.counts) diag.designation_max = std::max(diag.designation_max, c);
  diag.designation_over_threshold = one_based(designations.over_threshold());
  report.stage_outcomes.push_back({"designation", "ok", ""});

  const auto available =
      init_available_edges(phase1.digraph, phase1.min_pair.x, phase1.pi(phase1.min_pair.y));
  MergeSettings settings;
  settings.n = n;
  settings.p = options.p;
  settings.q = rp.q_used;
  settings.mode = options.mode;
  settings.rotation = {rp.target, rp.t_max};

  art.ledger.enable_event_log(log_exposures);
  try {
    art.conversion = convert_all(phase1.factors, designated, available, settings, rp.retries,
                                 art.ledger, rngs);
  } catch (const ParameterRangeError& e) {
    report.outcome = "error";
    report.failure_stage = "conversion";
    report.stage_outcomes.push_back({"conversion", "error", e.what()});
  }
  art.sprinkling_draws = rngs.sprinkling.bernoulli_draws();
  art.closure_draws = rngs.closure.bernoulli_draws();
  diag.sprinkling_draws = art.sprinkling_draws;
  diag.closure_draws = art.closure_draws;

  art.final_digraph = phase1.digraph;
  for (const Edge& e : art.ledger.success_list()) art.final_digraph.add_edge(e.from, e.to);
  art.audit = coupling_audit(art.ledger, params);
  fill_audit(report, art.audit, art.ledger);

  if (!art.conversion) return result;
  const auto& conversion = *art.conversion;
  fill_merge_diagnostics(diag, conversion);
  for (const auto& f : conversion.factors)
    for (const auto& m : f.merges) rp.rotation_clamped = rp.rotation_clamped || m.rotation_clamped;

  if (!conversion.success) {
    report.outcome = "failure";
    report.failure_stage = std::string(to_string(conversion.failed_stage));
    report.failure_factor = conversion.failed_factor;
    report.failure_iteration = conversion.failed_iteration;
    report.stage_outcomes.push_back(
        {"conversion", "failure",
         "factor " + std::to_string(conversion.failed_factor) + " merge " +
             std::to_string(conversion.failed_iteration) + " " + report.failure_stage});
    return result;
  }
  report.stage_outcomes.push_back(
      {"conversion", "ok", std::to_string(conversion.hamilton_cycles.size()) + " Hamilton cycles"});
  art.hamilton_cycles = conversion.hamilton_cycles;
  for (const Cycle& c : art.hamilton_cycles) report.cycles.push_back(one_based(c.vertices()));

  const std::size_t final_delta = delta_pm(art.final_digraph);
  const auto verdict = verify_packing(art.final_digraph, art.hamilton_cycles, final_delta);
  auto& v = report.verification;
  v.performed = true;
  v.passed = verdict.passed();
  v.hamiltonian_ok = verdict.hamiltonian_ok;
  v.disjoint_ok = verdict.disjoint_ok;
  v.subset_ok = verdict.subset_ok;
  v.count_ok = verdict.count_ok;
  v.delta_pm_final = final_delta;
  v.witness = verdict.witness;
  report.stage_outcomes.push_back({"verification", v.passed ? "ok" : "failure", v.witness});
  report.outcome = v.passed ? "success" : "failure";
  if (!v.passed) report.failure_stage = "verification";
  return result;
}

} // namespace hampack

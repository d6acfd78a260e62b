#include "hampack/merge.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hampack {

std::size_t nominal_e1_size(std::size_t n, double p, std::size_t b) {
  const double np = static_cast<double>(n) * p;
  if (np <= 0.0) return std::numeric_limits<std::size_t>::max();
  const double size = std::ceil(static_cast<double>(b) * std::pow(log_n(n), 7) / std::sqrt(np));
  if (size >= static_cast<double>(std::numeric_limits<std::size_t>::max()))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(size);
}

std::string_view to_string(MergeStage stage) {
  switch (stage) {
  case MergeStage::none: return "none";
  case MergeStage::step2: return "step2";
  case MergeStage::step4: return "step4";
  case MergeStage::step5: return "step5";
  }
  return "unknown";
}

namespace {

void record_rotation(MergeDiagnostics& diag, const RotationState& state) {
  for (Side side : {Side::left, Side::right}) {
    const auto& rounds = state.rounds(side);
    auto& sizes = side == Side::left ? diag.end_sizes_left : diag.end_sizes_right;
    auto& sandwich = side == Side::left ? diag.sandwich_left : diag.sandwich_right;
    for (std::size_t t = 0; t < rounds.size(); ++t) {
      sizes.push_back(rounds[t].endpoints.size());
      if (t > 0) sandwich.push_back(rounds[t].sandwich_lower && rounds[t].sandwich_upper);
    }
  }
  diag.rounds_left = state.round_count(Side::left);
  diag.rounds_right = state.round_count(Side::right);
  diag.dropped_derivations = state.dropped_derivations();
}

} // namespace

MergeResult merge_two_cycles(const Cycle& c, const Cycle& c_star, Vertex v1,
                             const AvailableEdgeSet& available, const MergeSettings& settings,
                             ExposureLedger& ledger, RngStreams& rngs) {
  if (!c_star.contains(v1)) throw InvalidInputError("designated vertex is not on C*");
  for (Vertex v : c_star.vertices())
    if (c.contains(v)) throw InvalidInputError("cycles to merge are not vertex-disjoint");

  MergeResult result;
  auto& diag = result.diagnostics;
  diag.a = c_star.length();
  diag.b = c.length();

  // Step 1: candidate edges v1 -> u with u- on C, i.e. u on C.
  std::vector<Vertex> eligible;
  for (Vertex u : c.vertices())
    if (available.contains({v1, u})) eligible.push_back(u);
  std::sort(eligible.begin(), eligible.end());
  diag.e1_eligible = eligible.size();
  diag.e1_nominal = settings.e1_size.value_or(nominal_e1_size(settings.n, settings.p, diag.b));

  std::vector<Vertex> e1;
  if (eligible.size() >= diag.e1_nominal) {
    // Uniform subset via a partial Fisher-Yates pass; sample order is kept.
    for (std::size_t i = 0; i < diag.e1_nominal; ++i) {
      const std::size_t j = i + rngs.sprinkling.uniform_below(eligible.size() - i);
      std::swap(eligible[i], eligible[j]);
    }
    e1.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(diag.e1_nominal));
  } else if (settings.mode == Mode::practical) {
    e1 = eligible;
    rngs.sprinkling.shuffle(e1);
  }
  diag.e1_size = e1.size();

  std::optional<Vertex> u1;
  for (Vertex u : e1) {
    if (expose({v1, u}, settings.q, ledger, rngs.sprinkling)) {
      ++diag.e1_successes;
      result.successes.push_back({v1, u});
      if (!u1) u1 = u;
    }
  }
  // Step 2.
  if (!u1) {
    result.failed_at = MergeStage::step2;
    return result;
  }
  result.link = {v1, *u1};

  // Step 3: P = (v2, ..., va, v1, u1, ..., ub).
  const auto c_seq = c.starting_at(*u1);
  const auto star_seq = c_star.starting_at(v1);
  Path path(star_seq.begin() + 1, star_seq.end());
  path.push_back(v1);
  path.insert(path.end(), c_seq.begin(), c_seq.end());

  // Step 4.
  SprinkleSettings sprinkle{settings.n, 0.0};
  sprinkle.probability = rotation_probability(settings.n, path.size(), settings.mode, &diag.rotation_clamped);
  diag.rotation_probability = sprinkle.probability;
  auto rotation = rotate_to_target(path, available, ledger, rngs.sprinkling, sprinkle, settings.rotation);
  record_rotation(diag, rotation.state);
  const auto& state = rotation.state;
  for (const Edge& e : state.exposed_successes()) result.successes.push_back(e);
  if (!rotation.success) {
    diag.stalled = rotation.stalled;
    result.failed_at = MergeStage::step4;
    return result;
  }

  // Step 5: close with an edge from END_r to END_l.
  std::vector<Edge> e2;
  for (Vertex y : state.end_set(Side::right))
    for (Vertex x : state.end_set(Side::left))
      if (available.contains({y, x})) e2.push_back({y, x});
  diag.e2_size = e2.size();
  std::optional<Edge> closing;
  for (const Edge& e : e2) {
    if (expose(e, settings.q, ledger, rngs.closure)) {
      ++diag.e2_successes;
      result.successes.push_back(e);
      if (!closing) closing = e;
    }
  }
  if (!closing) {
    result.failed_at = MergeStage::step5;
    return result;
  }
  result.closing = *closing;

  // Step 6.
  Path rotated = reconstruct_path(state, closing->to, closing->from);
  result.cycle = Cycle(std::move(rotated));
  result.remaining = available;
  for (const Edge& e : state.exposed_successes()) result.remaining.remove(e);
  result.remaining.remove(result.link);
  result.remaining.remove(result.closing);
  result.success = true;
  return result;
}

FactorOutcome one_factor_to_hamilton(const OneFactor& factor, std::span<const Vertex> designated,
                                     const AvailableEdgeSet& available, const MergeSettings& settings,
                                     std::size_t retries, ExposureLedger& ledger, RngStreams& rngs) {
  const auto cycles = factor.cycles();
  if (cycles.empty()) throw InvalidInputError("empty 1-factor");
  if (designated.size() + 1 != cycles.size())
    throw InvalidInputError("need one designated vertex per non-first cycle");
  for (const Cycle& cycle : cycles)
    if (cycle.length() > cycles.front().length())
      throw InvalidInputError("first cycle of the factor must be a longest one");
  if (settings.mode == Mode::strict) retries = 0;

  FactorOutcome outcome;
  Cycle current = cycles.front();
  AvailableEdgeSet edges = available;
  for (std::size_t i = 1; i < cycles.size(); ++i) {
    MergeResult merged;
    for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
      if (attempt > 0) ++outcome.retries_used;
      merged = merge_two_cycles(current, cycles[i], designated[i - 1], edges, settings, ledger, rngs);
      outcome.merges.push_back(merged.diagnostics);
      outcome.successes.insert(outcome.successes.end(), merged.successes.begin(), merged.successes.end());
      if (merged.success) break;
    }
    if (!merged.success) {
      outcome.failed_iteration = i;
      outcome.failed_stage = merged.failed_at;
      return outcome;
    }
    current = std::move(merged.cycle);
    edges = std::move(merged.remaining);
  }
  outcome.success = true;
  outcome.hamilton = std::move(current);
  outcome.remaining = std::move(edges);
  return outcome;
}

std::size_t DesignationLedger::total() const {
  std::size_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::vector<Vertex> DesignationLedger::over_threshold() const {
  std::vector<Vertex> result;
  for (Vertex v = 0; v < counts.size(); ++v)
    if (static_cast<double>(counts[v]) > threshold) result.push_back(v);
  return result;
}

double designation_threshold(std::size_t n, double p) {
  const double L = log_n(n);
  return std::cbrt(static_cast<double>(n) * p) * L * L;
}

std::vector<std::vector<Vertex>> choose_designated(std::span<const OneFactor> factors,
                                                   SeededRng& rng, DesignationLedger& ledger) {
  std::vector<std::vector<Vertex>> result;
  result.reserve(factors.size());
  for (const OneFactor& f : factors) {
    if (ledger.counts.size() < f.vertex_count()) ledger.counts.resize(f.vertex_count(), 0);
    std::vector<Vertex> picks;
    const auto cycles = f.cycles();
    for (std::size_t i = 1; i < cycles.size(); ++i) {
      const auto vs = cycles[i].vertices();
      const Vertex v = vs[rng.uniform_below(vs.size())];
      ++ledger.counts[v];
      picks.push_back(v);
    }
    result.push_back(std::move(picks));
  }
  return result;
}

ConversionOutcome convert_all(std::span<const OneFactor> factors,
                              const std::vector<std::vector<Vertex>>& designated,
                              const AvailableEdgeSet& available, const MergeSettings& settings,
                              std::size_t retries, ExposureLedger& ledger, RngStreams& rngs) {
  if (designated.size() != factors.size())
    throw InvalidInputError("need one designated tuple per factor");
  ConversionOutcome outcome;
  AvailableEdgeSet edges = available;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    auto factor_outcome =
        one_factor_to_hamilton(factors[k], designated[k], edges, settings, retries, ledger, rngs);
    const bool ok = factor_outcome.success;
    if (ok) {
      outcome.hamilton_cycles.push_back(factor_outcome.hamilton);
      edges = factor_outcome.remaining;
    } else {
      outcome.failed_factor = k + 1;
      outcome.failed_iteration = factor_outcome.failed_iteration;
      outcome.failed_stage = factor_outcome.failed_stage;
    }
    outcome.factors.push_back(std::move(factor_outcome));
    if (!ok) return outcome;
  }
  outcome.success = true;
  outcome.remaining = std::move(edges);
  return outcome;
}

} // namespace hampack

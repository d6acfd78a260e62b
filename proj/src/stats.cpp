#include "hampack/stats.hpp"

#include "hampack/errors.hpp"
#include "hampack/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace hampack {

namespace {

void accumulate(PermutationCycleStats& stats, std::size_t sigma, double tail_threshold) {
  stats.mean_2_sigma += std::ldexp(1.0, static_cast<int>(sigma));
  stats.mean_sigma += static_cast<double>(sigma);
  if (static_cast<double>(sigma) >= tail_threshold) stats.tail_4logn += 1.0;
}

void finalize(PermutationCycleStats& stats) {
  if (stats.samples == 0) return;
  const auto s = static_cast<double>(stats.samples);
  stats.mean_2_sigma /= s;
  stats.mean_sigma /= s;
  stats.tail_4logn /= s;
}

} // namespace

PermutationCycleStats permutation_cycle_stats(std::size_t n, std::uint64_t samples, SeededRng& rng) {
  if (samples == 0) throw InvalidInputError("need at least one sample");
  PermutationCycleStats stats;
  stats.n = n;
  stats.samples = samples;
  const double threshold = 4.0 * log_n(n);
  for (std::uint64_t i = 0; i < samples; ++i)
    accumulate(stats, random_permutation(n, rng).cycle_count(), threshold);
  finalize(stats);
  return stats;
}

PermutationCycleStats permutation_cycle_stats_exhaustive(std::size_t n) {
  if (n > 10) throw SizeError("exhaustive permutation sweep supports n <= 10");
  PermutationCycleStats stats;
  stats.n = n;
  const double threshold = 4.0 * log_n(n);
  std::vector<Vertex> image(n);
  std::iota(image.begin(), image.end(), Vertex{0});
  do {
    accumulate(stats, Permutation(image).cycle_count(), threshold);
    ++stats.samples;
  } while (std::next_permutation(image.begin(), image.end()));
  finalize(stats);
  return stats;
}

double inverse_cycle_length_cube(std::span<const OneFactor> factors, Vertex w) {
  double sum = 0.0;
  for (const OneFactor& f : factors) sum += 1.0 / static_cast<double>(f.cycle_of(w).length());
  return sum * sum * sum;
}

MomentEstimate designation_moment_estimate(std::size_t n, double p, std::uint64_t trials,
                                           std::uint64_t seed) {
  MomentEstimate est;
  est.n = n;
  est.p = p;
  est.trials = trials;
  const Params params = derive_parameters(n, p, Mode::practical);
  double total = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStreams rngs(seed + t);
    const auto phase1 = run_phase1(params, rngs);
    if (!phase1.matchings.success) continue;
    const auto w = static_cast<Vertex>(rngs.designation.uniform_below(n));
    total += inverse_cycle_length_cube(phase1.factors, w);
    ++est.usable;
  }
  if (est.usable > 0) est.estimate = total / static_cast<double>(est.usable);
  const double scale = p * std::pow(log_n(n), 3);
  est.ratio = scale > 0.0 ? est.estimate / scale : 0.0;
  return est;
}

DegreeGapProbe degree_gap_probe(std::size_t n, double p0, std::uint64_t trials, SeededRng& rng) {
  DegreeGapProbe probe;
  probe.n = n;
  probe.p0 = p0;
  probe.trials = trials;
  probe.bound = std::sqrt(static_cast<double>(n) * p0) / log_n(n);
  std::uint64_t meeting = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto b = first_exposure(n, p0, rng);
    const std::size_t gap = b.second_min_degree() - b.min_degree();
    ++probe.histogram[gap];
    if (static_cast<double>(gap) >= probe.bound) ++meeting;
  }
  if (trials > 0) probe.fraction_meeting_bound = static_cast<double>(meeting) / static_cast<double>(trials);
  return probe;
}

namespace {

std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

} // namespace

void write_stat_rows(std::ostream& out, std::span<const StatRow> rows) {
  out << "n,p,statistic,value,samples,seed\n";
  for (const auto& r : rows)
    out << r.n << ',' << shortest(r.p) << ',' << r.statistic << ',' << shortest(r.value) << ','
        << r.samples << ',' << r.seed << '\n';
}

} // namespace hampack

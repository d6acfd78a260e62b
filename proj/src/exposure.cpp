#include "hampack/exposure.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hampack {

std::string_view to_string(Mode mode) { return mode == Mode::strict ? "strict" : "practical"; }

Mode mode_from_string(std::string_view text) {
  if (text == "strict") return Mode::strict;
  if (text == "practical") return Mode::practical;
  throw InvalidInputError("unknown mode '" + std::string(text) + "'");
}

double epsilon_bound() {
  return std::pow(8.0, 8) / (2.0 * std::pow(9.0 * std::numbers::e, 9));
}

double log_n(std::size_t n) { return std::log(static_cast<double>(n)); }

Params derive_parameters(std::size_t n, double p, Mode mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterRangeError("p must lie in [0, 1]");
  if (n < 5) throw ParameterRangeError("n must be at least 5");

  Params params;
  params.n = n;
  params.p = p;
  params.mode = mode;
  params.epsilon = epsilon_bound();

  const double L = log_n(n);
  if (mode == Mode::strict) {
    const double lower = std::pow(L, 15) / static_cast<double>(n);
    if (p < lower || p > params.epsilon) {
      std::ostringstream msg;
      msg << "p = " << p << " outside [log^15 n / n, epsilon] = [" << lower << ", "
          << params.epsilon << "] for n = " << n;
      throw ParameterRangeError(msg.str());
    }
  }

  const double p1_raw = std::sqrt(p / (static_cast<double>(n) * std::pow(L, 4)));
  params.q = p1_raw / (L * L);
  params.p1 = p1_raw;
  if (params.p1 > p) {
    // p0 would go negative; the identity survives with p1 = p, p0 = 0.
    params.p1 = p;
    params.clamped.p1 = true;
  }
  params.p0 = params.p1 >= 1.0 ? 1.0 : (p - params.p1) / (1.0 - params.p1);
  params.p0 = std::clamp(params.p0, 0.0, 1.0);
  return params;
}

std::string_view to_string(Stream stream) {
  switch (stream) {
  case Stream::phase1: return "phase1";
  case Stream::permutation: return "permutation";
  case Stream::designation: return "designation";
  case Stream::sprinkling: return "sprinkling";
  case Stream::closure: return "closure";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

} // namespace

SeededRng::SeededRng(std::uint64_t seed, Stream stream)
    : seed_(seed), stream_(stream),
      engine_(splitmix64(splitmix64(seed) ^ (0x51ed2701ull * (static_cast<std::uint64_t>(stream) + 1)))) {}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t SeededRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("uniform_below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

bool SeededRng::bernoulli(double prob) {
  ++bernoulli_draws_;
  return uniform01() < prob;
}

RngStreams::RngStreams(std::uint64_t seed)
    : phase1(seed, Stream::phase1), permutation(seed, Stream::permutation),
      designation(seed, Stream::designation), sprinkling(seed, Stream::sprinkling),
      closure(seed, Stream::closure) {}

Permutation random_permutation(std::size_t n, SeededRng& rng) {
  std::vector<Vertex> image(n);
  for (Vertex i = 0; i < n; ++i) image[i] = i;
  rng.shuffle(image);
  return Permutation(std::move(image));
}

// ---------------------------------------------------------------- ledger

void ExposureLedger::record(Edge e, bool success) {
  ++attempts_[edge_key(e)];
  ++total_;
  if (success) successes_.insert(edge_key(e));
  if (log_events_) events_.push_back(e);
}

std::uint32_t ExposureLedger::attempts(Edge e) const {
  auto it = attempts_.find(edge_key(e));
  return it == attempts_.end() ? 0 : it->second;
}

std::vector<std::pair<Edge, std::uint32_t>> ExposureLedger::attempt_table() const {
  std::vector<std::pair<Edge, std::uint32_t>> table;
  table.reserve(attempts_.size());
  for (const auto& [key, count] : attempts_) table.emplace_back(edge_from_key(key), count);
  std::sort(table.begin(), table.end());
  return table;
}

std::vector<Edge> ExposureLedger::success_list() const {
  std::vector<Edge> list;
  list.reserve(successes_.size());
  for (auto key : successes_) list.push_back(edge_from_key(key));
  std::sort(list.begin(), list.end());
  return list;
}

bool expose(Edge e, double prob, ExposureLedger& ledger, SeededRng& rng) {
  const bool success = rng.bernoulli(prob);
  ledger.record(e, success);
  return success;
}

// ------------------------------------------------------ available edges

AvailableEdgeSet::AvailableEdgeSet(std::size_t n) : n_(n), allowed_(n * n, false) {}

void AvailableEdgeSet::insert(Edge e) {
  if (e.from >= n_ || e.to >= n_) throw InvalidInputError("available edge out of range");
  if (e.from == e.to) return;
  auto ref = allowed_[e.from * n_ + e.to];
  if (!ref) {
    ref = true;
    ++size_;
  }
}

bool AvailableEdgeSet::remove(Edge e) {
  if (!contains(e)) return false;
  allowed_[e.from * n_ + e.to] = false;
  --size_;
  removals_.push_back(e);
  return true;
}

std::vector<Edge> AvailableEdgeSet::edges() const {
  std::vector<Edge> result;
  result.reserve(size_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v)
      if (allowed_[u * n_ + v]) result.push_back({u, v});
  return result;
}

AvailableEdgeSet init_available_edges(const Digraph& d, Vertex excluded_tail, Vertex excluded_head) {
  const std::size_t n = d.vertex_count();
  if (excluded_tail >= n || excluded_head >= n)
    throw InvalidInputError("excluded vertex out of range");
  AvailableEdgeSet set(n);
  for (Vertex u = 0; u < n; ++u) {
    if (u == excluded_tail) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (v == excluded_head || u == v || d.has_edge(u, v)) continue;
      set.insert({u, v});
    }
  }
  return set;
}

// ------------------------------------------------------- phase 1 exposure

BipartiteGraph first_exposure(std::size_t n, double p0, SeededRng& rng) {
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (rng.bernoulli(p0)) edges.push_back({x, y});
  return BipartiteGraph::from_edges(n, edges);
}

BipartiteGraph second_exposure(const BipartiteGraph& b, Vertex x_plus, Vertex y_minus, double p1,
                               SeededRng& rng) {
  const std::size_t n = b.side_size();
  if (x_plus >= n || y_minus >= n) throw InvalidInputError("min-degree vertex out of range");
  BipartiteGraph result = b;
  for (Vertex y = 0; y < n; ++y)
    if (!b.has_edge(x_plus, y) && rng.bernoulli(p1)) result.add_edge(x_plus, y);
  for (Vertex x = 0; x < n; ++x) {
    if (x == x_plus) continue; // x_plus y_minus was already a candidate above
    if (!b.has_edge(x, y_minus) && rng.bernoulli(p1)) result.add_edge(x, y_minus);
  }
  return result;
}

// --------------------------------------------------------------- audit

AuditReport coupling_audit(const ExposureLedger& ledger, const Params& params) {
  AuditReport report;
  const double L = params.n > 1 ? log_n(params.n) : 0.0;
  report.budget = L * L;
  for (const auto& [edge, count] : ledger.attempt_table()) {
    AuditEntry entry{edge, count, static_cast<double>(count) <= report.budget};
    report.max_attempts = std::max(report.max_attempts, count);
    ++report.histogram[count];
    if (!entry.within_budget) report.violations.push_back(edge);
    report.entries.push_back(entry);
  }
  return report;
}

} // namespace hampack

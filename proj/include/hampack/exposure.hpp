#pragma once

// Randomness and its bookkeeping: parameter derivation, seeded per-phase
// streams, Bernoulli exposure with per-edge attempt counts, the two-round
// bipartite exposure of the first phase, and the coupling audit.

#include "hampack/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hampack {

enum class Mode { strict, practical };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);

/// 8^8 / (2 (9e)^9): upper end of the admissible p window.
double epsilon_bound();

struct ClampFlags {
  bool p1 = false;       ///< p1 lowered to p so that p0 stays non-negative
  bool q = false;        ///< q replaced by an explicit override
  bool rotation = false; ///< some rotation exposure probability exceeded 1

  friend bool operator==(const ClampFlags&, const ClampFlags&) = default;
};

struct Params {
  std::size_t n = 0;
  double p = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double q = 0.0;
  double epsilon = 0.0;
  Mode mode = Mode::practical;
  ClampFlags clamped;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Natural logarithm of n; every log in the library is natural.
double log_n(std::size_t n);

/// p1 = sqrt(p / (n log^4 n)), (1-p0)(1-p1) = 1-p, q = p1 / log^2 n.
/// Strict mode throws ParameterRangeError outside [log^15 n / n, epsilon];
/// practical mode clamps and records it.
Params derive_parameters(std::size_t n, double p, Mode mode);

enum class Stream : std::uint8_t { phase1, permutation, designation, sprinkling, closure };

std::string_view to_string(Stream stream);

/// Deterministic generator keyed by (seed, stream). Counts Bernoulli draws so
/// that the exposure ledger can be reconciled against the raw stream.
class SeededRng {
public:
  SeededRng(std::uint64_t seed, Stream stream);

  std::uint64_t seed() const { return seed_; }
  Stream stream() const { return stream_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits.
  double uniform01();
  /// Uniform in [0, bound). `bound` must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  bool bernoulli(double prob);

  std::uint64_t bernoulli_draws() const { return bernoulli_draws_; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::uint64_t seed_;
  Stream stream_;
  std::mt19937_64 engine_;
  std::uint64_t bernoulli_draws_ = 0;
};

/// One generator per phase of a trial.
struct RngStreams {
  explicit RngStreams(std::uint64_t seed);

  SeededRng phase1;
  SeededRng permutation;
  SeededRng designation;
  SeededRng sprinkling;
  SeededRng closure;
};

Permutation random_permutation(std::size_t n, SeededRng& rng);

/// Per-edge exposure attempts X_e and the set of successful exposures.
class ExposureLedger {
public:
  void record(Edge e, bool success);

  std::uint32_t attempts(Edge e) const;
  bool succeeded(Edge e) const { return successes_.contains(edge_key(e)); }
  std::uint64_t total_attempts() const { return total_; }

  /// Every attempted edge with its count, ordered by edge.
  std::vector<std::pair<Edge, std::uint32_t>> attempt_table() const;
  /// Successful edges, ordered.
  std::vector<Edge> success_list() const;

  /// When enabled, every attempt is appended to an event log for replay audits.
  void enable_event_log(bool on) { log_events_ = on; }
  const std::vector<Edge>& event_log() const { return events_; }

private:
  std::unordered_map<std::uint64_t, std::uint32_t> attempts_;
  std::unordered_set<std::uint64_t> successes_;
  std::uint64_t total_ = 0;
  bool log_events_ = false;
  std::vector<Edge> events_;
};

/// One Bernoulli trial with probability `prob` on `e`, always counted.
bool expose(Edge e, double prob, ExposureLedger& ledger, SeededRng& rng);

/// The mutable set E' of ordered pairs that may still be exposed.
/// Only ever shrinks.
class AvailableEdgeSet {
public:
  AvailableEdgeSet() = default;
  explicit AvailableEdgeSet(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return size_; }
  bool contains(Edge e) const {
    return e.from < n_ && e.to < n_ && allowed_[e.from * n_ + e.to];
  }
  /// Adds an edge during construction. Loops are ignored.
  void insert(Edge e);
  /// Returns true if the edge was present.
  bool remove(Edge e);

  std::vector<Edge> edges() const;
  const std::vector<Edge>& removal_log() const { return removals_; }

private:
  std::size_t n_ = 0;
  std::vector<bool> allowed_;
  std::size_t size_ = 0;
  std::vector<Edge> removals_;
};

/// {u -> v : u != excluded_tail, v != excluded_head, u != v} minus E(d).
AvailableEdgeSet init_available_edges(const Digraph& d, Vertex excluded_tail, Vertex excluded_head);

/// Each of the n^2 pairs independently with probability p0.
BipartiteGraph first_exposure(std::size_t n, double p0, SeededRng& rng);

/// Union of `b` with the pairs {x_plus y, x y_minus} each drawn with probability p1.
/// Pairs already present are not drawn again.
BipartiteGraph second_exposure(const BipartiteGraph& b, Vertex x_plus, Vertex y_minus, double p1,
                               SeededRng& rng);

struct AuditEntry {
  Edge edge;
  std::uint32_t attempts = 0;
  bool within_budget = true;
};

struct AuditReport {
  std::uint32_t max_attempts = 0;
  double budget = 0.0; ///< log^2 n, i.e. p1 / q
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::vector<AuditEntry> entries;
  std::vector<Edge> violations;

  bool all_within_budget() const { return violations.empty(); }
};

/// Flags every attempted edge with X_e <= log^2 n. Informational only.
AuditReport coupling_audit(const ExposureLedger& ledger, const Params& params);

} // namespace hampack

#pragma once

// Double rotations of a directed path with online sprinkling.
//
// A path P = (u_1, ..., u_m) is split by position into quarters V1..V4.
// A left rotation with pivots x in V1, y in V2 drops x->x+ and y->y+, adds
// y->u_1 and x->y+, and makes x+ the new left endpoint; it only permutes
// positions before m/2. A right rotation with pivots z in V4, w in V3 is the
// mirror image and only permutes positions after m/2, so any left chain and
// any right chain compose into one path.
//
// Rotated paths are never stored. Each round keeps, per reachable endpoint,
// the (parent endpoint, pivots) records that produced it; a concrete path is
// rebuilt on demand by replaying one chain back to P.

#include "hampack/exposure.hpp"
#include "hampack/graph.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace hampack {

using Path = std::vector<Vertex>;

/// 1-based inclusive position ranges. Position m/2 (m even) is in no quarter.
struct QuarterPartition {
  std::size_t m = 0;
  std::size_t v1_first = 0, v1_last = 0;
  std::size_t v2_first = 0, v2_last = 0;
  std::size_t v3_first = 0, v3_last = 0;
  std::size_t v4_first = 0, v4_last = 0;

  bool in_v1(std::size_t pos) const { return pos >= v1_first && pos <= v1_last; }
  bool in_v2(std::size_t pos) const { return pos >= v2_first && pos <= v2_last; }
  bool in_v3(std::size_t pos) const { return pos >= v3_first && pos <= v3_last; }
  bool in_v4(std::size_t pos) const { return pos >= v4_first && pos <= v4_last; }

  friend bool operator==(const QuarterPartition&, const QuarterPartition&) = default;
};

/// V1 = {i : 1 <= i < m/4}, V2 = {m/4 <= j < m/2}, V3 = {m/2 < s <= 3m/4},
/// V4 = {3m/4 < t <= m}. Throws SizeError for m < 5.
QuarterPartition quarter_partition(std::size_t m);

/// Left rotation with pivots x in V1, y in V2. Throws PreconditionError otherwise.
Path left_rotate(const Path& p, Vertex x, Vertex y);
/// Right rotation with pivots z in V4, w in V3. Throws PreconditionError otherwise.
Path right_rotate(const Path& p, Vertex z, Vertex w);

enum class Side { left, right };

std::string_view to_string(Side side);

/// How an endpoint of round t was reached from an endpoint of round t-1.
/// Left: pivots (x, y). Right: pivots (z, w).
struct Derivation {
  Vertex parent = 0;
  Vertex first = 0;
  Vertex second = 0;

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

struct RotationRound {
  /// END^t with at most two derivations per endpoint.
  std::map<Vertex, std::vector<Derivation>> endpoints;
  /// Fallback round: nothing new was obtained, END^t = END^{t-1}.
  bool carried = false;
  std::size_t exposures = 0;
  std::size_t successes = 0;
  std::size_t dropped_derivations = 0;
  /// (2 log n)^{2t} <= |END^t| and |END^t| <= (50 log n)^{2t}.
  bool sandwich_lower = true;
  bool sandwich_upper = true;
};

struct SprinkleSettings {
  std::size_t n = 0;    ///< vertex count of the whole digraph, used for log n
  double probability = 0.0;
};

/// Exposure probability 100 log n / m, clamped to 1 in practical mode.
/// Strict mode throws ParameterRangeError when it exceeds 1.
double rotation_probability(std::size_t n, std::size_t m, Mode mode, bool* clamped = nullptr);

class RotationState {
public:
  explicit RotationState(Path base);

  const Path& base() const { return base_; }
  std::size_t length() const { return base_.size(); }
  const std::optional<QuarterPartition>& quarters() const { return quarters_; }

  const std::vector<RotationRound>& rounds(Side side) const {
    return side == Side::left ? left_ : right_;
  }
  /// Number of rotation rounds performed on a side (t).
  std::size_t round_count(Side side) const { return rounds(side).size() - 1; }
  std::vector<Vertex> end_set(Side side) const;
  bool in_end_set(Side side, Vertex v) const;

  /// Edges successfully exposed while rotating (E*).
  const std::set<Edge>& exposed_successes() const { return exposed_; }

  /// The pivot chain from round 0 up to the current round leading to `endpoint`.
  /// Throws ConsistencyError if `endpoint` is not in the current END set.
  std::vector<Derivation> chain(Side side, Vertex endpoint) const;

  /// A path with `endpoint` at the given side and the base path's other half.
  Path materialize(Side side, Vertex endpoint) const;

  void sprinkle(Side side, const AvailableEdgeSet& available, ExposureLedger& ledger,
                SeededRng& rng, const SprinkleSettings& settings);

  std::size_t dropped_derivations() const;

private:
  std::vector<RotationRound>& rounds_mut(Side side) { return side == Side::left ? left_ : right_; }
  void finish_round(RotationRound& round, std::size_t t, std::size_t n) const;

  Path base_;
  std::optional<QuarterPartition> quarters_;
  std::vector<RotationRound> left_;
  std::vector<RotationRound> right_;
  std::set<Edge> exposed_;
};

/// One online-sprinkling round on `side`; appends END^t to the state.
void sprinkle_rotations(RotationState& state, Side side, const AvailableEdgeSet& available,
                        ExposureLedger& ledger, SeededRng& rng, const SprinkleSettings& settings);

struct RotationTarget {
  std::size_t target = 1; ///< T: required |END| per side
  std::size_t t_max = 10; ///< cap on rounds per side
};

/// T = ceil(log n / (100 sqrt q)), at least 1.
std::size_t default_rotation_target(std::size_t n, double q);
/// max(1, floor(log n / (4 log log n))).
std::size_t strict_round_cap(std::size_t n);

struct RotationOutcome {
  bool success = false;
  std::optional<Side> stalled;
  RotationState state;
};

/// Rotates both sides, alternating rounds, until each END set reaches the
/// target or t_max rounds were spent on the lagging side.
RotationOutcome rotate_to_target(const Path& p, const AvailableEdgeSet& available,
                                 ExposureLedger& ledger, SeededRng& rng,
                                 const SprinkleSettings& settings, const RotationTarget& target);

/// Path on V(P) with the given endpoints obtained by replaying one left and one
/// right derivation chain. Throws ConsistencyError if either endpoint is unreachable.
Path reconstruct_path(const RotationState& state, Vertex left_end, Vertex right_end);

/// Every vertex of `vertices` exactly once.
bool is_path_on(const Path& path, std::span<const Vertex> vertices);

} // namespace hampack

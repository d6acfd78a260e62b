#include "hampack/rotation.hpp"

#include "hampack/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hampack {

QuarterPartition quarter_partition(std::size_t m) {
  if (m < 5) throw SizeError("quarter partition needs a path on at least 5 vertices");
  QuarterPartition q;
  q.m = m;
  // Integer forms of the strict/non-strict bounds.
  q.v1_first = 1;
  q.v1_last = (m - 1) / 4;             // 4i < m
  q.v2_first = (m + 3) / 4;            // 4j >= m
  q.v2_last = (m - 1) / 2;             // 2j < m
  q.v3_first = m / 2 + 1;              // 2s > m
  q.v3_last = (3 * m) / 4;             // 4s <= 3m
  q.v4_first = (3 * m) / 4 + 1;        // 4t > 3m
  q.v4_last = m;
  return q;
}

namespace {

std::size_t position_of(const Path& p, Vertex v) {
  auto it = std::find(p.begin(), p.end(), v);
  if (it == p.end()) throw PreconditionError("pivot " + std::to_string(v + 1) + " not on path");
  return static_cast<std::size_t>(it - p.begin()) + 1;
}

double pow_int(double base, std::size_t exp) { return std::pow(base, static_cast<double>(exp)); }

} // namespace

Path left_rotate(const Path& p, Vertex x, Vertex y) {
  const auto q = quarter_partition(p.size());
  const std::size_t i = position_of(p, x), j = position_of(p, y);
  if (!q.in_v1(i) || !q.in_v2(j)) throw PreconditionError("left rotation pivots must lie in V1 x V2");
  // (x+ .. y, u_1 .. x, y+ .. u_m)
  Path result;
  result.reserve(p.size());
  result.insert(result.end(), p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(j));
  result.insert(result.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
  result.insert(result.end(), p.begin() + static_cast<std::ptrdiff_t>(j), p.end());
  return result;
}

Path right_rotate(const Path& p, Vertex z, Vertex w) {
  const auto q = quarter_partition(p.size());
  const std::size_t t = position_of(p, z), s = position_of(p, w);
  if (!q.in_v4(t) || !q.in_v3(s)) throw PreconditionError("right rotation pivots must lie in V4 x V3");
  // (u_1 .. w-, z .. u_m, w .. z-)
  Path result;
  result.reserve(p.size());
  result.insert(result.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(s - 1));
  result.insert(result.end(), p.begin() + static_cast<std::ptrdiff_t>(t - 1), p.end());
  result.insert(result.end(), p.begin() + static_cast<std::ptrdiff_t>(s - 1), p.begin() + static_cast<std::ptrdiff_t>(t - 1));
  return result;
}

std::string_view to_string(Side side) { return side == Side::left ? "left" : "right"; }

double rotation_probability(std::size_t n, std::size_t m, Mode mode, bool* clamped) {
  const double raw = 100.0 * log_n(n) / static_cast<double>(m);
  if (raw <= 1.0) return raw;
  if (mode == Mode::strict)
    throw ParameterRangeError("rotation exposure probability 100 log n / m exceeds 1");
  if (clamped != nullptr) *clamped = true;
  return 1.0;
}

// ----------------------------------------------------------- RotationState

RotationState::RotationState(Path base) : base_(std::move(base)) {
  if (base_.size() >= 5) quarters_ = quarter_partition(base_.size());
  RotationRound left0, right0;
  if (!base_.empty()) {
    left0.endpoints[base_.front()] = {};
    right0.endpoints[base_.back()] = {};
  }
  left_.push_back(std::move(left0));
  right_.push_back(std::move(right0));
}

std::vector<Vertex> RotationState::end_set(Side side) const {
  std::vector<Vertex> result;
  for (const auto& [v, derivations] : rounds(side).back().endpoints) result.push_back(v);
  return result;
}

bool RotationState::in_end_set(Side side, Vertex v) const {
  return rounds(side).back().endpoints.contains(v);
}

std::vector<Derivation> RotationState::chain(Side side, Vertex endpoint) const {
  const auto& history = rounds(side);
  std::vector<Derivation> steps;
  Vertex current = endpoint;
  for (std::size_t t = history.size(); t-- > 1;) {
    const auto& round = history[t];
    auto it = round.endpoints.find(current);
    if (it == round.endpoints.end() || it->second.empty())
      throw ConsistencyError("endpoint " + std::to_string(current + 1) + " has no derivation in " +
                             std::string(to_string(side)) + " round " + std::to_string(t));
    if (round.carried) continue;
    steps.push_back(it->second.front());
    current = it->second.front().parent;
  }
  if (!history.front().endpoints.contains(current))
    throw ConsistencyError("derivation chain does not reach the base path");
  std::reverse(steps.begin(), steps.end());
  return steps;
}

Path RotationState::materialize(Side side, Vertex endpoint) const {
  Path path = base_;
  for (const Derivation& d : chain(side, endpoint))
    path = side == Side::left ? left_rotate(path, d.first, d.second)
                              : right_rotate(path, d.first, d.second);
  return path;
}

std::size_t RotationState::dropped_derivations() const {
  std::size_t total = 0;
  for (const auto& r : left_) total += r.dropped_derivations;
  for (const auto& r : right_) total += r.dropped_derivations;
  return total;
}

void RotationState::finish_round(RotationRound& round, std::size_t t, std::size_t n) const {
  const double L = log_n(n);
  const auto size = static_cast<double>(round.endpoints.size());
  round.sandwich_lower = pow_int(2.0 * L, 2 * t) <= size;
  round.sandwich_upper = size <= pow_int(50.0 * L, 2 * t);
}

void RotationState::sprinkle(Side side, const AvailableEdgeSet& available, ExposureLedger& ledger,
                             SeededRng& rng, const SprinkleSettings& settings) {
  auto& history = rounds_mut(side);
  const std::size_t t = history.size();
  RotationRound round;

  auto add_endpoint = [&round](Vertex endpoint, Derivation d) {
    auto& list = round.endpoints[endpoint];
    if (list.size() >= 2) {
      ++round.dropped_derivations;
      return;
    }
    list.push_back(d);
  };
  auto try_expose = [&](Edge e) {
    if (!available.contains(e)) return false;
    ++round.exposures;
    if (!expose(e, settings.probability, ledger, rng)) return false;
    ++round.successes;
    exposed_.insert(e);
    return true;
  };

  if (quarters_) {
    const auto& q = *quarters_;
    for (const auto& [u, unused] : history.back().endpoints) {
      const Path pu = materialize(side, u);
      if (side == Side::left) {
        std::vector<std::size_t> hits; // 1-based positions of y
        for (std::size_t j = q.v2_first; j <= q.v2_last; ++j)
          if (try_expose({pu[j - 1], u})) hits.push_back(j);
        for (std::size_t j : hits) {
          const Vertex y = pu[j - 1], y_next = pu[j];
          for (std::size_t i = q.v1_first; i <= q.v1_last; ++i)
            if (try_expose({pu[i - 1], y_next})) add_endpoint(pu[i], {u, pu[i - 1], y});
        }
      } else {
        std::vector<std::size_t> hits; // 1-based positions of w
        // For odd m, u_{(m+1)/2} is y+ of the last V2 position; pivoting there
        // would clash with a left rotation through the same edge.
        for (std::size_t s = q.v3_first + q.m % 2; s <= q.v3_last; ++s)
          if (try_expose({u, pu[s - 1]})) hits.push_back(s);
        for (std::size_t s : hits) {
          const Vertex w = pu[s - 1], w_prev = pu[s - 2];
          for (std::size_t z = q.v4_first; z <= q.v4_last; ++z)
            if (try_expose({w_prev, pu[z - 1]})) add_endpoint(pu[z - 2], {u, pu[z - 1], w});
        }
      }
    }
  }

  if (round.endpoints.empty()) {
    round.carried = true;
    for (const auto& [u, unused] : history.back().endpoints) round.endpoints[u] = {Derivation{u, u, u}};
  }
  finish_round(round, t, settings.n);
  history.push_back(std::move(round));
}

void sprinkle_rotations(RotationState& state, Side side, const AvailableEdgeSet& available,
                        ExposureLedger& ledger, SeededRng& rng, const SprinkleSettings& settings) {
  state.sprinkle(side, available, ledger, rng, settings);
}

std::size_t default_rotation_target(std::size_t n, double q) {
  if (q <= 0.0) return static_cast<std::size_t>(-1);
  const double t = std::ceil(log_n(n) / (100.0 * std::sqrt(q)));
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

std::size_t strict_round_cap(std::size_t n) {
  const double L = log_n(n);
  const double cap = std::floor(L / (4.0 * std::log(L)));
  return std::max<std::size_t>(1, cap > 0 ? static_cast<std::size_t>(cap) : 0);
}

RotationOutcome rotate_to_target(const Path& p, const AvailableEdgeSet& available,
                                 ExposureLedger& ledger, SeededRng& rng,
                                 const SprinkleSettings& settings, const RotationTarget& target) {
  RotationOutcome outcome{false, std::nullopt, RotationState(p)};
  auto& state = outcome.state;
  auto reached = [&](Side s) { return state.rounds(s).back().endpoints.size() >= target.target; };

  while (!reached(Side::left) || !reached(Side::right)) {
    for (Side side : {Side::left, Side::right}) {
      if (reached(side)) continue;
      if (state.round_count(side) >= target.t_max) {
        outcome.stalled = side;
        return outcome;
      }
      state.sprinkle(side, available, ledger, rng, settings);
    }
  }
  outcome.success = true;
  return outcome;
}

Path reconstruct_path(const RotationState& state, Vertex left_end, Vertex right_end) {
  if (!state.in_end_set(Side::left, left_end) || !state.in_end_set(Side::right, right_end))
    throw ConsistencyError("requested endpoint was never reached by rotations");
  Path path = state.base();
  for (const Derivation& d : state.chain(Side::left, left_end)) path = left_rotate(path, d.first, d.second);
  for (const Derivation& d : state.chain(Side::right, right_end)) path = right_rotate(path, d.first, d.second);
  if (path.front() != left_end || path.back() != right_end)
    throw ConsistencyError("replayed path has the wrong endpoints");
  return path;
}

bool is_path_on(const Path& path, std::span<const Vertex> vertices) {
  if (path.size() != vertices.size()) return false;
  auto a = path;
  std::vector<Vertex> b(vertices.begin(), vertices.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b && std::adjacent_find(a.begin(), a.end()) == a.end();
}

} // namespace hampack

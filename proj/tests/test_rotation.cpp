#include "doctest.h"

#include "hampack/errors.hpp"
#include "hampack/rotation.hpp"
#include "oracles.hpp"

#include <numeric>
#include <set>

using namespace hampack;

namespace {

Path iota_path(std::size_t m) {
  Path p(m);
  std::iota(p.begin(), p.end(), Vertex{0});
  return p;
}

/// Every ordered pair of distinct vertices on n that is not an edge of `p`.
AvailableEdgeSet complement_of_path(std::size_t n, const Path& p) {
  AvailableEdgeSet set(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) set.insert({u, v});
  for (std::size_t i = 0; i + 1 < p.size(); ++i) set.remove({p[i], p[i + 1]});
  return set;
}

// Quarter membership straight from the defining inequalities on 1-based positions.
bool in_v1(std::size_t i, std::size_t m) { return 1 <= i && 4 * i < m; }
bool in_v2(std::size_t j, std::size_t m) { return m <= 4 * j && 2 * j < m; }
bool in_v3(std::size_t s, std::size_t m) { return m < 2 * s && 4 * s <= 3 * m; }
bool in_v4(std::size_t t, std::size_t m) { return 3 * m < 4 * t && t <= m; }

} // namespace

TEST_CASE("quarter_partition") {
  SUBCASE("m = 8") {
    const auto q = quarter_partition(8);
    CHECK(q.v1_first == 1);
    CHECK(q.v1_last == 1);
    CHECK(q.v2_first == 2);
    CHECK(q.v2_last == 3);
    CHECK(q.v3_first == 5);
    CHECK(q.v3_last == 6);
    CHECK(q.v4_first == 7);
    CHECK(q.v4_last == 8);
    for (std::size_t pos : {1u, 2u, 3u, 5u, 6u, 7u, 8u})
      CHECK((q.in_v1(pos) || q.in_v2(pos) || q.in_v3(pos) || q.in_v4(pos)));
    CHECK_FALSE((q.in_v1(4) || q.in_v2(4) || q.in_v3(4) || q.in_v4(4)));
  }
  SUBCASE("m = 5") {
    const auto q = quarter_partition(5);
    CHECK((q.v1_first == 1 && q.v1_last == 1));
    CHECK((q.v2_first == 2 && q.v2_last == 2));
    CHECK((q.v3_first == 3 && q.v3_last == 3));
    CHECK((q.v4_first == 4 && q.v4_last == 5));
  }
  SUBCASE("m < 5") { CHECK_THROWS_AS(quarter_partition(4), SizeError); }
  SUBCASE("every m in [5, 2000] matches the inequalities") {
    for (std::size_t m = 5; m <= 2000; ++m) {
      const auto q = quarter_partition(m);
      std::size_t c1 = 0, c2 = 0, c3 = 0, c4 = 0;
      for (std::size_t pos = 1; pos <= m; ++pos) {
        REQUIRE(q.in_v1(pos) == in_v1(pos, m));
        REQUIRE(q.in_v2(pos) == in_v2(pos, m));
        REQUIRE(q.in_v3(pos) == in_v3(pos, m));
        REQUIRE(q.in_v4(pos) == in_v4(pos, m));
        REQUIRE(q.in_v1(pos) + q.in_v2(pos) + q.in_v3(pos) + q.in_v4(pos) <= 1);
        c1 += q.in_v1(pos);
        c2 += q.in_v2(pos);
        c3 += q.in_v3(pos);
        c4 += q.in_v4(pos);
      }
      REQUIRE((c1 > 0 && c2 > 0 && c3 > 0 && c4 > 0));
    }
  }
}

TEST_CASE("left and right rotations") {
  const Path p{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(left_rotate(p, 1, 3) == Path{2, 3, 1, 4, 5, 6, 7, 8});
  CHECK(right_rotate(p, 8, 5) == Path{1, 2, 3, 4, 8, 5, 6, 7});
  CHECK_THROWS_AS(left_rotate(p, 3, 1), PreconditionError);
  CHECK_THROWS_AS(right_rotate(p, 5, 8), PreconditionError);
  CHECK_THROWS_AS(left_rotate(p, 1, 9), PreconditionError);

  SeededRng rng(17, Stream::sprinkling);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 5 + rng.uniform_below(60);
    Path path = iota_path(m);
    rng.shuffle(path);
    const auto q = quarter_partition(m);
    const std::size_t i = q.v1_first + rng.uniform_below(q.v1_last - q.v1_first + 1);
    const std::size_t j = q.v2_first + rng.uniform_below(q.v2_last - q.v2_first + 1);
    const Vertex x = path[i - 1], y = path[j - 1];
    const auto left = left_rotate(path, x, y);
    CHECK(left == oracle::rotate_by_edges(path, {x, path[i]}, {y, path[j]}, {y, path.front()}, {x, path[j]}));
    CHECK(left.front() == path[i]);
    for (std::size_t pos = m / 2 + 1; pos <= m; ++pos) CHECK(left[pos - 1] == path[pos - 1]);

    const std::size_t s = q.v3_first + rng.uniform_below(q.v3_last - q.v3_first + 1);
    const std::size_t t = q.v4_first + rng.uniform_below(q.v4_last - q.v4_first + 1);
    const Vertex w = path[s - 1], z = path[t - 1];
    const auto right = right_rotate(path, z, w);
    CHECK(right == oracle::rotate_by_edges(path, {path[t - 2], z}, {path[s - 2], w}, {path.back(), w},
                                           {path[s - 2], z}));
    CHECK(right.back() == path[t - 2]);
    for (std::size_t pos = 1; 2 * pos < m; ++pos) CHECK(right[pos - 1] == path[pos - 1]);
  }
}

TEST_CASE("rotation_probability") {
  bool clamped = false;
  CHECK(rotation_probability(100, 1000, Mode::practical, &clamped) == doctest::Approx(0.1 * std::log(100.0)));
  CHECK_FALSE(clamped);
  CHECK(rotation_probability(100, 50, Mode::practical, &clamped) == 1.0);
  CHECK(clamped);
  CHECK_THROWS_AS(rotation_probability(100, 50, Mode::strict), ParameterRangeError);
}

TEST_CASE("sprinkle_rotations") {
  ExposureLedger ledger;
  SeededRng rng(1, Stream::sprinkling);
  const SprinkleSettings always{8, 1.0};

  SUBCASE("no available edges: the round is carried") {
    RotationState state(iota_path(8));
    sprinkle_rotations(state, Side::left, AvailableEdgeSet(8), ledger, rng, always);
    CHECK(state.rounds(Side::left).back().carried);
    CHECK(state.end_set(Side::left) == std::vector<Vertex>{0});
    CHECK(reconstruct_path(state, 0, 7) == iota_path(8));
  }
  SUBCASE("m = 8 with everything available: one endpoint, two derivations") {
    RotationState state(iota_path(8));
    sprinkle_rotations(state, Side::left, complement_of_path(8, iota_path(8)), ledger, rng, always);
    const auto& round = state.rounds(Side::left).back();
    REQUIRE(round.endpoints.size() == 1);
    CHECK(round.endpoints.begin()->first == 1);
    CHECK(round.endpoints.begin()->second.size() == 2);
    CHECK(state.exposed_successes() == std::set<Edge>{{1, 0}, {2, 0}, {0, 2}, {0, 3}});
  }
  SUBCASE("END^1 matches an enumeration of pivot pairs, m = 12") {
    const Path p = iota_path(12);
    const auto avail = complement_of_path(12, p);
    for (Side side : {Side::left, Side::right}) {
      RotationState state(p);
      sprinkle_rotations(state, side, avail, ledger, rng, SprinkleSettings{12, 1.0});
      std::set<Vertex> expected;
      for (std::size_t a = 1; a <= 12; ++a)
        for (std::size_t b = 1; b <= 12; ++b) {
          if (side == Side::left && in_v1(a, 12) && in_v2(b, 12) && avail.contains({p[b - 1], p[0]}) &&
              avail.contains({p[a - 1], p[b]}))
            expected.insert(p[a]);
          if (side == Side::right && in_v3(a, 12) && in_v4(b, 12) && avail.contains({p[11], p[a - 1]}) &&
              avail.contains({p[a - 2], p[b - 1]}))
            expected.insert(p[b - 2]);
        }
      const auto ends = state.end_set(side);
      CHECK(std::set<Vertex>(ends.begin(), ends.end()) == expected);
      for (Vertex e : ends) {
        const auto path = state.materialize(side, e);
        CHECK((side == Side::left ? path.front() : path.back()) == e);
      }
    }
  }
  SUBCASE("at most two derivations are kept and extras are counted") {
    RotationState state(iota_path(40));
    sprinkle_rotations(state, Side::left, complement_of_path(40, iota_path(40)), ledger, rng,
                       SprinkleSettings{40, 1.0});
    for (const auto& [v, ds] : state.rounds(Side::left).back().endpoints) CHECK(ds.size() <= 2);
    CHECK(state.dropped_derivations() > 0);
  }
}

TEST_CASE("rotate_to_target") {
  ExposureLedger ledger;
  SeededRng rng(3, Stream::sprinkling);
  SUBCASE("T = 1 needs no rounds") {
    const auto out = rotate_to_target(iota_path(10), AvailableEdgeSet(10), ledger, rng, {10, 1.0}, {1, 5});
    CHECK(out.success);
    CHECK(out.state.round_count(Side::left) == 0);
    CHECK(out.state.round_count(Side::right) == 0);
    CHECK(ledger.total_attempts() == 0);
  }
  SUBCASE("nothing available and T >= 2 fails") {
    const auto out = rotate_to_target(iota_path(10), AvailableEdgeSet(10), ledger, rng, {10, 1.0}, {2, 5});
    CHECK_FALSE(out.success);
    CHECK(out.stalled == Side::left);
  }
  SUBCASE("m = 200 with everything available reaches T on both sides") {
    const Path p = iota_path(200);
    const auto avail = complement_of_path(200, p);
    const double prob = rotation_probability(200, 200, Mode::practical);
    const auto out = rotate_to_target(p, avail, ledger, rng, {200, prob}, {30, 10});
    REQUIRE(out.success);
    for (Side side : {Side::left, Side::right}) {
      const auto ends = out.state.end_set(side);
      CHECK(ends.size() >= 30);
      std::set<Vertex> recount;
      for (Vertex e : ends) {
        const auto path = out.state.materialize(side, e);
        recount.insert(side == Side::left ? path.front() : path.back());
      }
      CHECK(recount.size() == ends.size());
    }
  }
}

TEST_CASE("reconstruct_path") {
  ExposureLedger ledger;
  SUBCASE("zero rotations give P") {
    RotationState state(iota_path(9));
    CHECK(reconstruct_path(state, 0, 8) == iota_path(9));
    CHECK_THROWS_AS(reconstruct_path(state, 1, 8), ConsistencyError);
  }
  SUBCASE("one left derivation equals left_rotate") {
    SeededRng rng(4, Stream::sprinkling);
    RotationState state(iota_path(12));
    sprinkle_rotations(state, Side::left, complement_of_path(12, iota_path(12)), ledger, rng, {12, 1.0});
    for (Vertex e : state.end_set(Side::left)) {
      const auto chain = state.chain(Side::left, e);
      REQUIRE(chain.size() == 1);
      CHECK(reconstruct_path(state, e, 11) == left_rotate(iota_path(12), chain[0].first, chain[0].second));
    }
  }
  SUBCASE("random chains give valid paths using only P and exposed edges") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      SeededRng rng(seed, Stream::sprinkling);
      const std::size_t m = 5 + rng.uniform_below(40);
      const std::size_t n = m + rng.uniform_below(5);
      Path p(n);
      std::iota(p.begin(), p.end(), Vertex{0});
      rng.shuffle(p);
      p.resize(m);
      AvailableEdgeSet avail(n);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          if (rng.uniform01() < 0.5) avail.insert({u, v});
      ExposureLedger l;
      RotationState state(p);
      for (int r = 0; r < 3; ++r) {
        sprinkle_rotations(state, Side::left, avail, l, rng, {n, 0.6});
        sprinkle_rotations(state, Side::right, avail, l, rng, {n, 0.6});
      }
      std::set<Edge> allowed(state.exposed_successes().begin(), state.exposed_successes().end());
      for (std::size_t i = 0; i + 1 < m; ++i) allowed.insert({p[i], p[i + 1]});
      for (const Edge& e : state.exposed_successes()) CHECK(l.succeeded(e));
      for (Vertex a : state.end_set(Side::left))
        for (Vertex b : state.end_set(Side::right)) {
          const auto path = reconstruct_path(state, a, b);
          REQUIRE(is_path_on(path, p));
          CHECK(path.front() == a);
          CHECK(path.back() == b);
          for (std::size_t i = 0; i + 1 < m; ++i) CHECK(allowed.contains({path[i], path[i + 1]}));
        }
    }
  }
}

TEST_CASE("round caps and targets") {
  CHECK(default_rotation_target(100, 1.0) == 1);
  CHECK(default_rotation_target(100, 1e-6) == static_cast<std::size_t>(std::ceil(std::log(100.0) / 0.1)));
  CHECK(strict_round_cap(100) == 1);
  const double L = std::log(1e12);
  CHECK(strict_round_cap(1000000000000ull) == static_cast<std::size_t>(std::floor(L / (4 * std::log(L)))));
}

#include "doctest.h"

#include "billiards/coding.hpp"
#include "billiards/errors.hpp"
#include "billiards/freearc.hpp"
#include "billiards/shooting.hpp"
#include "support.hpp"

using namespace billiards;

namespace {

// Real phase point of the beam member hitting the home cap at arclength s.
PhasePoint beam_member(const Table& t, ArcId home, double s) {
  const Curve& cap = t.curve(home);
  const Vec2 in = t.side_of(home) == Side::left ? Vec2(-1.0, 0.0) : Vec2(1.0, 0.0);
  return t.phase_point(home, s, reflect(in, cap.normal_at(s)));
}

double departure_argument(const Table& t, const PhasePoint& p) {
  const Vec2 d = t.outgoing_direction(p);
  return std::atan2(d.y(), std::abs(d.x()));
}

// Checks that an orbit is a chain of free flights whose departures stay in [-eps, eps].
void check_departures(const Table& t, const std::vector<PhasePoint>& orbit, double eps) {
  for (const PhasePoint& p : orbit)
    if (t.is_curved_cap(p.arc)) CHECK(std::abs(departure_argument(t, p)) <= eps + 1e-9);
}

}  // namespace

TEST_CASE("initial bundle covers the home cap") {
  const Table t = make_stadium(4.0, 1.0);
  const CurveBundle b = initial_bundle(t);
  CHECK(b.level == 0);
  CHECK(b.history.empty());
  CHECK(b.a == 0.0);
  CHECK(b.b == doctest::Approx(t.cap(b.home).length()));
}

TEST_CASE("refining to level difference 0 reaches all of the opposite cap") {
  const Table t = make_stadium(4.0, 1.0);
  const CurveBundle b0 = initial_bundle(t);
  const CurveBundle b1 = refine_bundle(t, b0, 0);
  CHECK(b1.side != b0.side);
  CHECK(b1.history == std::vector<int>{0});
  CHECK(b1.a >= b0.a);
  CHECK(b1.b <= b0.b);

  const ArcId home = t.cap_id(b0.home);
  const ArcId target = t.cap_id(b1.side);
  const double len = t.curve(target).length();
  double lo = len, hi = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double s = b1.a + (b1.b - b1.a) * i / 100;
    const PhasePoint p = beam_member(t, home, s);
    CHECK(std::abs(departure_argument(t, p)) <= t.eps() + 1e-9);
    const PhasePoint q = next_collision(t, p).first;
    CHECK(q.arc == target);
    lo = std::min(lo, q.r);
    hi = std::max(hi, q.r);
  }
  CHECK(lo < 0.02 * len);
  CHECK(hi > 0.98 * len);
}

TEST_CASE("refined bundles are nested") {
  const Table t = make_stadium(4.0, 1.0);
  CurveBundle b = initial_bundle(t);
  for (int k : {1, 0, -1, 0, 1}) {
    const CurveBundle next = refine_bundle(t, b, k);
    CHECK(next.a >= b.a);
    CHECK(next.b <= b.b);
    CHECK(next.b > next.a);
    CHECK(next.level == b.level + k);
    b = next;
  }
  const LiftFrame frame(t);
  CHECK(evaluate_bundle(frame, b, 0.5 * (b.a + b.b)).has_value());
}

TEST_CASE("targets beyond the reach are refused") {
  const Table t = make_stadium(4.0, 1.0);
  const int N = max_symbol_bound(t.ell(), t.eps(), t.table_class());
  REQUIRE(N == 1);
  const CurveBundle b = initial_bundle(t);
  CHECK_THROWS_AS(refine_bundle(t, b, N + 1), TargetUnreachable);
  CHECK_THROWS_AS(refine_bundle(t, b, -(N + 2)), TargetUnreachable);
}

TEST_CASE("realize_itinerary on a stadium") {
  const Table t = make_stadium(4.0, 1.0);
  for (const std::vector<int>& ks : {std::vector<int>{0, 0, 0}, std::vector<int>{1, 0, -1}, std::vector<int>{-1, 1}}) {
    const auto orbit = realize_itinerary(t, ks, t.eps(), 1);
    CHECK(level_differences(t, orbit) == ks);
    CHECK(t.is_curved_cap(orbit.front().arc));
    CHECK(t.is_curved_cap(orbit.back().arc));
    check_departures(t, orbit, t.eps());
    // Replaying the map from the first point gives the same orbit.
    PhasePoint p = orbit.front();
    for (std::size_t i = 1; i < orbit.size(); ++i) {
      p = next_collision(t, p).first;
      CHECK(p.arc == orbit[i].arc);
      CHECK(std::abs(p.r - orbit[i].r) < 1e-6);
    }
  }
  CHECK_THROWS_AS(realize_itinerary(t, {2}, t.eps(), 1), DomainError);
  CHECK_THROWS_AS(realize_itinerary(t, {1}, t.eps(), 2), TargetUnreachable);
  CHECK(realize_itinerary(t, {}, t.eps(), 1).size() == 1);
}

TEST_CASE("realize_itinerary on a mushroom") {
  const Table t = make_mushroom(4.0, 0.5);
  const int N = max_symbol_bound(t.ell(), t.eps(), t.table_class());
  REQUIRE(N >= 2);
  for (const std::vector<int>& ks : {std::vector<int>{2, 0, -1}, std::vector<int>{0, -2, 1}}) {
    const auto orbit = realize_itinerary(t, ks, t.eps(), N);
    CHECK(level_differences(t, orbit) == ks);
    check_departures(t, orbit, t.eps());
  }
}

TEST_CASE("realized words re-encode exactly") {
  const Table t = make_stadium(5.0, 1.0);
  const int N = max_symbol_bound(t.ell(), t.eps(), t.table_class());
  testing_support::Rng rng(40);
  const TransitionTable table(N);
  for (int trial = 0; trial < 10; ++trial) {
    SymbolWord w{{rng.integer(-N, N)}, N};
    for (int i = 0; i < 5; ++i) {
      const auto next = table.successors(w.symbols.back());
      w.symbols.push_back(next[rng.integer(0, static_cast<int>(next.size()) - 1)]);
    }
    const ItineraryPlan plan = plan_itinerary(w);
    const auto orbit = realize_itinerary(t, plan.level_differences, t.eps(), N);
    CHECK(encode(t, orbit, N) == plan.padded);
  }
}

#pragma once

#include "billiards/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace testing_support {

using billiards::Curve;
using billiards::Side;
using billiards::Table;
using billiards::Vec2;

inline constexpr double pi = std::numbers::pi;

// Deterministic uniform draws for the property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

// Sampled copy of a circular arc (samples every `step` radians).
inline Curve sampled_arc(Vec2 center, double radius, double start, double sweep, int pieces) {
  std::vector<Vec2> pts, tans;
  for (int i = 0; i <= pieces; ++i) {
    const double a = start + sweep * i / pieces;
    pts.push_back(center + radius * Vec2(std::cos(a), std::sin(a)));
    tans.push_back(std::copysign(1.0, sweep) * Vec2(-std::sin(a), std::cos(a)));
  }
  return Curve::sampled(pts, tans);
}

// Stadium of rectangle length l whose caps are sampled splines instead of arcs.
inline Table sampled_stadium(double l) {
  Curve left = sampled_arc({0.0, 0.5}, 0.5, pi - pi / 6, pi / 3, 12);
  Curve right = sampled_arc({l, 0.5}, 0.5, -pi / 6, pi / 3, 12);
  return Table(0.0, l, left, right, pi / 6 - 1e-6);
}

// Left cap x = -A sin(pi (y - 0.2) / 0.6), y from 0.8 down to 0.2, whose
// normal arguments stay within [-max_arg, max_arg].
inline Curve bump_cap(double max_arg, int pieces = 40) {
  const double k = pi / 0.6;
  const double amp = std::tan(max_arg) / k;
  std::vector<Vec2> pts, tans;
  for (int i = 0; i <= pieces; ++i) {
    const double y = 0.8 - 0.6 * i / pieces;
    const double x = -amp * std::sin(k * (y - 0.2));
    const double dx_dy = -amp * k * std::cos(k * (y - 0.2));
    pts.emplace_back(x, y);
    tans.push_back(Vec2(-dx_dy, -1.0).normalized());
  }
  return Curve::sampled(pts, tans);
}

inline Curve stadium_right_cap(double l) { return Curve::arc({l, 0.5}, 0.5, -pi / 6, pi / 3); }

// Left cap shaped like a "C" open to the right: horizontal rays from its
// upper inner part run back into its own upper tip.
inline Table reentrant_table() {
  Curve left = Curve::arc({-0.2, 0.5}, 0.3, pi / 3, 4 * pi / 3);
  return Table(0.0, 3.0, left, stadium_right_cap(3.0), 0.3);
}

}  // namespace testing_support

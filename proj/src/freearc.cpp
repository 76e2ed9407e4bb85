#include "billiards/freearc.hpp"

#include "billiards/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int scan_samples = 4096;
constexpr int max_trace_steps = 100000;

// First arclength position where `pred` holds, refined by bisection against
// the preceding sample.
template <typename Pred>
std::optional<double> first_position(const Curve& c, Pred pred) {
  const double len = c.length();
  double prev = 0.0;
  if (pred(0.0)) return 0.0;
  for (int i = 1; i <= scan_samples; ++i) {
    const double s = len * i / scan_samples;
    if (pred(s)) {
      double lo = prev, hi = s;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * len; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) hi = mid; else lo = mid;
      }
      return hi;
    }
    prev = s;
  }
  return std::nullopt;
}

// Closed form for circular arcs: positions where the normal line has argument `target`.
std::optional<double> arc_position_with_normal(const Curve& c, double target) {
  const double span = std::abs(c.sweep());
  const double dir = std::copysign(1.0, c.sweep());
  std::optional<double> best;
  for (int m = -4; m <= 4; ++m) {
    const double theta = target + m * pi;
    double delta = std::fmod(dir * (theta - c.start_angle()), 2.0 * pi);
    if (delta < 0.0) delta += 2.0 * pi;
    if (delta <= span + 1e-15) {
      const double s = std::min(delta, span) * c.radius();
      if (!best || s < *best) best = s;
    }
  }
  return best;
}

}  // namespace

std::pair<double, double> find_marker_points(const Curve& curve, double eps) {
  if (!(eps > 0.0 && eps < pi / 6)) throw DomainError("find_marker_points: eps must lie in (0, pi/6)");

  std::optional<double> plus, minus;
  if (curve.kind() == Curve::Kind::arc) {
    plus = arc_position_with_normal(curve, eps);
    minus = arc_position_with_normal(curve, -eps);
  }
  if (!plus) plus = first_position(curve, [&](double s) { return curve.normal_argument(s) >= eps; });
  if (!minus) minus = first_position(curve, [&](double s) { return curve.normal_argument(s) <= -eps; });
  if (!plus || !minus) throw NoMarker("find_marker_points: normal arguments of the arc do not reach +-eps");
  return {*plus, *minus};
}

PointCheck verify_point_free(const Table& table, ArcId cap, double r, double eps, double angle_step) {
  if (!table.is_cap(cap)) throw DomainError("verify_point_free: not a cap of this table");
  if (!(angle_step > 0.0)) throw DomainError("verify_point_free: angle grid must be positive");
  if (!(eps >= 0.0 && eps < pi / 2)) throw DomainError("verify_point_free: eps out of range");

  const Curve& c = table.curve(cap);
  if (r < 0.0 || r > c.length()) throw DomainError("verify_point_free: r outside the cap");
  const Side own = *table.side_of(cap);
  const double toward = own == Side::left ? 1.0 : -1.0;
  const Vec2 n = c.normal_at(r);

  const int steps = eps > 0.0 ? static_cast<int>(std::ceil(2.0 * eps / angle_step)) : 0;
  PointCheck result;
  for (int i = 0; i <= steps; ++i) {
    const double theta = steps == 0 ? 0.0 : -eps + 2.0 * eps * i / steps;
    const Vec2 d = toward * Vec2(std::cos(theta), std::sin(theta));
    if (!(d.dot(n) > 0.0)) continue;  // no trajectory leaves the cap this way
    ++result.angles_checked;

    auto fail = [&](std::string reason) {
      result.passed = false;
      result.witness = {r, theta, std::move(reason)};
    };
    PhasePoint p = table.phase_point(cap, r, d);
    try {
      for (int step = 0;; ++step) {
        if (step == max_trace_steps) { fail("no cap reached"); break; }
        p = next_collision(table, p).first;
        const auto side = table.side_of(p.arc);
        if (!side) continue;
        if (*side == own) fail("returns to its own cap");
        break;
      }
    } catch (const NoCollision& e) {
      if (e.side() == own) fail("leaves through its own cap");
    } catch (const CornerHit&) {
      fail("corner");
    } catch (const TangentialCollision&) {
      fail("tangential collision");
    }
    if (!result.passed) return result;
  }
  return result;
}

FreeArcCertificate verify_arc_free(const Table& table, ArcId cap, double eps, double position_step,
                                   double angle_step) {
  const Curve& c = table.curve(cap);
  if (position_step <= 0.0) position_step = c.length() / 512.0;
  if (angle_step <= 0.0) angle_step = eps > 0.0 ? eps / 256.0 : 1.0;

  FreeArcCertificate cert;
  cert.arc = cap;
  cert.eps = eps;
  cert.position_step = position_step;
  cert.angle_step = angle_step;
  cert.rigorous = false;
  cert.regular = true;  // enforced by the Curve factories

  try {
    const auto [plus, minus] = find_marker_points(c, eps);
    cert.markers_found = true;
    cert.p_plus = plus;
    cert.p_minus = minus;
  } catch (const NoMarker&) {
    cert.markers_found = false;
  }

  const Box2 box = c.bounds();
  cert.disjoint_from_walls = box.min().y() > 0.0 && box.max().y() < 1.0;

  // Cell midpoints: the arc ends are corners of the modeled boundary.
  const int count = std::max(1, static_cast<int>(std::ceil(c.length() / position_step)));
  for (int i = 0; i < count; ++i) {
    const double r = c.length() * (i + 0.5) / count;
    const PointCheck check = verify_point_free(table, cap, r, eps, angle_step);
    cert.samples_checked += check.angles_checked;
    if (!check.passed) cert.failures.push_back(check.witness);
  }
  return cert;
}

int max_symbol_bound(double ell, double eps, TableClass table_class) {
  if (!(ell > 0.0) || !(eps > 0.0) || !(eps < pi / 2)) return -1;
  const double reach = (table_class == TableClass::semistadium ? 2.0 : 1.0) * ell * std::tan(eps);
  // Relative slack so that values landing on an integer up to rounding count as reaching it.
  const double floored = std::floor(reach * (1.0 + 1e-12));
  if (floored > 1e6) return 1000000 - 1;
  return static_cast<int>(floored) - 1;
}

}  // namespace billiards

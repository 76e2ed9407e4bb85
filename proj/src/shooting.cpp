#include "billiards/shooting.hpp"

#include "billiards/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace billiards {

namespace {

constexpr int grid_cells = 1024;
constexpr int max_zoom = 4;
constexpr double parameter_tolerance = 1e-12;
constexpr double landing_tolerance = 1e-6;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

Vec2 outgoing(const LiftFrame& frame, const BundlePoint& p) {
  const Vec2 n = LiftFrame::lift_vector(p.level, frame.cap(p.side).normal_at(p.s));
  return reflect(p.incoming, n);
}

// Flight from an arrival, or nothing if it comes back to its own side first.
std::optional<LiftFrame::ChainHit> flight(const LiftFrame& frame, const BundlePoint& p) {
  const Vec2 out = outgoing(frame, p);
  const auto hit = frame.cast(p.point, out, opposite(p.side));
  const auto own = frame.cast(p.point, out, p.side);
  if (own && (!hit || own->t < hit->t)) return std::nullopt;
  return hit;
}

std::optional<std::vector<BundlePoint>> trace(const LiftFrame& frame, const CurveBundle& bundle, double t) {
  const Curve& cap = frame.cap(bundle.home);
  if (!(t >= 0.0 && t <= cap.length())) return std::nullopt;
  BundlePoint p;
  p.side = bundle.home;
  p.level = 0;
  p.s = t;
  p.point = cap.point_at(t);
  p.incoming = bundle.home == Side::left ? Vec2(-1.0, 0.0) : Vec2(1.0, 0.0);

  std::vector<BundlePoint> out{p};
  for (const int k : bundle.history) {
    const auto hit = flight(frame, p);
    if (!hit || hit->piece != LiftFrame::Piece::cap || hit->level != p.level + k) return std::nullopt;
    BundlePoint next;
    next.side = hit->side;
    next.level = hit->level;
    next.s = hit->s;
    next.point = hit->point;
    next.incoming = outgoing(frame, p);
    p = next;
    out.push_back(p);
  }
  return out;
}

// Bisection for the boundary between a parameter whose value lies beyond
// `level` (outside) and one whose value does not. Returns the outside end.
template <typename F>
double bisect_boundary(const F& f, double outside_t, double inside_t, double level, bool above) {
  auto is_outside = [&](double t) {
    const double v = f(t);
    if (std::isnan(v)) return true;
    return above ? v >= level : v <= level;
  };
  const double tol = std::min(parameter_tolerance, std::abs(inside_t - outside_t) * 1e-3);
  for (int it = 0; it < 200 && std::abs(inside_t - outside_t) > tol; ++it) {
    const double mid = 0.5 * (outside_t + inside_t);
    if (mid == outside_t || mid == inside_t) break;
    if (is_outside(mid)) outside_t = mid;
    else inside_t = mid;
  }
  return outside_t;
}

// Subinterval of [a, b] on which f runs from one side of [lo, hi] to the
// other while staying inside in between. The ends are the outside parameters
// of the two crossings.
template <typename F>
std::optional<std::pair<double, double>> find_sweep(const F& f, double a, double b, double lo, double hi,
                                                    int zoom) {
  std::vector<double> ts(grid_cells + 1);
  std::vector<int> cls(grid_cells + 1);
  for (int i = 0; i <= grid_cells; ++i) {
    ts[i] = i == grid_cells ? b : a + (b - a) * i / grid_cells;
    const double v = f(ts[i]);
    cls[i] = std::isnan(v) ? 2 : v <= lo ? -1 : v >= hi ? 1 : 0;
  }

  int prev = -1;
  for (int i = 0; i <= grid_cells; ++i) {
    if (cls[i] == 2) {
      prev = -1;
      continue;
    }
    if (cls[i] == 0) continue;
    if (prev >= 0 && cls[prev] != cls[i]) {
      if (i == prev + 1) {
        if (zoom == 0) return std::nullopt;
        return find_sweep(f, ts[prev], ts[i], lo, hi, zoom - 1);
      }
      const double first = bisect_boundary(f, ts[prev], ts[prev + 1], cls[prev] < 0 ? lo : hi, cls[prev] > 0);
      const double last = bisect_boundary(f, ts[i], ts[i - 1], cls[i] < 0 ? lo : hi, cls[i] > 0);
      return std::pair{std::min(first, last), std::max(first, last)};
    }
    prev = i;
  }
  return std::nullopt;
}

PhasePoint real_phase_point(const LiftFrame& frame, const BundlePoint& p) {
  const Table& table = frame.table();
  const ArcId arc = frame.real_cap(p.side);
  const Vec2 frame_point = LiftFrame::unlift(p.level, p.point);
  const Vec2 incoming = frame.fold_direction(frame_point, LiftFrame::lift_vector(p.level, p.incoming));
  return table.phase_point(arc, p.s, reflect(incoming, table.curve(arc).normal_at(p.s)));
}

}  // namespace

CurveBundle initial_bundle(const Table& table) {
  const LiftFrame frame(table);
  CurveBundle bundle;
  bundle.home = frame.home_side();
  bundle.side = bundle.home;
  bundle.level = 0;
  bundle.a = 0.0;
  bundle.b = frame.cap(bundle.home).length();
  return bundle;
}

std::optional<BundlePoint> evaluate_bundle(const LiftFrame& frame, const CurveBundle& bundle, double t) {
  auto points = trace(frame, bundle, t);
  if (!points) return std::nullopt;
  return points->back();
}

CurveBundle refine_bundle(const Table& table, const CurveBundle& bundle, int target_j) {
  const LiftFrame frame(table);
  const double eps = table.eps();
  const double reach = frame.ell() * std::tan(eps);
  if (std::abs(target_j) + 1 > reach * (1.0 + 1e-12))
    throw TargetUnreachable("refine_bundle: level difference " + std::to_string(target_j) +
                            " is beyond the reach of the table");
  const int block = static_cast<int>(bundle.history.size());
  if (!(bundle.b > bundle.a)) throw BisectionStall("refine_bundle: empty bundle", block);

  const Side target_side = opposite(bundle.side);
  const double toward = target_side == Side::right ? 1.0 : -1.0;

  auto argument = [&](double t) {
    const auto p = evaluate_bundle(frame, bundle, t);
    if (!p) return nan;
    const Vec2 d = outgoing(frame, *p);
    return std::atan2(d.y(), toward * d.x());
  };
  const auto swept = find_sweep(argument, bundle.a, bundle.b, -eps, eps, max_zoom);
  if (!swept) throw BisectionStall("refine_bundle: outgoing arguments do not sweep [-eps, eps]", block);

  auto sigma = [&](double t) {
    const auto p = evaluate_bundle(frame, bundle, t);
    if (!p) return nan;
    const auto hit = flight(frame, *p);
    return hit ? hit->sigma : nan;
  };
  const auto [lo, hi] = frame.cap_sigma_range(target_side, bundle.level + target_j);
  const auto landed = find_sweep(sigma, swept->first, swept->second, lo, hi, max_zoom);
  if (!landed || !(landed->second > landed->first))
    throw BisectionStall("refine_bundle: flights do not cover the target cap", block);

  CurveBundle out = bundle;
  out.side = target_side;
  out.level = bundle.level + target_j;
  out.a = landed->first;
  out.b = landed->second;
  out.history.push_back(target_j);
  return out;
}

std::vector<PhasePoint> realize_itinerary(const Table& table_in, const std::vector<int>& ks, double eps, int N) {
  for (const int k : ks)
    if (std::abs(k) > N) throw DomainError("realize_itinerary: level difference beyond N");
  const Table table = eps == table_in.eps() ? table_in : table_in.with_eps(eps);
  const LiftFrame frame(table);
  if (N + 1 > frame.ell() * std::tan(eps) * (1.0 + 1e-12))
    throw TargetUnreachable("realize_itinerary: N + 1 exceeds the reach of the table");

  // A block's sign follows its first wall; seen from an odd (mirrored) level
  // the first wall below is gamma2, so the lifted step flips sign there.
  CurveBundle bundle = initial_bundle(table);
  for (const int k : ks) bundle = refine_bundle(table, bundle, (bundle.level & 1) ? -k : k);

  const double t = 0.5 * (bundle.a + bundle.b);
  const auto points = trace(frame, bundle, t);
  if (!points) throw BisectionStall("realize_itinerary: midpoint left the bundle", static_cast<int>(ks.size()) - 1);

  std::vector<PhasePoint> orbit;
  for (std::size_t m = 0; m < points->size(); ++m) {
    const PhasePoint start = real_phase_point(frame, (*points)[m]);
    orbit.push_back(start);
    if (m + 1 == points->size()) break;

    const int block = static_cast<int>(m);
    const BundlePoint& next = (*points)[m + 1];
    PhasePoint p = start;
    try {
      for (int step = 0;; ++step) {
        if (step > std::abs(ks[m]) + 2) throw BisectionStall("realize_itinerary: block does not close", block);
        p = next_collision(table, p).first;
        if (table.is_curved_cap(p.arc)) break;
        orbit.push_back(p);
      }
    } catch (const BisectionStall&) {
      throw;
    } catch (const Error& e) {
      throw BisectionStall(std::string("realize_itinerary: ") + e.what(), block);
    }
    if (p.arc != frame.real_cap(next.side) || std::abs(p.r - next.s) > landing_tolerance)
      throw BisectionStall("realize_itinerary: simulated flight misses the shot landing", block);
  }

  const std::vector<int> got = level_differences(table, orbit);
  for (std::size_t m = 0; m < ks.size(); ++m)
    if (m >= got.size() || got[m] != ks[m])
      throw BisectionStall("realize_itinerary: orbit does not follow the itinerary", static_cast<int>(m));
  return orbit;
}

}  // namespace billiards

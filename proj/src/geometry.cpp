#include "billiards/geometry.hpp"

#include "billiards/errors.hpp"

#include <cmath>
#include <numbers>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double launch_offset = 1e-9;

}  // namespace

double reflect_argument(double incoming_arg, double normal_arg) {
  if (!(std::abs(incoming_arg) < pi / 6) || !(std::abs(normal_arg) < pi / 6))
    throw DomainError("reflect_argument: arguments must be below pi/6 in absolute value");
  return 2.0 * normal_arg - incoming_arg;
}

double argument_of(const Vec2& from, const Vec2& to) {
  const Vec2 d = to - from;
  if (!(d.norm() > 0.0)) throw DomainError("argument_of: degenerate segment");
  return line_argument(d);
}

double argument_of(const TrajectorySegment& seg) { return argument_of(seg.from, seg.to); }

RayCast cast_ray(const Table& table, const Vec2& origin, const Vec2& dir) {
  std::optional<RayHit> best;
  ArcId best_arc = ArcId::gamma1;
  const Gap* best_gap = nullptr;

  for (const ArcId id : {ArcId::gamma1, ArcId::gamma2, ArcId::gamma3, ArcId::gamma4, ArcId::vertical_cap}) {
    if (!table.has_arc(id)) continue;
    const auto hit = table.curve(id).intersect(origin, dir, launch_offset);
    if (hit && (!best || hit->t < best->t)) {
      best = hit;
      best_arc = id;
    }
  }
  for (const Gap& gap : table.gaps()) {
    const auto hit = gap.segment.intersect(origin, dir, launch_offset);
    if (hit && (!best || hit->t < best->t)) {
      best = hit;
      best_gap = &gap;
    }
  }

  RayCast out;
  if (!best) {
    // Only possible for rays leaving the closed boundary; report as an escape.
    out.status = RayCast::Status::escaped;
    out.escape_side = dir.x() < 0.0 ? Side::left : Side::right;
    return out;
  }
  out.t = best->t;
  out.point = best->point;
  for (const Vec2& c : table.corners()) {
    if ((c - best->point).norm() < Tolerance::corner) {
      out.status = RayCast::Status::corner;
      return out;
    }
  }
  if (best_gap) {
    out.status = RayCast::Status::escaped;
    out.escape_side = best_gap->side;
    return out;
  }
  out.arc = best_arc;
  out.r = best->s;
  const Vec2 n = table.curve(best_arc).normal_at(best->s);
  if (std::abs(dir.dot(n)) < std::sin(Tolerance::tangency)) {
    out.status = RayCast::Status::tangential;
    return out;
  }
  out.status = RayCast::Status::hit;
  return out;
}

std::pair<PhasePoint, TrajectorySegment> next_collision(const Table& table, const PhasePoint& p) {
  const Curve& c = table.curve(p.arc);
  if (p.r < 0.0 || p.r > c.length()) throw DomainError("next_collision: r outside the arc");
  if (!(std::abs(p.phi) < pi / 2)) throw DomainError("next_collision: outgoing ray does not enter the table");

  const Vec2 origin = c.point_at(p.r);
  const Vec2 dir = table.outgoing_direction(p).normalized();
  const RayCast hit = cast_ray(table, origin, dir);
  switch (hit.status) {
    case RayCast::Status::tangential:
      throw TangentialCollision("next_collision: tangential collision");
    case RayCast::Status::corner:
      throw CornerHit("next_collision: trajectory hits a corner");
    case RayCast::Status::escaped:
      throw NoCollision("next_collision: trajectory leaves the tracked arcs", hit.escape_side);
    case RayCast::Status::hit:
      break;
  }

  const Curve& target = table.curve(hit.arc);
  const Vec2 n = target.normal_at(hit.r);
  const Vec2 out = reflect(dir, n);
  const PhasePoint end = table.phase_point(hit.arc, hit.r, out);

  TrajectorySegment seg;
  seg.start = p;
  seg.end = end;
  seg.from = origin;
  seg.to = hit.point;
  seg.length = (hit.point - origin).norm();
  seg.argument = argument_of(origin, hit.point);
  return {end, seg};
}

}  // namespace billiards

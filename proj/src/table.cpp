#include "billiards/errors.hpp"
#include "billiards/geometry.hpp"

#include <cmath>
#include <numbers>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;

bool is_flat_cap(const Curve& c, double x) {
  if (c.kind() != Curve::Kind::segment) return false;
  const Vec2 a = c.from(), b = c.to();
  const double tol = 1e-12;
  return std::abs(a.x() - x) <= tol && std::abs(b.x() - x) <= tol &&
         std::abs(std::abs(a.y() - b.y()) - 1.0) <= tol && std::min(a.y(), b.y()) >= -tol &&
         std::min(a.y(), b.y()) <= tol;
}

}  // namespace

std::string to_string(ArcId id) {
  switch (id) {
    case ArcId::gamma1: return "G1";
    case ArcId::gamma2: return "G2";
    case ArcId::gamma3: return "G3";
    case ArcId::gamma4: return "G4";
    case ArcId::vertical_cap: return "V";
  }
  return "?";
}

std::string to_string(TableClass c) { return c == TableClass::full ? "full" : "semistadium"; }

Table::Table(double wall_left_x, double wall_right_x, Curve cap_left, Curve cap_right, double eps,
             std::optional<Side> flat_side)
    : wall_left_x_(wall_left_x),
      wall_right_x_(wall_right_x),
      bottom_(Curve::segment({wall_left_x, 0.0}, {wall_right_x, 0.0})),
      top_(Curve::segment({wall_right_x, 1.0}, {wall_left_x, 1.0})),
      left_(std::move(cap_left)),
      right_(std::move(cap_right)),
      eps_(eps),
      flat_side_(flat_side) {
  if (!(wall_right_x > wall_left_x)) throw DomainError("table: walls must have positive length");
  if (!(eps > 0.0 && eps < pi / 6)) throw DomainError("table: eps must lie in (0, pi/6)");

  if (flat_side_) {
    const Curve& flat = cap(*flat_side_);
    const double x = *flat_side_ == Side::left ? wall_left_x_ : wall_right_x_;
    if (!is_flat_cap(flat, x))
      throw DomainError("semistadium: the flat cap must be the vertical segment of height 1 at the wall end");
  }

  const Box2 lb = left_.bounds(), rb = right_.bounds();
  const double left_edge = flat_side_ == Side::left ? wall_left_x_ : lb.max().x();
  const double right_edge = flat_side_ == Side::right ? wall_right_x_ : rb.min().x();
  ell_ = right_edge - left_edge;
  if (!(ell_ > 0.0)) throw DomainError("table: caps must be horizontally separated");

  corners_ = {bottom_.start_point(), bottom_.end_point(), top_.start_point(), top_.end_point()};
  for (const Side side : {Side::left, Side::right}) {
    const Curve& c = cap(side);
    corners_.push_back(c.start_point());
    corners_.push_back(c.end_point());
    if (flat_side_ == side) continue;
    const double x = side == Side::left ? wall_left_x_ : wall_right_x_;
    Vec2 lo = c.start_point(), hi = c.end_point();
    if (lo.y() > hi.y()) std::swap(lo, hi);
    const Vec2 bottom_corner(x, 0.0), top_corner(x, 1.0);
    if ((lo - bottom_corner).norm() > Tolerance::position)
      gaps_.push_back({Curve::segment(bottom_corner, lo), side});
    if ((top_corner - hi).norm() > Tolerance::position)
      gaps_.push_back({Curve::segment(hi, top_corner), side});
  }
}

ArcId Table::cap_id(Side side) const {
  if (flat_side_ == side) return ArcId::vertical_cap;
  return side == Side::left ? ArcId::gamma3 : ArcId::gamma4;
}

bool Table::has_arc(ArcId id) const {
  switch (id) {
    case ArcId::gamma1:
    case ArcId::gamma2: return true;
    case ArcId::gamma3: return flat_side_ != Side::left;
    case ArcId::gamma4: return flat_side_ != Side::right;
    case ArcId::vertical_cap: return flat_side_.has_value();
  }
  return false;
}

bool Table::is_cap(ArcId id) const { return has_arc(id) && id != ArcId::gamma1 && id != ArcId::gamma2; }

std::optional<Side> Table::side_of(ArcId id) const {
  if (!is_cap(id)) return std::nullopt;
  if (id == ArcId::vertical_cap) return flat_side_;
  return id == ArcId::gamma3 ? Side::left : Side::right;
}

const Curve& Table::curve(ArcId id) const {
  if (!has_arc(id)) throw UntrackedCollision("arc " + to_string(id) + " is not part of this table");
  switch (id) {
    case ArcId::gamma1: return bottom_;
    case ArcId::gamma2: return top_;
    case ArcId::gamma3: return left_;
    case ArcId::gamma4: return right_;
    case ArcId::vertical_cap: return cap(*flat_side_);
  }
  return bottom_;
}

Vec2 Table::position(const PhasePoint& p) const { return curve(p.arc).point_at(p.r); }

Vec2 Table::outgoing_direction(const PhasePoint& p) const {
  const Curve& c = curve(p.arc);
  return std::cos(p.phi) * c.normal_at(p.r) + std::sin(p.phi) * c.tangent_at(p.r);
}

PhasePoint Table::phase_point(ArcId arc, double r, const Vec2& outgoing) const {
  const Curve& c = curve(arc);
  const Vec2 n = c.normal_at(r), t = c.tangent_at(r);
  return {arc, r, std::atan2(outgoing.dot(t), outgoing.dot(n))};
}

Table Table::with_eps(double eps) const {
  return Table(wall_left_x_, wall_right_x_, left_, right_, eps, flat_side_);
}

Table make_stadium(double length, double width) {
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length / width))
    throw DomainError("stadium: length and width must be positive");
  const double l = length / width;
  const double half_angle = pi / 6;
  Curve left = Curve::arc({0.0, 0.5}, 0.5, pi - half_angle, 2 * half_angle);
  Curve right = Curve::arc({l, 0.5}, 0.5, -half_angle, 2 * half_angle);
  return Table(0.0, l, std::move(left), std::move(right), pi / 6 - eps_margin);
}

Table make_mushroom(double stalk, double radius) {
  if (!(stalk > 0.0)) throw DomainError("mushroom: stalk length must be positive");
  if (!(radius >= 0.25)) throw DomainError("mushroom: cap radius must be at least 1/4");
  // Arc of the half-disk at heights 1/2 +- 1/4: radius * sin(angle) = 1/4.
  const double half_angle = std::asin(std::min(1.0, 0.25 / radius));
  const double eps = std::min(half_angle, pi / 6) - eps_margin;
  Curve flat = Curve::segment({0.0, 1.0}, {0.0, 0.0});
  Curve cap = Curve::arc({stalk, 0.5}, radius, -half_angle, 2 * half_angle);
  return Table(0.0, stalk, std::move(flat), std::move(cap), eps, Side::left);
}

}  // namespace billiards

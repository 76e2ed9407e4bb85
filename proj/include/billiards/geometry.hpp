#pragma once

#include "billiards/curve.hpp"
#include "billiards/errors.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace billiards {

/// Boundary pieces tracked by the billiard map. gamma1/gamma2 are the bottom
/// and top walls, gamma3/gamma4 the left and right caps. A semistadium
/// replaces one of the caps by `vertical_cap`.
enum class ArcId { gamma1, gamma2, gamma3, gamma4, vertical_cap };

enum class TableClass { full, semistadium };

std::string to_string(ArcId id);
std::string to_string(TableClass c);

/// Boundary collision state: arc, arclength position r, reflection angle phi.
///
/// phi is measured from the inward normal, positive towards increasing r:
/// the outgoing direction is cos(phi) * normal + sin(phi) * tangent.
struct PhasePoint {
  ArcId arc = ArcId::gamma1;
  double r = 0.0;
  double phi = 0.0;
};

struct TrajectorySegment {
  PhasePoint start;
  PhasePoint end;
  Vec2 from = Vec2::Zero();
  Vec2 to = Vec2::Zero();
  double argument = 0.0;  // (-pi/2, pi/2]
  double length = 0.0;
};

/// Straight piece closing the gap between a wall end and a tracked cap end.
struct Gap {
  Curve segment;
  Side side;
};

/// A billiard table of class H(eps, l) or H_1/2(eps, l).
///
/// The walls are the horizontal segments y = 0 (gamma1) and y = 1 (gamma2)
/// over [wall_left_x, wall_right_x]. Every boundary curve is oriented
/// counterclockwise around the table, so the interior lies on its left.
/// Immutable after construction.
class Table {
 public:
  /// `flat_side` selects the semistadium class; that cap must then be the
  /// vertical segment of height 1 closing the walls on that side.
  Table(double wall_left_x, double wall_right_x, Curve cap_left, Curve cap_right, double eps,
        std::optional<Side> flat_side = std::nullopt);

  TableClass table_class() const { return flat_side_ ? TableClass::semistadium : TableClass::full; }
  std::optional<Side> flat_side() const { return flat_side_; }

  double ell() const { return ell_; }
  double eps() const { return eps_; }
  double wall_left_x() const { return wall_left_x_; }
  double wall_right_x() const { return wall_right_x_; }

  const Curve& wall_bottom() const { return bottom_; }
  const Curve& wall_top() const { return top_; }
  const Curve& cap(Side side) const { return side == Side::left ? left_ : right_; }
  ArcId cap_id(Side side) const;
  bool is_cap(ArcId id) const;
  bool is_curved_cap(ArcId id) const { return is_cap(id) && id != ArcId::vertical_cap; }
  std::optional<Side> side_of(ArcId id) const;

  bool has_arc(ArcId id) const;
  /// Throws UntrackedCollision for an arc the table does not have.
  const Curve& curve(ArcId id) const;

  const std::vector<Gap>& gaps() const { return gaps_; }
  const std::vector<Vec2>& corners() const { return corners_; }

  Vec2 position(const PhasePoint& p) const;
  Vec2 outgoing_direction(const PhasePoint& p) const;
  PhasePoint phase_point(ArcId arc, double r, const Vec2& outgoing) const;

  Table with_eps(double eps) const;

 private:
  double wall_left_x_;
  double wall_right_x_;
  Curve bottom_;
  Curve top_;
  Curve left_;
  Curve right_;
  double eps_;
  std::optional<Side> flat_side_;
  double ell_ = 0.0;
  std::vector<Gap> gaps_;
  std::vector<Vec2> corners_;
};

/// Outgoing argument after reflecting a line of argument `incoming_arg` at a
/// point whose normal line has argument `normal_arg`. Both must be below pi/6
/// in absolute value.
double reflect_argument(double incoming_arg, double normal_arg);

double argument_of(const Vec2& from, const Vec2& to);
double argument_of(const TrajectorySegment& seg);

/// One step of the billiard map.
std::pair<PhasePoint, TrajectorySegment> next_collision(const Table& table, const PhasePoint& p);

/// Result of casting a ray against the tracked boundary and gap pieces.
struct RayCast {
  enum class Status { hit, tangential, corner, escaped };
  Status status = Status::hit;
  ArcId arc = ArcId::gamma1;
  double r = 0.0;
  double t = 0.0;
  Vec2 point = Vec2::Zero();
  Side escape_side = Side::left;
};

/// First boundary piece met by origin + t*dir, t > 1e-9 (dir normalized).
RayCast cast_ray(const Table& table, const Vec2& origin, const Vec2& dir);

/// Specular reflection of direction `d` at a unit normal `n`.
inline Vec2 reflect(const Vec2& d, const Vec2& n) { return d - 2.0 * d.dot(n) * n; }

// Built-in shapes. Margin kept between the returned eps and the geometric maximum.
inline constexpr double eps_margin = 1e-6;

/// Classical stadium with rectangle length `length` and width `width`,
/// normalized to width 1. The caps are the sub-arcs of the semicircles whose
/// normal arguments lie in [-pi/6, pi/6].
Table make_stadium(double length, double width);

/// Mushroom with a stalk of length `stalk` (height 1) and a cap of radius
/// `radius`: the flat cap is on the left, the tracked cap is the arc of the
/// half-disk with |y - 1/2| <= 1/4.
Table make_mushroom(double stalk, double radius);

}  // namespace billiards

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <optional>
#include <vector>

namespace billiards {

using Vec2 = Eigen::Vector2d;
using Box2 = Eigen::AlignedBox2d;

/// Numerical tolerances shared by the collision code.
struct Tolerance {
  static constexpr double tangency = 1e-9;  // rad
  static constexpr double corner = 1e-9;    // length units
  static constexpr double position = 1e-12; // length units
};

/// Argument of the line spanned by `v`, normalized to (-pi/2, pi/2].
double line_argument(const Vec2& v);

/// Counterclockwise rotation by a right angle.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

struct RayHit {
  double t = 0.0;  // ray parameter (unit direction, so also the distance)
  double s = 0.0;  // arclength position on the curve
  Vec2 point = Vec2::Zero();
};

/// A C1 boundary arc parametrized by arclength s in [0, length()].
///
/// Segments and circular arcs answer every query in closed form. Sampled
/// curves are cubic Hermite splines through the given samples and unit
/// tangents; their arclength is integrated with Gauss-Legendre quadrature.
/// The interior side is fixed per curve: the inward normal is the tangent
/// rotated by +90 degrees when `interior_on_left()`, by -90 otherwise.
class Curve {
 public:
  enum class Kind { segment, arc, sampled };

  static constexpr double default_max_turn = 0.2;  // rad between adjacent samples

  static Curve segment(const Vec2& from, const Vec2& to, bool interior_left = true);

  /// Circular arc starting at polar angle `start_angle` and sweeping `sweep`
  /// radians (positive = counterclockwise), |sweep| in (0, 2*pi].
  static Curve arc(const Vec2& center, double radius, double start_angle, double sweep,
                   bool interior_left = true);

  static Curve sampled(std::vector<Vec2> points, std::vector<Vec2> tangents,
                       bool interior_left = true, double max_turn = default_max_turn);

  Kind kind() const { return kind_; }
  double length() const { return length_; }
  bool interior_on_left() const { return interior_left_; }

  Vec2 point_at(double s) const;
  Vec2 tangent_at(double s) const;
  Vec2 normal_at(double s) const;
  double normal_argument(double s) const { return line_argument(normal_at(s)); }

  Vec2 start_point() const { return point_at(0.0); }
  Vec2 end_point() const { return point_at(length_); }

  /// First intersection with the ray origin + t*dir (|dir| = 1), t > t_min.
  std::optional<RayHit> intersect(const Vec2& origin, const Vec2& dir, double t_min) const;

  Box2 bounds() const;

  /// Mirror image across the vertical line x = x0; keeps the direction of s.
  Curve mirrored_x(double x0) const;
  Curve with_interior(bool interior_left) const;

  // Kind-specific data.
  const Vec2& from() const { return a_; }
  const Vec2& to() const { return b_; }
  const Vec2& center() const { return a_; }
  double radius() const { return radius_; }
  double start_angle() const { return start_angle_; }
  double sweep() const { return sweep_; }
  const std::vector<Vec2>& samples() const { return points_; }
  const std::vector<Vec2>& sample_tangents() const { return tangents_; }

 private:
  Curve() = default;

  // Hermite piece helpers for sampled curves.
  Vec2 piece_point(std::size_t i, double u) const;
  Vec2 piece_derivative(std::size_t i, double u) const;
  double piece_arclength(std::size_t i, double u) const;
  double piece_parameter(std::size_t i, double s_local) const;
  std::size_t piece_index(double s) const;

  Kind kind_ = Kind::segment;
  bool interior_left_ = true;
  double length_ = 0.0;

  Vec2 a_ = Vec2::Zero();  // segment start or arc center
  Vec2 b_ = Vec2::Zero();  // segment end
  double radius_ = 0.0;
  double start_angle_ = 0.0;
  double sweep_ = 0.0;

  std::vector<Vec2> points_;
  std::vector<Vec2> tangents_;
  std::vector<double> cumulative_;  // arclength at each sample
};

}  // namespace billiards

#include "billiards/curve.hpp"

#include "billiards/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;

// Parameter slack accepted beyond the ends of a piece so that rays through a
// junction of two pieces are never lost to rounding.
constexpr double end_slack = 1e-12;

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> gl_nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> gl_weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

double wrap_two_pi(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a < 0.0) a += 2.0 * pi;
  return a;
}

Vec2 mirror_point(const Vec2& p, double x0) { return {2.0 * x0 - p.x(), p.y()}; }

}  // namespace

double line_argument(const Vec2& v) {
  double a = std::atan2(v.y(), v.x());
  if (a > pi / 2) a -= pi;
  if (a <= -pi / 2) a += pi;
  return a;
}

Curve Curve::segment(const Vec2& from, const Vec2& to, bool interior_left) {
  const double len = (to - from).norm();
  if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("segment: endpoints must be distinct");
  Curve c;
  c.kind_ = Kind::segment;
  c.interior_left_ = interior_left;
  c.a_ = from;
  c.b_ = to;
  c.length_ = len;
  return c;
}

Curve Curve::arc(const Vec2& center, double radius, double start_angle, double sweep,
                 bool interior_left) {
  if (!(radius > 0.0)) throw DomainError("arc: radius must be positive");
  if (!(std::abs(sweep) > 0.0) || std::abs(sweep) > 2.0 * pi + 1e-15)
    throw DomainError("arc: sweep must be nonzero and at most 2*pi");
  Curve c;
  c.kind_ = Kind::arc;
  c.interior_left_ = interior_left;
  c.a_ = center;
  c.radius_ = radius;
  c.start_angle_ = start_angle;
  c.sweep_ = sweep;
  c.length_ = radius * std::abs(sweep);
  return c;
}

Curve Curve::sampled(std::vector<Vec2> points, std::vector<Vec2> tangents, bool interior_left,
                     double max_turn) {
  if (points.size() < 2) throw DomainError("sampled curve: need at least two samples");
  if (points.size() != tangents.size())
    throw DomainError("sampled curve: one tangent per sample required");
  for (auto& t : tangents) {
    const double n = t.norm();
    if (std::abs(n - 1.0) > 1e-9) throw DomainError("sampled curve: tangents must be unit vectors");
    t /= n;
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Vec2 chord = points[i + 1] - points[i];
    if (!(chord.norm() > 0.0)) throw DomainError("sampled curve: consecutive samples coincide");
    const double turn = std::atan2(cross(tangents[i], tangents[i + 1]), tangents[i].dot(tangents[i + 1]));
    if (std::abs(turn) >= max_turn)
      throw DomainError("sampled curve: tangent turns too fast between samples");
    if (tangents[i].dot(chord) <= 0.0 || tangents[i + 1].dot(chord) <= 0.0)
      throw DomainError("sampled curve: tangents disagree with sample order");
  }

  Curve c;
  c.kind_ = Kind::sampled;
  c.interior_left_ = interior_left;
  c.points_ = std::move(points);
  c.tangents_ = std::move(tangents);
  c.cumulative_.assign(c.points_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < c.points_.size(); ++i)
    c.cumulative_[i + 1] = c.cumulative_[i] + c.piece_arclength(i, 1.0);
  c.length_ = c.cumulative_.back();
  return c;
}

Vec2 Curve::piece_point(std::size_t i, double u) const {
  const double h = (points_[i + 1] - points_[i]).norm();
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * points_[i] + (u3 - 2 * u2 + u) * h * tangents_[i] +
         (-2 * u3 + 3 * u2) * points_[i + 1] + (u3 - u2) * h * tangents_[i + 1];
}

Vec2 Curve::piece_derivative(std::size_t i, double u) const {
  const double h = (points_[i + 1] - points_[i]).norm();
  const double u2 = u * u;
  return (6 * u2 - 6 * u) * points_[i] + (3 * u2 - 4 * u + 1) * h * tangents_[i] +
         (-6 * u2 + 6 * u) * points_[i + 1] + (3 * u2 - 2 * u) * h * tangents_[i + 1];
}

double Curve::piece_arclength(std::size_t i, double u) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < gl_nodes.size(); ++k) {
    const double x = 0.5 * u * (gl_nodes[k] + 1.0);
    sum += gl_weights[k] * piece_derivative(i, x).norm();
  }
  return 0.5 * u * sum;
}

double Curve::piece_parameter(std::size_t i, double s_local) const {
  const double total = cumulative_[i + 1] - cumulative_[i];
  if (s_local <= 0.0) return 0.0;
  if (s_local >= total) return 1.0;
  double lo = 0.0, hi = 1.0;
  double u = s_local / total;
  for (int it = 0; it < 50; ++it) {
    const double f = piece_arclength(i, u) - s_local;
    if (std::abs(f) <= 1e-15) break;
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / piece_derivative(i, u).norm();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return u;
}

std::size_t Curve::piece_index(double s) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return std::min(i, points_.size() - 2);
}

Vec2 Curve::point_at(double s) const {
  s = std::clamp(s, 0.0, length_);
  switch (kind_) {
    case Kind::segment:
      return a_ + (b_ - a_) * (s / length_);
    case Kind::arc: {
      const double th = start_angle_ + std::copysign(s / radius_, sweep_);
      return a_ + radius_ * Vec2(std::cos(th), std::sin(th));
    }
    case Kind::sampled: {
      const std::size_t i = piece_index(s);
      return piece_point(i, piece_parameter(i, s - cumulative_[i]));
    }
  }
  return Vec2::Zero();
}

Vec2 Curve::tangent_at(double s) const {
  s = std::clamp(s, 0.0, length_);
  switch (kind_) {
    case Kind::segment:
      return (b_ - a_) / length_;
    case Kind::arc: {
      const double th = start_angle_ + std::copysign(s / radius_, sweep_);
      return std::copysign(1.0, sweep_) * Vec2(-std::sin(th), std::cos(th));
    }
    case Kind::sampled: {
      const std::size_t i = piece_index(s);
      return piece_derivative(i, piece_parameter(i, s - cumulative_[i])).normalized();
    }
  }
  return Vec2::UnitX();
}

Vec2 Curve::normal_at(double s) const {
  const Vec2 n = perp(tangent_at(s));
  return interior_left_ ? n : Vec2(-n);
}

std::optional<RayHit> Curve::intersect(const Vec2& origin, const Vec2& dir, double t_min) const {
  switch (kind_) {
    case Kind::segment: {
      const Vec2 e = b_ - a_;
      const double denom = cross(dir, e);
      if (denom == 0.0) return std::nullopt;
      const Vec2 w = a_ - origin;
      const double t = cross(w, e) / denom;
      const double u = cross(w, dir) / denom;
      if (!(t > t_min) || u < -end_slack || u > 1.0 + end_slack) return std::nullopt;
      const double uc = std::clamp(u, 0.0, 1.0);
      return RayHit{t, uc * length_, a_ + uc * e};
    }
    case Kind::arc: {
      const Vec2 w = origin - a_;
      const double b = dir.dot(w);
      const double c = w.squaredNorm() - radius_ * radius_;
      double disc = b * b - c;
      // A touching line can come out slightly negative after rounding.
      const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * (b * b + std::abs(c) + radius_ * radius_);
      if (disc < -rounding) return std::nullopt;
      disc = std::max(disc, 0.0);
      const double sq = std::sqrt(disc);
      // Numerically stable pair of roots, then ascending order.
      const double q = -(b + std::copysign(sq, b));
      double t1 = q, t2 = (q != 0.0) ? c / q : 0.0;
      if (t1 > t2) std::swap(t1, t2);
      const double angle_slack = end_slack / std::max(radius_, 1e-300) + 1e-15;
      for (const double t : {t1, t2}) {
        if (!(t > t_min)) continue;
        const Vec2 p = origin + t * dir;
        const double th = std::atan2(p.y() - a_.y(), p.x() - a_.x());
        double delta = wrap_two_pi(std::copysign(1.0, sweep_) * (th - start_angle_));
        const double span = std::abs(sweep_);
        if (delta > span + angle_slack) {
          if (delta - 2.0 * pi >= -angle_slack) delta = 0.0;
          else continue;
        }
        delta = std::clamp(delta, 0.0, span);
        return RayHit{t, delta * radius_, point_at(delta * radius_)};
      }
      return std::nullopt;
    }
    case Kind::sampled: {
      constexpr int substeps = 8;
      std::optional<RayHit> best;
      auto side = [&](std::size_t i, double u) { return cross(dir, piece_point(i, u) - origin); };
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        double u_prev = 0.0, f_prev = side(i, 0.0);
        for (int k = 1; k <= substeps; ++k) {
          const double u_next = static_cast<double>(k) / substeps;
          const double f_next = side(i, u_next);
          if ((f_prev <= 0.0 && f_next >= 0.0) || (f_prev >= 0.0 && f_next <= 0.0)) {
            double lo = u_prev, hi = u_next, flo = f_prev;
            if (f_prev == 0.0) hi = lo;
            else if (f_next == 0.0) lo = hi;
            for (int it = 0; it < 200 && lo < hi; ++it) {
              if ((piece_point(i, hi) - piece_point(i, lo)).norm() <= 0.1 * Tolerance::position) break;
              const double mid = 0.5 * (lo + hi);
              const double fm = side(i, mid);
              if (fm == 0.0) { lo = hi = mid; break; }
              if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; }
              else hi = mid;
            }
            const double u = 0.5 * (lo + hi);
            const Vec2 p = piece_point(i, u);
            const double t = (p - origin).dot(dir);
            if (t > t_min && (!best || t < best->t))
              best = RayHit{t, cumulative_[i] + piece_arclength(i, u), p};
          }
          u_prev = u_next;
          f_prev = f_next;
        }
      }
      return best;
    }
  }
  return std::nullopt;
}

Box2 Curve::bounds() const {
  Box2 box;
  box.setEmpty();
  switch (kind_) {
    case Kind::segment:
      box.extend(a_);
      box.extend(b_);
      break;
    case Kind::arc: {
      box.extend(start_point());
      box.extend(end_point());
      const double span = std::abs(sweep_);
      for (int k = 0; k < 4; ++k) {
        const double th = k * pi / 2;
        const double delta = wrap_two_pi(std::copysign(1.0, sweep_) * (th - start_angle_));
        if (delta <= span) box.extend(Vec2(a_ + radius_ * Vec2(std::cos(th), std::sin(th))));
      }
      break;
    }
    case Kind::sampled:
      for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        for (int k = 0; k <= 32; ++k) box.extend(piece_point(i, k / 32.0));
      break;
  }
  return box;
}

Curve Curve::mirrored_x(double x0) const {
  Curve c = *this;
  c.interior_left_ = !interior_left_;
  switch (kind_) {
    case Kind::segment:
      c.a_ = mirror_point(a_, x0);
      c.b_ = mirror_point(b_, x0);
      break;
    case Kind::arc:
      c.a_ = mirror_point(a_, x0);
      c.start_angle_ = pi - start_angle_;
      c.sweep_ = -sweep_;
      break;
    case Kind::sampled:
      for (auto& p : c.points_) p = mirror_point(p, x0);
      for (auto& t : c.tangents_) t.x() = -t.x();
      break;
  }
  return c;
}

Curve Curve::with_interior(bool interior_left) const {
  Curve c = *this;
  c.interior_left_ = interior_left;
  return c;
}

}  // namespace billiards

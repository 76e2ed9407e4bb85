#include "billiards/unfolding.hpp"

#include "billiards/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace billiards {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_levels_scanned = 1 << 20;

bool odd(int k) { return (k & 1) != 0; }

Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

struct FlightEvent {
  enum class Kind { wall, midline } kind;
  double t;
  Vec2 lifted;
  int level_after;  // for wall events
  ArcId wall;       // for wall events
};

// Wall crossings and flat-cap crossings of the lifted segment from -> to, in
// order along the flight.
std::vector<FlightEvent> flight_events(const LiftFrame& frame, const Vec2& from, const Vec2& to) {
  std::vector<FlightEvent> events;
  const Vec2 delta = to - from;
  const double len = delta.norm();
  const Vec2 d = delta / len;

  if (d.y() != 0.0) {
    const double y_lo = std::min(from.y(), to.y()), y_hi = std::max(from.y(), to.y());
    for (double n = std::ceil(y_lo); n <= y_hi; n += 1.0) {
      if (n == from.y() || n == to.y()) continue;
      const double t = (n - from.y()) / d.y();
      const int k = static_cast<int>(n);
      FlightEvent ev{FlightEvent::Kind::wall, t, from + t * d, 0, odd(k) ? ArcId::gamma2 : ArcId::gamma1};
      ev.level_after = d.y() < 0.0 ? 1 - k : -k;
      events.push_back(ev);
    }
  }
  if (const auto mid = frame.midline_x()) {
    if ((from.x() - *mid) * (to.x() - *mid) < 0.0) {
      const double t = (*mid - from.x()) / d.x();
      events.push_back({FlightEvent::Kind::midline, t, from + t * d, 0, ArcId::vertical_cap});
    }
  }
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  return events;
}

bool near_corner(const Table& table, const Vec2& p) {
  for (const Vec2& c : table.corners())
    if ((c - p).norm() < Tolerance::corner) return true;
  return false;
}

double segment_position(const Curve& seg, const Vec2& p) {
  const Vec2 e = seg.to() - seg.from();
  return std::clamp((p - seg.from()).dot(e) / e.norm(), 0.0, seg.length());
}

}  // namespace

LiftFrame::LiftFrame(const Table& table)
    : table_(table), left_(table.cap(Side::left)), right_(table.cap(Side::right)) {
  wall_left_x_ = table.wall_left_x();
  wall_right_x_ = table.wall_right_x();
  ell_ = table.ell();

  std::vector<Gap> gaps = table.gaps();
  if (const auto flat = table.flat_side()) {
    const double x_flat = *flat == Side::left ? wall_left_x_ : wall_right_x_;
    midline_ = x_flat;
    home_ = opposite(*flat);
    const Curve& curved = table.cap(home_);
    if (*flat == Side::left) {
      left_ = curved.mirrored_x(x_flat);
      wall_left_x_ = 2.0 * x_flat - wall_right_x_;
    } else {
      right_ = curved.mirrored_x(x_flat);
      wall_right_x_ = 2.0 * x_flat - wall_left_x_;
    }
    const std::size_t n = gaps.size();
    for (std::size_t i = 0; i < n; ++i)
      gaps.push_back({gaps[i].segment.mirrored_x(x_flat), *flat});
    ell_ = 2.0 * table.ell();
  }

  for (const Side side : {Side::left, Side::right}) {
    SideChain& chain = chains_[side == Side::left ? 0 : 1];
    const Curve& c = cap(side);
    chain.cap_upwards = c.start_point().y() < c.end_point().y();
    Box2 box = c.bounds();
    for (const Gap& g : gaps) {
      if (g.side != side) continue;
      box.extend(g.segment.bounds());
      if (g.segment.start_point().y() == 0.0) chain.gap_low = g.segment;
      else chain.gap_high = g.segment;
    }
    chain.x_min = box.min().x();
    chain.x_max = box.max().x();
  }
}

int LiftFrame::level_of(double lifted_y) { return static_cast<int>(std::floor(-lifted_y)) + 1; }

Vec2 LiftFrame::lift(int level, const Vec2& p) {
  return odd(level) ? Vec2(p.x(), -p.y() - level + 1) : Vec2(p.x(), p.y() - level);
}

Vec2 LiftFrame::lift_vector(int level, const Vec2& v) {
  return odd(level) ? Vec2(v.x(), -v.y()) : v;
}

Vec2 LiftFrame::unlift(int level, const Vec2& q) {
  return odd(level) ? Vec2(q.x(), -q.y() - level + 1) : Vec2(q.x(), q.y() + level);
}

std::optional<LiftFrame::ChainHit> LiftFrame::cast(const Vec2& origin, const Vec2& dir, Side side,
                                                   double t_min) const {
  const SideChain& chain = chains_[side == Side::left ? 0 : 1];
  if (std::abs(dir.x()) < 1e-300) return std::nullopt;
  double t0 = (chain.x_min - origin.x()) / dir.x();
  double t1 = (chain.x_max - origin.x()) / dir.x();
  if (t0 > t1) std::swap(t0, t1);
  if (t1 < 0.0) return std::nullopt;
  t0 = std::max(t0, 0.0);
  const double ya = origin.y() + t0 * dir.y(), yb = origin.y() + t1 * dir.y();
  const double y_min = std::min(ya, yb), y_max = std::max(ya, yb);
  if (y_max - y_min > max_levels_scanned) return std::nullopt;
  const int first = level_of(y_max) - 1, last = level_of(y_min) + 1;

  const Curve& c = cap(side);
  const double cap_lo = chain.gap_low ? 1.0 : 0.0;
  const double cap_hi = chain.gap_high ? 2.0 : 3.0;

  std::optional<ChainHit> best;
  for (int level = first; level <= last; ++level) {
    const Vec2 o = unlift(level, origin);
    const Vec2 d = lift_vector(level, dir);
    auto consider = [&](const Curve& piece, Piece kind) {
      const auto hit = piece.intersect(o, d, t_min);
      if (!hit || (best && hit->t >= best->t)) return;
      double u = 0.0;
      switch (kind) {
        case Piece::gap_low: u = hit->s / piece.length(); break;
        case Piece::gap_high: u = 2.0 + hit->s / piece.length(); break;
        case Piece::cap: {
          const double frac = hit->s / piece.length();
          u = cap_lo + (cap_hi - cap_lo) * (chain.cap_upwards ? frac : 1.0 - frac);
          break;
        }
      }
      ChainHit h;
      h.side = side;
      h.level = level;
      h.piece = kind;
      h.s = hit->s;
      h.t = hit->t;
      h.sigma = odd(level) ? 3.0 * level + u : 3.0 * level + 3.0 - u;
      h.point = lift(level, hit->point);
      best = h;
    };
    consider(c, Piece::cap);
    if (chain.gap_low) consider(*chain.gap_low, Piece::gap_low);
    if (chain.gap_high) consider(*chain.gap_high, Piece::gap_high);
  }
  return best;
}

std::pair<double, double> LiftFrame::cap_sigma_range(Side side, int level) const {
  const SideChain& chain = chains_[side == Side::left ? 0 : 1];
  const double lo = chain.gap_low ? 1.0 : 0.0;
  const double hi = chain.gap_high ? 2.0 : 3.0;
  if (odd(level)) return {3.0 * level + lo, 3.0 * level + hi};
  return {3.0 * level + 3.0 - hi, 3.0 * level + 3.0 - lo};
}

ArcId LiftFrame::real_cap(Side frame_side) const {
  if (midline_) return table_.cap_id(home_);
  return table_.cap_id(frame_side);
}

bool LiftFrame::on_mirror_half(const Vec2& p) const {
  if (!midline_) return false;
  return home_ == Side::right ? p.x() < *midline_ : p.x() > *midline_;
}

Vec2 LiftFrame::fold_point(const Vec2& p) const {
  return on_mirror_half(p) ? Vec2(2.0 * *midline_ - p.x(), p.y()) : p;
}

Vec2 LiftFrame::fold_direction(const Vec2& p, const Vec2& d) const {
  return on_mirror_half(p) ? Vec2(-d.x(), d.y()) : d;
}

LiftedSegment unfold_flight(const Table& table, const PhasePoint& start, double outgoing_arg) {
  if (!table.is_curved_cap(start.arc)) throw DomainError("unfold_flight: flights start on a curved cap");
  if (!(std::abs(outgoing_arg) < pi / 2)) throw DomainError("unfold_flight: |argument| must be below pi/2");

  const LiftFrame frame(table);
  const Side from_side = *table.side_of(start.arc);  // real and frame side coincide for the start
  const Side to_side = opposite(from_side);
  const Curve& cap = table.curve(start.arc);
  if (start.r < 0.0 || start.r > cap.length()) throw DomainError("unfold_flight: r outside the cap");

  const Vec2 p = cap.point_at(start.r);
  Vec2 d(std::cos(outgoing_arg), std::sin(outgoing_arg));
  if (to_side == Side::left) d = -d;
  if (!(d.dot(cap.normal_at(start.r)) > 0.0))
    throw DomainError("unfold_flight: outgoing ray does not enter the table");

  auto hit = frame.cast(p, d, to_side);
  const auto own = frame.cast(p, d, from_side);
  if (own && (!hit || own->t < hit->t)) hit = own;
  if (!hit) throw NoCollision("unfold_flight: flight misses every lifted cap", to_side);

  const Vec2 frame_hit = LiftFrame::unlift(hit->level, hit->point);
  if (near_corner(table, frame.fold_point(frame_hit)))
    throw CornerHit("unfold_flight: flight ends at a corner");
  if (hit->piece != LiftFrame::Piece::cap) {
    const Side real_side = frame.midline_x() ? frame.home_side() : hit->side;
    throw NoCollision("unfold_flight: flight leaves the tracked arcs", real_side);
  }
  const Vec2 n = frame.cap(hit->side).normal_at(hit->s);
  if (std::abs(LiftFrame::lift_vector(hit->level, d).dot(n)) < std::sin(Tolerance::tangency))
    throw TangentialCollision("unfold_flight: tangential cap collision");

  LiftedSegment seg;
  seg.source = {from_side == Side::left ? ArcId::gamma3 : ArcId::gamma4, 0, start.r};
  seg.target = {hit->side == Side::left ? ArcId::gamma3 : ArcId::gamma4, hit->level, hit->s};
  seg.argument = line_argument(d);
  seg.lifted_from = p;
  seg.lifted_to = hit->point;

  for (const FlightEvent& ev : flight_events(frame, p, hit->point)) {
    if (ev.kind == FlightEvent::Kind::midline) {
      seg.crossed_midline = true;
      const Vec2 q = LiftFrame::unlift(LiftFrame::level_of(ev.lifted.y()), ev.lifted);
      if (near_corner(table, frame.fold_point(q))) throw CornerHit("unfold_flight: flight hits a corner");
      continue;
    }
    const Vec2 q = frame.fold_point(LiftFrame::unlift(ev.level_after, ev.lifted));
    if (near_corner(table, q)) throw CornerHit("unfold_flight: flight hits a corner");
    seg.wall_collisions.push_back({ev.wall, segment_position(table.curve(ev.wall), q)});
  }
  return seg;
}

std::vector<PhasePoint> fold_flight(const Table& table, const LiftedSegment& seg) {
  const LiftFrame frame(table);
  const Vec2 delta = seg.lifted_to - seg.lifted_from;
  const Vec2 d = delta.normalized();

  std::vector<PhasePoint> out;
  int level = seg.source.level;
  bool mirrored = false;
  auto real_dir = [&] {
    const Vec2 v = LiftFrame::lift_vector(level, d);
    return mirrored ? Vec2(-v.x(), v.y()) : v;
  };

  for (const FlightEvent& ev : flight_events(frame, seg.lifted_from, seg.lifted_to)) {
    const Vec2 incoming = real_dir();
    if (ev.kind == FlightEvent::Kind::midline) {
      const Vec2 q = frame.fold_point(LiftFrame::unlift(level, ev.lifted));
      const Curve& flat = table.curve(ArcId::vertical_cap);
      const double r = segment_position(flat, q);
      out.push_back(table.phase_point(ArcId::vertical_cap, r, reflect(incoming, flat.normal_at(r))));
      mirrored = !mirrored;
      continue;
    }
    const Vec2 q = frame.fold_point(LiftFrame::unlift(ev.level_after, ev.lifted));
    const Curve& wall = table.curve(ev.wall);
    const double r = segment_position(wall, q);
    out.push_back(table.phase_point(ev.wall, r, reflect(incoming, wall.normal_at(r))));
    level = ev.level_after;
  }

  const ArcId arc = frame.real_cap(seg.target.cap == ArcId::gamma3 ? Side::left : Side::right);
  const Curve& cap = table.curve(arc);
  out.push_back(table.phase_point(arc, seg.target.r, reflect(real_dir(), cap.normal_at(seg.target.r))));
  return out;
}

std::vector<int> level_differences(const Table& table, const std::vector<PhasePoint>& orbit) {
  for (const PhasePoint& p : orbit)
    if (!table.has_arc(p.arc)) throw DomainError("level_differences: collision outside the tracked arcs");
  if (orbit.empty() || !table.is_curved_cap(orbit.front().arc) || !table.is_curved_cap(orbit.back().arc))
    throw DomainError("level_differences: orbit must start and end on a curved cap");

  std::vector<int> out;
  std::optional<ArcId> first_wall, last_wall;
  int walls = 0, flats = 0;
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    const ArcId a = orbit[i].arc;
    if (table.is_curved_cap(a)) {
      out.push_back(first_wall == ArcId::gamma2 ? -walls : walls);
      first_wall.reset();
      last_wall.reset();
      walls = flats = 0;
    } else if (a == ArcId::vertical_cap) {
      if (++flats > 1) throw DomainError("level_differences: two flat-cap collisions in one block");
    } else {
      if (last_wall == a) throw DomainError("level_differences: consecutive collisions with the same wall");
      if (!first_wall) first_wall = a;
      last_wall = a;
      ++walls;
    }
  }
  return out;
}

}  // namespace billiards

#pragma once

#include "billiards/geometry.hpp"

#include <optional>
#include <vector>

namespace billiards {

/// The unfolded (lifted) picture of a table.
///
/// Reflections off the walls are replaced by straight flights through the
/// copies of the table stacked in levels: level k occupies the band
/// -k <= Y <= 1 - k, even levels are translates and odd levels are mirror
/// images. Going down a level means crossing a wall, so a flight whose first
/// wall collision is gamma1 has a positive level difference.
///
/// A semistadium is first doubled across its flat cap: the frame then holds
/// the curved cap and its mirror image, 2l apart, and the flat cap becomes a
/// transparent midline.
class LiftFrame {
 public:
  explicit LiftFrame(const Table& table);

  const Table& table() const { return table_; }

  /// Caps in frame coordinates (level 0).
  const Curve& cap(Side side) const { return side == Side::left ? left_ : right_; }
  /// Side of the frame holding the real curved cap a flight starts from.
  Side home_side() const { return home_; }
  /// Horizontal distance between the frame caps (2l for a semistadium).
  double ell() const { return ell_; }
  std::optional<double> midline_x() const { return midline_; }
  double wall_left_x() const { return wall_left_x_; }
  double wall_right_x() const { return wall_right_x_; }

  static int level_of(double lifted_y);
  static Vec2 lift(int level, const Vec2& p);
  static Vec2 lift_vector(int level, const Vec2& v);
  static Vec2 unlift(int level, const Vec2& lifted);

  enum class Piece { gap_low, cap, gap_high };

  struct ChainHit {
    Side side = Side::left;
    int level = 0;
    Piece piece = Piece::cap;
    double s = 0.0;      // arclength on the hit piece
    double t = 0.0;      // ray parameter
    double sigma = 0.0;  // continuous coordinate along the lifted chain, increasing downwards
    Vec2 point = Vec2::Zero();  // lifted coordinates
  };

  /// First hit of a lifted ray with the lifted copies of one side's cap and gaps.
  std::optional<ChainHit> cast(const Vec2& origin, const Vec2& dir, Side side, double t_min = 1e-9) const;

  /// Range of sigma covered by the lifted cap of `side` at `level`.
  std::pair<double, double> cap_sigma_range(Side side, int level) const;

  /// Real-table arc for a frame cap.
  ArcId real_cap(Side frame_side) const;
  /// Maps a frame point (level 0 coordinates) back to the real table.
  Vec2 fold_point(const Vec2& frame_point) const;
  Vec2 fold_direction(const Vec2& frame_point, const Vec2& frame_dir) const;
  bool on_mirror_half(const Vec2& frame_point) const;

 private:
  struct SideChain {
    std::optional<Curve> gap_low;
    std::optional<Curve> gap_high;
    bool cap_upwards = true;  // s increases with y on the cap
    double x_min = 0.0, x_max = 0.0;
  };

  Table table_;
  Curve left_;
  Curve right_;
  SideChain chains_[2];
  Side home_ = Side::left;
  double ell_ = 0.0;
  std::optional<double> midline_;
  double wall_left_x_ = 0.0;
  double wall_right_x_ = 0.0;
};

/// Where a lifted flight starts or ends: frame cap, level and arclength.
struct LiftedEnd {
  ArcId cap = ArcId::gamma3;  // gamma3 = left frame cap, gamma4 = right frame cap
  int level = 0;
  double r = 0.0;
};

struct WallCollision {
  ArcId wall = ArcId::gamma1;
  double position = 0.0;  // arclength on the wall
};

/// One straight flight between caps in the lifted table.
struct LiftedSegment {
  LiftedEnd source;
  LiftedEnd target;
  double argument = 0.0;
  std::vector<WallCollision> wall_collisions;
  bool crossed_midline = false;
  Vec2 lifted_from = Vec2::Zero();
  Vec2 lifted_to = Vec2::Zero();

  int level_difference() const { return target.level - source.level; }
};

/// Lifted flight leaving the curved cap point `start` along the line of
/// argument `outgoing_arg`, oriented towards the opposite side of the frame.
LiftedSegment unfold_flight(const Table& table, const PhasePoint& start, double outgoing_arg);

/// Real collisions realized by a lifted flight, ending with the cap hit.
std::vector<PhasePoint> fold_flight(const Table& table, const LiftedSegment& seg);

/// Signed wall-collision count of every cap-to-cap block of an orbit.
/// Flat-cap collisions of a semistadium are transparent.
std::vector<int> level_differences(const Table& table, const std::vector<PhasePoint>& orbit);

}  // namespace billiards

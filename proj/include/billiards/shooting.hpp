#pragma once

#include "billiards/geometry.hpp"
#include "billiards/unfolding.hpp"

#include <optional>
#include <vector>

namespace billiards {

/// A one-parameter family of trajectories arriving at the lifted cap of
/// `side` at `level`.
///
/// The family is the horizontal beam hitting the home cap, parametrized by
/// arclength t on that cap, followed by the flights with level differences
/// `history`. Only the interval [a, b] and the history are stored; points
/// are recomputed on demand.
struct CurveBundle {
  Side home = Side::left;
  Side side = Side::left;
  int level = 0;
  double a = 0.0;
  double b = 0.0;
  std::vector<int> history;

  ArcId cap_id() const { return side == Side::left ? ArcId::gamma3 : ArcId::gamma4; }
};

/// Lifted arrival of one bundle member.
struct BundlePoint {
  Side side = Side::left;
  int level = 0;
  double s = 0.0;             // arclength on the frame cap
  Vec2 point = Vec2::Zero();  // lifted
  Vec2 incoming = Vec2::Zero();
};

/// Horizontal beam on the home cap, covering all of it.
CurveBundle initial_bundle(const Table& table);

/// Arrival of parameter t, or nothing when some flight of the history leaves
/// the expected lifted cap.
std::optional<BundlePoint> evaluate_bundle(const LiftFrame& frame, const CurveBundle& bundle, double t);

/// Sub-bundle whose image is a full bundle on the opposite lifted cap at
/// level + target_j.
CurveBundle refine_bundle(const Table& table, const CurveBundle& bundle, int target_j);

/// Finite orbit whose cap-to-cap blocks have the level differences `ks`,
/// starting and ending on a curved cap.
std::vector<PhasePoint> realize_itinerary(const Table& table, const std::vector<int>& ks, double eps, int N);

}  // namespace billiards

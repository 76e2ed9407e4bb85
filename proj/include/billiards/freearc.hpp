#pragma once

#include "billiards/geometry.hpp"

#include <utility>
#include <vector>

namespace billiards {

struct FreeArcWitness {
  double r = 0.0;
  double angle = 0.0;
  std::string reason;
};

/// Sampled certificate that a cap is eps-free. Never proof-grade:
/// `rigorous` is always false.
struct FreeArcCertificate {
  ArcId arc = ArcId::gamma3;
  double eps = 0.0;
  bool regular = false;        // C1 with the sampled-curve regularity gate
  bool markers_found = false;
  double p_plus = 0.0;
  double p_minus = 0.0;
  bool disjoint_from_walls = false;
  double position_step = 0.0;
  double angle_step = 0.0;
  std::size_t samples_checked = 0;
  bool rigorous = false;
  std::vector<FreeArcWitness> failures;  // ordered by position, then angle

  bool passed() const { return regular && markers_found && disjoint_from_walls && failures.empty(); }
};

/// Arclength positions where the normal argument of `curve` equals +eps and
/// -eps (or lies beyond them). Throws NoMarker when the normal arguments of
/// the arc do not reach both.
std::pair<double, double> find_marker_points(const Curve& curve, double eps);

struct PointCheck {
  bool passed = true;
  FreeArcWitness witness;
  std::size_t angles_checked = 0;
};

/// Checks that every flow trajectory leaving cap point r with argument in
/// [-eps, eps] (step <= angle_step) reaches the opposite cap first.
PointCheck verify_point_free(const Table& table, ArcId cap, double r, double eps, double angle_step);

/// Default grids: arc length / 512 and eps / 256.
FreeArcCertificate verify_arc_free(const Table& table, ArcId cap, double eps, double position_step = 0.0,
                                   double angle_step = 0.0);

/// Largest N >= 0 with N + 1 <= l*tan(eps) (2l*tan(eps) for semistadia), or
/// -1 if there is none.
int max_symbol_bound(double ell, double eps, TableClass table_class);

}  // namespace billiards

#include "cq/geometry.hpp"

#include <algorithm>
#include <limits>

namespace cq {

double normal_foot(const ConstraintPoint& cp, const TriangleConfig& cfg) {
  const Point2 u = cfg.side_direction(cp.side);
  const Point2& p = cp.position;
  if (p.y == 0.0) return p.x;  // the point sits on the base line itself
  if (u.x == 0.0) {
    // Side perpendicular to the base: the normal is horizontal and never
    // reaches y = 0.
    return std::numeric_limits<double>::infinity();
  }
  return p.x + u.y * p.y / u.x;
}

ParamWindow feasible_param_window(Side side, const TriangleConfig& cfg) {
  const Point2 u = cfg.side_direction(side);
  const double L = cfg.base_length();
  // foot(t) = origin.x + t * |u|^2 / u.x, so containment in [0, L] is a
  // one-sided bound on t measured from the base vertex.
  const double norm2 = u.x * u.x + u.y * u.y;
  double reach;  // distance from the base vertex to the far end of [0, L]
  if (side == Side::S1) {
    if (u.x <= 0.0) return ParamWindow{0.0, 0.0};
    reach = L * u.x / norm2;
  } else {
    if (u.x >= 0.0) return ParamWindow{0.0, 0.0};
    reach = L * (-u.x) / norm2;
  }
  return ParamWindow{0.0, std::min(1.0, reach)};
}

std::optional<double> bisector_cut(const Point2& p, const Point2& q) {
  if (p.x == q.x) return std::nullopt;
  const double p2 = p.x * p.x + p.y * p.y;
  const double q2 = q.x * q.x + q.y * q.y;
  return (q2 - p2) / (2.0 * (q.x - p.x));
}

}  // namespace cq

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cq {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

/// Squared Euclidean distance between two points of the plane.
inline double squared_distance(const Point2& p, const Point2& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

/// The two constraint segments: S1 runs from the origin to the apex,
/// S2 from the apex down to the right end of the base.
enum class Side { S1, S2 };

inline const char* to_string(Side s) { return s == Side::S1 ? "s1" : "s2"; }

class TriangleConfig;

/// A point bound to one of the constraint sides. `param` is normalized
/// arclength along the side, 0 at the base vertex, 1 at the apex.
struct ConstraintPoint {
  Side side = Side::S1;
  double param = 0.0;
  Point2 position;  // cached cartesian coordinates

  double abscissa() const { return position.x; }
};

inline bool operator==(const ConstraintPoint& a, const ConstraintPoint& b) {
  return a.side == b.side && a.param == b.param;
}

/// Closed interval of side parameters.
struct ParamWindow {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Geometry of the support and the constraint: the support is the base
/// interval [0, base_length] on the x-axis, the constraint is the union of
/// the two segments joining the base endpoints to the apex.
class TriangleConfig {
 public:
  TriangleConfig(double base_length, Point2 apex) : base_length_(base_length), apex_(apex) {
    if (!(base_length > 0.0)) throw std::invalid_argument("TriangleConfig: base_length must be positive");
    if (!(apex.y > 0.0)) throw std::invalid_argument("TriangleConfig: apex must lie strictly above the base");
  }

  /// The equilateral triangle with vertices (0,0), (2,0), (1, sqrt(3)).
  static TriangleConfig canonical() { return TriangleConfig(2.0, Point2{1.0, std::sqrt(3.0)}); }

  double base_length() const { return base_length_; }
  const Point2& apex() const { return apex_; }

  bool is_canonical() const {
    return base_length_ == 2.0 && apex_.x == 1.0 && apex_.y == std::sqrt(3.0);
  }

  bool is_symmetric() const {
    return std::abs(apex_.x - 0.5 * base_length_) <= 1e-15 * base_length_;
  }

  /// Base vertex a side starts from.
  Point2 side_origin(Side s) const {
    return s == Side::S1 ? Point2{0.0, 0.0} : Point2{base_length_, 0.0};
  }

  /// Direction vector of a side, from its base vertex to the apex.
  Point2 side_direction(Side s) const {
    const Point2 o = side_origin(s);
    return Point2{apex_.x - o.x, apex_.y - o.y};
  }

  /// Cartesian position of the side point with the given normalized parameter.
  Point2 position_on(Side s, double t) const {
    const Point2 o = side_origin(s);
    const Point2 d = side_direction(s);
    return Point2{o.x + t * d.x, o.y + t * d.y};
  }

  ConstraintPoint point(Side s, double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("ConstraintPoint: param must lie in [0, 1]");
    return ConstraintPoint{s, t, position_on(s, t)};
  }

  /// Mirror image under x -> base_length - x; swaps the two sides.
  ConstraintPoint mirrored(const ConstraintPoint& cp) const {
    return point(cp.side == Side::S1 ? Side::S2 : Side::S1, cp.param);
  }

 private:
  double base_length_;
  Point2 apex_;
};

/// Abscissa where the perpendicular to cp's side through cp meets the base
/// line y = 0. May fall outside the support (callers test containment); for a
/// side perpendicular to the base the foot escapes to infinity.
double normal_foot(const ConstraintPoint& cp, const TriangleConfig& cfg);

/// Parameter range of a side whose normal foot lies inside the support.
ParamWindow feasible_param_window(Side side, const TriangleConfig& cfg);

/// Abscissa where the perpendicular bisector of pq crosses the base line.
/// Empty when the bisector is parallel to the base (p and q share an
/// abscissa), which signals a degenerate codebook.
std::optional<double> bisector_cut(const Point2& p, const Point2& q);

}  // namespace cq

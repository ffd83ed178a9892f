#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cq/geometry.hpp"

namespace cq {

/// Ordered list of constraint-bound code points. The feasibility contract is
/// the base-line ordering: S1 points first with strictly increasing abscissa,
/// then S2 points, again with strictly increasing abscissa (i.e. walking the
/// constraint from the origin up one side and down the other while the
/// induced cells sweep the support left to right). Violations are allowed to
/// exist so that validate_feasibility can report them.
struct Codebook {
  std::vector<ConstraintPoint> points;
  int ell = 0;  // number of S1 points
  int m = 0;    // number of S2 points

  explicit Codebook(std::vector<ConstraintPoint> pts) : points(std::move(pts)) {
    for (const auto& p : points) (p.side == Side::S1 ? ell : m)++;
  }

  int size() const { return static_cast<int>(points.size()); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
};

/// Nonnegative distortion in squared-distance units.
struct DistortionValue {
  double value = 0.0;
};

/// Voronoi cells of the support induced by a codebook, one interval per code
/// point in codebook order, tiling [0, base_length] exactly.
struct Partition {
  struct Cell {
    int point_index;
    Interval interval;
  };
  std::vector<Cell> cells;
  std::vector<double> boundaries;  // interior cut abscissas, strictly increasing

  /// Index of the cell owning x. A point exactly on a cut belongs to the
  /// left cell.
  int locate(double x) const;
};

/// Builds the partition from the bisector cuts of consecutive codebook
/// points. Throws DegeneratePartition when a cut escapes the open support or
/// the cuts fail to increase strictly (some cell would carry no mass).
Partition build_partition(const Codebook& cb, const TriangleConfig& cfg);

/// build_partition without the throw; nullopt with an optional reason.
std::optional<Partition> try_build_partition(const Codebook& cb, const TriangleConfig& cfg,
                                             std::string* reason = nullptr);

/// Distortion mass of one cell: (1/base_length) * integral over [lo, hi] of
/// (x - c.x)^2 + c.y^2 dx, by the exact cubic antiderivative.
DistortionValue cell_distortion(const Interval& cell, const Point2& c, const TriangleConfig& cfg);

/// Expected squared distance from a uniform base point to its nearest code
/// point. Uses the exact per-cell integrals when the partition is valid and
/// falls back to adaptive quadrature of the min-integrand (absolute tolerance
/// 1e-12) otherwise, so every nonempty codebook evaluates.
DistortionValue distortion(const Codebook& cb, const TriangleConfig& cfg);

/// Structural diagnostics against the necessary conditions for optimality.
struct FeasibilityReport {
  enum class Kind { Ordering, Duplicate, OutsideWindow, EmptyCell };
  struct Issue {
    Kind kind;
    int point_index;  // -1 when the issue is not tied to one point
    std::string detail;
  };
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Kind k) const {
    for (const auto& i : issues)
      if (i.kind == k) return true;
    return false;
  }
};

/// Reports ordering violations, points outside their side's feasible window,
/// duplicates, and empty or degenerate cells. Never throws.
FeasibilityReport validate_feasibility(const Codebook& cb, const TriangleConfig& cfg);

}  // namespace cq

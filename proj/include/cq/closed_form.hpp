#pragma once

#include "cq/geometry.hpp"
#include "cq/quantizer.hpp"

namespace cq {

/// Split of n code points between the two constraint sides.
struct Allocation {
  int ell = 0;  // points on S1
  int m = 0;    // points on S2

  int total() const { return ell + m; }
  Allocation mirrored() const { return Allocation{m, ell}; }
};

inline bool operator==(const Allocation& a, const Allocation& b) {
  return a.ell == b.ell && a.m == b.m;
}

/// Common gaps of the arithmetic progressions the optimal code-point
/// parameters form on each side.
struct ProgressionParams {
  double u = 0.0;  // S1 gap
  double v = 0.0;  // S2 gap
};

/// Stationary progression gaps for a two-sided allocation,
///   u = 1 / (2 ((12 l^2 + 1) m / sqrt((12 l^2 + 1)(12 m^2 + 1)) + l)),
/// and symmetrically for v. Requires ell, m >= 1.
ProgressionParams uv(const Allocation& alloc);

/// Constrained quantization error of the optimal two-sided progression,
///   V = (12 l^2 + 1)(12 m^2 + 1)
///       / (12 (24 l^2 m^2 + 2 l m sqrt((12 l^2 + 1)(12 m^2 + 1)) + l^2 + m^2)).
/// Requires ell, m >= 1. Stated for l, m >= 3 but reproduces every smaller
/// case, which the test suite checks against the separately derived values.
DistortionValue vn(const Allocation& alloc);

/// vn(alloc) - 1/4 in rationalized form (no cancellation), the gap above the
/// large-n limit. Exactly 1/(48 k^2) when ell == m == k.
double vn_gap(const Allocation& alloc);

/// Best distortion with all n points on one side: 1 + 1/(12 n^2), attained by
/// the progression with gap u = 1/(2n). Never optimal for n >= 2.
DistortionValue single_side_vn(int n);

/// Code points of the (u, v) progression: side parameters (2i-1)u/2 up S1 and
/// (2j-1)v/2 up S2, listed in base order (S1 ascending, then S2 descending
/// toward the right base vertex). Throws InfeasibleProgression when the
/// outermost point of either side leaves its feasible window (scaled by cfg).
Codebook build_codebook(const Allocation& alloc, const ProgressionParams& params,
                        const TriangleConfig& cfg);

/// Single-side progression codebook with gap u (default: the optimal 1/(2n)
/// scaled to the side's feasible window).
Codebook single_side_codebook(int n, Side side, const TriangleConfig& cfg);

struct BestAllocation {
  Allocation alloc;        // ell >= m by convention; pure allocations have m == 0
  DistortionValue value;
  bool mirror = false;     // the mirrored split attains the same value
};

/// Minimizes vn over the two-sided splits ell + m = n and single_side_vn over
/// the pure ones. Ties between a split and its mirror resolve to the larger
/// count on S1; the mirror flag records that the reflected optimum exists.
BestAllocation best_allocation(int n);

}  // namespace cq

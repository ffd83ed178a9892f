#pragma once

#include <vector>

#include "cq/solver.hpp"

namespace cq {

/// Exhaustive-search control. The initial pass grids every side parameter
/// with `resolution` samples (ordered tuples within a side are enumerated
/// combinatorially); each refinement round re-grids the same resolution
/// inside a window around the incumbent shrunk by `refine_shrink`, so the
/// final parameter pitch is about refine_shrink^rounds / resolution.
struct GridSpec {
  int resolution = 2001;       // samples per side parameter, >= 10
  int refine_rounds = 3;
  double refine_shrink = 0.05;  // in (0, 1)
};

/// Best tuple found on the initial grid for one side assignment.
struct AllocationIncumbent {
  Allocation alloc;
  std::vector<double> params;  // per-point side parameter, base order
  double value = 0.0;
};

struct GridSearchResult {
  SolveResult best;
  std::vector<AllocationIncumbent> allocation_bests;
};

/// Brute-force approximation of the n-th constrained quantization error:
/// enumerates every side assignment and ordered parameter tuple on the grid,
/// then refines locally around the incumbent. Deterministic given the spec;
/// exact-value ties keep the first tuple in enumeration order (allocations
/// S1-heavy first, parameters lexicographic). Requires n in {1, 2, 3}.
GridSearchResult grid_search_detailed(int n, const TriangleConfig& cfg, const GridSpec& spec = {});
SolveResult grid_search(int n, const TriangleConfig& cfg, const GridSpec& spec = {});

/// Same search with every point pinned to one side; n <= 4.
GridSearchResult restricted_grid_search_detailed(int n, Side side, const TriangleConfig& cfg,
                                                 const GridSpec& spec = {});
SolveResult restricted_grid_search(int n, Side side, const TriangleConfig& cfg,
                                   const GridSpec& spec = {});

}  // namespace cq

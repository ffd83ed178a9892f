#pragma once

#include <optional>
#include <vector>

#include "cq/closed_form.hpp"
#include "cq/geometry.hpp"
#include "cq/quantizer.hpp"

namespace cq {

enum class Provenance { ClosedForm, NewtonUV, CoordinateDescent, Oracle };

const char* to_string(Provenance p);

struct SolveResult {
  Allocation allocation;
  std::optional<ProgressionParams> params;  // set by progression-structured solves
  std::vector<double> point_params;         // per-point side parameter, codebook order
  Codebook codebook{std::vector<ConstraintPoint>{}};
  DistortionValue distortion;
  Provenance provenance = Provenance::ClosedForm;
  int iterations = 0;
  double residual = 0.0;
  bool mirror = false;
};

/// Damped Newton iteration on the two partial derivatives of the progression
/// distortion with respect to (u, v), derivatives by central differences with
/// step 1e-7, converged at derivative norm <= 1e-11. Throws NoConvergence
/// after 200 iterations and InfeasibleProgression when iterates cannot stay
/// on the constraint (step halved up to 40 times first).
SolveResult newton_uv(const Allocation& alloc, const TriangleConfig& cfg,
                      const ProgressionParams& init);

/// Default Newton start: the single-side-optimal gap per side, scaled to the
/// side's feasible window.
ProgressionParams default_newton_init(const Allocation& alloc, const TriangleConfig& cfg);

/// Cyclic golden-section minimization over each point's side parameter,
/// search interval clamped by the neighbors' abscissas and the feasible
/// window so every iterate stays a valid codebook. Stops when a full sweep
/// improves distortion by less than 1e-13 or after 500 sweeps.
SolveResult coordinate_descent(const Codebook& cb0, const TriangleConfig& cfg);

/// Optimal n-point solve. Canonical config: closed-form fast path
/// (best_allocation + build_codebook), cross-checked against newton_uv.
/// Other configs: sweep all allocations, Newton then coordinate-descent
/// polish each, return the global best.
SolveResult solve(int n, const TriangleConfig& cfg);

/// Best codebook with all n points on one side. Closed form for the
/// canonical config, coordinate descent otherwise.
SolveResult solve_single_side(int n, Side side, const TriangleConfig& cfg);

}  // namespace cq

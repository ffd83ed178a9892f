#include "cq/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "cq/detail/eval.hpp"
#include "cq/errors.hpp"

namespace cq {

namespace {

using LD = long double;

constexpr double kGradStep = 1e-7;    // central-difference step for the gradient
constexpr double kHessStep = 1e-5;    // central-difference step for the Hessian
constexpr double kGradTol = 1e-11;    // convergence on the derivative norm
constexpr int kNewtonMaxIter = 200;
constexpr int kNewtonMaxHalvings = 40;
constexpr double kGoldenTol = 1e-12;  // golden-section window on the parameter
constexpr LD kSweepTol = 1e-13L;      // coordinate-descent sweep improvement
constexpr int kMaxSweeps = 500;

/// Distortion of an arbitrary constraint-point list, evaluated in extended
/// precision so finite-difference derivatives keep usable digits. Points are
/// sorted by abscissa; degenerate structures fall through to the exact
/// min-integrand integral.
struct PointListEval {
  LD L, ax, ay, s2dx;

  explicit PointListEval(const TriangleConfig& cfg)
      : L(cfg.base_length()), ax(cfg.apex().x), ay(cfg.apex().y), s2dx(ax - L) {}

  detail::EvalPoint<LD> lift(Side side, LD t) const {
    if (side == Side::S1) return detail::EvalPoint<LD>::from_xy(t * ax, t * ay);
    return detail::EvalPoint<LD>::from_xy(L + t * s2dx, t * ay);
  }

  LD eval(std::vector<detail::EvalPoint<LD>>& pts) const {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.x < b.x; });
    const int n = static_cast<int>(pts.size());
    if (detail::cuts_valid(pts.data(), n, L)) return detail::walk_distortion(pts.data(), n, L);
    return detail::min_integrand_distortion(pts.data(), n, L, LD(1e-14));
  }
};

/// Progression objective f(u, v) over the two side gaps.
struct ProgressionObjective {
  PointListEval base;
  int ell, m;
  mutable std::vector<detail::EvalPoint<LD>> buf;

  ProgressionObjective(const Allocation& alloc, const TriangleConfig& cfg)
      : base(cfg), ell(alloc.ell), m(alloc.m) {}

  LD operator()(LD u, LD v) const {
    buf.clear();
    for (int i = 1; i <= ell; ++i) buf.push_back(base.lift(Side::S1, (2 * i - 1) * u / 2));
    for (int j = m; j >= 1; --j) buf.push_back(base.lift(Side::S2, (2 * j - 1) * v / 2));
    return base.eval(buf);
  }
};

struct Vec2d {
  LD u = 0, v = 0;
  LD norm() const { return std::sqrt(static_cast<double>(u * u + v * v)); }
};

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::NewtonUV: return "newton_uv";
    case Provenance::CoordinateDescent: return "coordinate_descent";
    case Provenance::Oracle: return "oracle";
  }
  return "unknown";
}

ProgressionParams default_newton_init(const Allocation& alloc, const TriangleConfig& cfg) {
  const double w1 = feasible_param_window(Side::S1, cfg).hi;
  const double w2 = feasible_param_window(Side::S2, cfg).hi;
  return ProgressionParams{w1 / alloc.ell, w2 / alloc.m};
}

SolveResult newton_uv(const Allocation& alloc, const TriangleConfig& cfg,
                      const ProgressionParams& init) {
  if (alloc.ell < 1 || alloc.m < 1)
    throw std::invalid_argument("newton_uv: allocation must occupy both sides");

  const ProgressionObjective f(alloc, cfg);

  // Gaps must keep every point on its segment: t_last = (2k-1)g/2 <= 1.
  const LD u_max = std::min<LD>(1.0L, 2.0L / (2 * alloc.ell - 1));
  const LD v_max = std::min<LD>(1.0L, 2.0L / (2 * alloc.m - 1));
  const LD margin = kHessStep + 2 * kGradStep;
  const auto in_domain = [&](LD u, LD v) {
    return u > margin && u < u_max - margin && v > margin && v < v_max - margin;
  };

  const auto grad = [&](LD u, LD v) {
    const LD h = kGradStep;
    return Vec2d{(f(u + h, v) - f(u - h, v)) / (2 * h), (f(u, v + h) - f(u, v - h)) / (2 * h)};
  };

  LD u = init.u, v = init.v;
  if (!in_domain(u, v)) throw InfeasibleProgression("newton_uv: initial gaps off the constraint");

  Vec2d g = grad(u, v);
  int iter = 0;
  for (; iter < kNewtonMaxIter; ++iter) {
    const LD gnorm = g.norm();
    if (gnorm <= kGradTol) break;

    // Jacobian of the gradient by central differences, symmetrized.
    const LD hh = kHessStep;
    const Vec2d gu_p = grad(u + hh, v), gu_m = grad(u - hh, v);
    const Vec2d gv_p = grad(u, v + hh), gv_m = grad(u, v - hh);
    const LD huu = (gu_p.u - gu_m.u) / (2 * hh);
    const LD hvv = (gv_p.v - gv_m.v) / (2 * hh);
    const LD huv = ((gu_p.v - gu_m.v) / (2 * hh) + (gv_p.u - gv_m.u) / (2 * hh)) / 2;

    LD du, dv;
    const LD det = huu * hvv - huv * huv;
    if (std::abs(static_cast<double>(det)) > 1e-30 && huu > 0) {
      du = -(hvv * g.u - huv * g.v) / det;
      dv = -(huu * g.v - huv * g.u) / det;
    } else {
      // Indefinite or singular curvature: fall back to a scaled descent step.
      const LD scale = std::max<LD>({std::abs(huu), std::abs(hvv), std::abs(huv), LD(1)});
      du = -g.u / scale;
      dv = -g.v / scale;
    }

    LD lambda = 1.0L;
    bool accepted = false;
    bool ever_in_domain = false;
    for (int halving = 0; halving <= kNewtonMaxHalvings; ++halving, lambda /= 2) {
      const LD un = u + lambda * du, vn = v + lambda * dv;
      if (!in_domain(un, vn)) continue;
      ever_in_domain = true;
      const Vec2d gn = grad(un, vn);
      if (gn.norm() < gnorm) {
        u = un;
        v = vn;
        g = gn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!ever_in_domain)
        throw InfeasibleProgression("newton_uv: iterates left the feasible gap rectangle");
      // No decrease at any damping: take the smallest damped step and let the
      // iteration cap decide.
      const LD tiny = std::pow(0.5L, kNewtonMaxHalvings);
      const LD un = u + tiny * du, vn = v + tiny * dv;
      if (in_domain(un, vn)) {
        u = un;
        v = vn;
        g = grad(u, v);
      }
    }
  }
  if (g.norm() > kGradTol)
    throw NoConvergence("newton_uv: derivative norm above tolerance after " +
                        std::to_string(kNewtonMaxIter) + " iterations");

  const ProgressionParams params{static_cast<double>(u), static_cast<double>(v)};
  SolveResult res;
  res.allocation = alloc;
  res.params = params;
  res.codebook = build_codebook(alloc, params, cfg);
  for (const auto& p : res.codebook.points) res.point_params.push_back(p.param);
  res.distortion = distortion(res.codebook, cfg);
  res.provenance = Provenance::NewtonUV;
  res.iterations = iter;
  res.residual = static_cast<double>(g.norm());
  res.mirror = cfg.is_symmetric() && alloc.ell != alloc.m;
  return res;
}

namespace {

/// Golden-section minimum of f over [a, b] to the given window; returns the
/// best evaluated point.
template <class F>
std::pair<LD, LD> golden_min(const F& f, LD a, LD b, LD tol) {
  static const LD invphi = (std::sqrt(5.0L) - 1) / 2;
  LD c = b - invphi * (b - a), d = a + invphi * (b - a);
  LD fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

SolveResult coordinate_descent(const Codebook& cb0, const TriangleConfig& cfg) {
  if (cb0.points.empty()) throw std::invalid_argument("coordinate_descent: empty codebook");
  const PointListEval base(cfg);
  const int n = cb0.size();

  std::vector<Side> sides(n);
  std::vector<LD> t(n);
  for (int i = 0; i < n; ++i) {
    sides[i] = cb0.points[i].side;
    t[i] = cb0.points[i].param;
  }

  std::vector<detail::EvalPoint<LD>> buf;
  const auto value_of = [&](const std::vector<LD>& params) {
    buf.clear();
    for (int i = 0; i < n; ++i) buf.push_back(base.lift(sides[i], params[i]));
    return base.eval(buf);
  };

  const ParamWindow w1 = feasible_param_window(Side::S1, cfg);
  const ParamWindow w2 = feasible_param_window(Side::S2, cfg);

  // Search bounds for point i: its feasible window, intersected with the
  // parameter preimage of the open abscissa interval between its neighbors.
  const auto bounds_for = [&](int i) {
    const ParamWindow& w = sides[i] == Side::S1 ? w1 : w2;
    LD lo = w.lo, hi = w.hi;
    const Point2 o = cfg.side_origin(sides[i]);
    const LD dx = cfg.side_direction(sides[i]).x;
    const LD eps = 1e-12L * cfg.base_length();
    const auto clamp_by_x = [&](LD xbound, bool neighbor_left) {
      if (dx == 0) return;  // vertical side: abscissa carries no ordering
      const LD tb = (xbound - o.x) / dx;
      const bool lower = neighbor_left == (dx > 0);
      if (lower) lo = std::max(lo, tb + eps / std::abs(dx));
      else hi = std::min(hi, tb - eps / std::abs(dx));
    };
    if (i > 0) clamp_by_x(base.lift(sides[i - 1], t[i - 1]).x, true);
    if (i + 1 < n) clamp_by_x(base.lift(sides[i + 1], t[i + 1]).x, false);
    return std::make_pair(lo, hi);
  };

  LD current = value_of(t);
  int sweeps = 0;
  LD last_improvement = 0;
  for (; sweeps < kMaxSweeps; ++sweeps) {
    const LD before = current;
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = bounds_for(i);
      if (!(hi > lo)) continue;
      const auto line = [&](LD ti) {
        std::vector<LD> trial = t;
        trial[i] = ti;
        return value_of(trial);
      };
      const auto [tbest, fbest] = golden_min(line, lo, hi, LD(kGoldenTol));
      if (fbest < current) {
        t[i] = tbest;
        current = fbest;
      }
    }
    last_improvement = before - current;
    if (last_improvement < kSweepTol) {
      ++sweeps;
      break;
    }
  }

  std::vector<ConstraintPoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(cfg.point(sides[i], static_cast<double>(t[i])));

  SolveResult res;
  res.allocation = Allocation{static_cast<int>(std::count(sides.begin(), sides.end(), Side::S1)),
                              static_cast<int>(std::count(sides.begin(), sides.end(), Side::S2))};
  for (const auto& ti : t) res.point_params.push_back(static_cast<double>(ti));
  res.codebook = Codebook(std::move(pts));
  res.distortion = distortion(res.codebook, cfg);
  res.provenance = Provenance::CoordinateDescent;
  res.iterations = sweeps;
  res.residual = static_cast<double>(last_improvement);
  return res;
}

namespace {

SolveResult closed_form_solve(int n, const TriangleConfig& cfg) {
  const BestAllocation best = best_allocation(n);
  SolveResult res;
  res.provenance = Provenance::ClosedForm;
  res.mirror = best.mirror;
  res.distortion = best.value;
  res.allocation = best.alloc;
  if (best.alloc.m == 0) {
    res.codebook = single_side_codebook(n, Side::S1, cfg);
  } else {
    const ProgressionParams params = uv(best.alloc);
    res.params = params;
    res.codebook = build_codebook(best.alloc, params, cfg);

    // Cross-check the tabulated optimum against the stationarity solver.
    const SolveResult newton = newton_uv(best.alloc, cfg, default_newton_init(best.alloc, cfg));
    if (std::abs(newton.params->u - params.u) > 1e-8 ||
        std::abs(newton.params->v - params.v) > 1e-8 ||
        std::abs(newton.distortion.value - best.value.value) > 1e-10)
      throw std::logic_error("solve: closed form and newton_uv disagree");
    res.residual = newton.residual;
  }
  for (const auto& p : res.codebook.points) res.point_params.push_back(p.param);
  return res;
}

}  // namespace

SolveResult solve(int n, const TriangleConfig& cfg) {
  if (n < 1) throw std::invalid_argument("solve: n must be >= 1");
  if (cfg.is_canonical()) return closed_form_solve(n, cfg);

  std::optional<SolveResult> best;
  std::exception_ptr last_error;
  for (int ell = n; ell >= 0; --ell) {
    const int m = n - ell;
    try {
      Codebook start{std::vector<ConstraintPoint>{}};
      if (ell >= 1 && m >= 1) {
        const Allocation alloc{ell, m};
        start = newton_uv(alloc, cfg, default_newton_init(alloc, cfg)).codebook;
      } else {
        start = single_side_codebook(n, ell > 0 ? Side::S1 : Side::S2, cfg);
      }
      SolveResult res = coordinate_descent(start, cfg);
      if (!best || res.distortion.value < best->distortion.value) best = std::move(res);
    } catch (const std::exception&) {
      last_error = std::current_exception();
    }
  }
  if (!best) {
    if (last_error) std::rethrow_exception(last_error);
    throw NoConvergence("solve: every allocation failed");
  }
  best->mirror = cfg.is_symmetric() && best->allocation.ell != best->allocation.m;
  return *best;
}

SolveResult solve_single_side(int n, Side side, const TriangleConfig& cfg) {
  if (n < 1) throw std::invalid_argument("solve_single_side: n must be >= 1");
  if (cfg.is_canonical()) {
    SolveResult res;
    res.allocation = side == Side::S1 ? Allocation{n, 0} : Allocation{0, n};
    res.codebook = single_side_codebook(n, side, cfg);
    for (const auto& p : res.codebook.points) res.point_params.push_back(p.param);
    res.distortion = single_side_vn(n);
    res.provenance = Provenance::ClosedForm;
    res.mirror = true;
    return res;
  }
  SolveResult res = coordinate_descent(single_side_codebook(n, side, cfg), cfg);
  res.mirror = cfg.is_symmetric();
  return res;
}

}  // namespace cq

#include "cq/closed_form.hpp"

#include <cmath>
#include <string>

#include "cq/errors.hpp"

namespace cq {

namespace {

void require_two_sided(const Allocation& alloc, const char* op) {
  if (alloc.ell < 1 || alloc.m < 1)
    throw std::invalid_argument(std::string(op) +
                                ": allocation must occupy both sides (use single_side_vn)");
}

}  // namespace

ProgressionParams uv(const Allocation& alloc) {
  require_two_sided(alloc, "uv");
  const double l = alloc.ell;
  const double m = alloc.m;
  const double pl = 12.0 * l * l + 1.0;
  const double pm = 12.0 * m * m + 1.0;
  const double root = std::sqrt(pl * pm);
  const double u = 1.0 / (2.0 * (pl * m / root + l));
  const double v = 1.0 / (2.0 * (l * pm / root + m));
  return ProgressionParams{u, v};
}

DistortionValue vn(const Allocation& alloc) {
  require_two_sided(alloc, "vn");
  const double l = alloc.ell;
  const double m = alloc.m;
  const double pl = 12.0 * l * l + 1.0;
  const double pm = 12.0 * m * m + 1.0;
  const double root = std::sqrt(pl * pm);
  return DistortionValue{pl * pm /
                         (12.0 * (24.0 * l * l * m * m + 2.0 * l * m * root + l * l + m * m))};
}

double vn_gap(const Allocation& alloc) {
  require_two_sided(alloc, "vn_gap");
  const double l = alloc.ell;
  const double m = alloc.m;
  const double l2 = l * l;
  const double m2 = m * m;
  const double pl = 12.0 * l2 + 1.0;
  const double pm = 12.0 * m2 + 1.0;
  const double root = std::sqrt(pl * pm);
  // vn - 1/4 = (A - 6 l m root) / (12 B) with A = 72 l^2 m^2 + 9 l^2 + 9 m^2 + 1;
  // multiplying through by (A + 6 l m root) leaves an all-positive numerator,
  // so the gap keeps full relative precision at any n.
  const double A = 72.0 * l2 * m2 + 9.0 * l2 + 9.0 * m2 + 1.0;
  const double B = 24.0 * l2 * m2 + 2.0 * l * m * root + l2 + m2;
  const double num = 864.0 * l2 * m2 * (l2 + m2) + 81.0 * (l2 * l2 + m2 * m2) +
                     270.0 * l2 * m2 + 18.0 * (l2 + m2) + 1.0;
  return num / (12.0 * B * (A + 6.0 * l * m * root));
}

DistortionValue single_side_vn(int n) {
  if (n < 1) throw std::invalid_argument("single_side_vn: n must be >= 1");
  const double nn = n;
  return DistortionValue{1.0 + 1.0 / (12.0 * nn * nn)};
}

Codebook build_codebook(const Allocation& alloc, const ProgressionParams& params,
                        const TriangleConfig& cfg) {
  require_two_sided(alloc, "build_codebook");
  const ParamWindow w1 = feasible_param_window(Side::S1, cfg);
  const ParamWindow w2 = feasible_param_window(Side::S2, cfg);
  const double t_last_s1 = (2.0 * alloc.ell - 1.0) * params.u / 2.0;
  const double t_last_s2 = (2.0 * alloc.m - 1.0) * params.v / 2.0;
  if (!(params.u > 0.0) || t_last_s1 > w1.hi)
    throw InfeasibleProgression("build_codebook: S1 progression leaves the feasible window");
  if (!(params.v > 0.0) || t_last_s2 > w2.hi)
    throw InfeasibleProgression("build_codebook: S2 progression leaves the feasible window");

  std::vector<ConstraintPoint> pts;
  pts.reserve(alloc.total());
  for (int i = 1; i <= alloc.ell; ++i) pts.push_back(cfg.point(Side::S1, (2.0 * i - 1.0) * params.u / 2.0));
  for (int j = alloc.m; j >= 1; --j) pts.push_back(cfg.point(Side::S2, (2.0 * j - 1.0) * params.v / 2.0));
  return Codebook(std::move(pts));
}

Codebook single_side_codebook(int n, Side side, const TriangleConfig& cfg) {
  if (n < 1) throw std::invalid_argument("single_side_codebook: n must be >= 1");
  const ParamWindow w = feasible_param_window(side, cfg);
  // Gap 1/(2n) spreads the progression over [0, 1/2]; scale it to the window.
  const double u = 2.0 * w.hi / (2.0 * n);
  std::vector<ConstraintPoint> pts;
  pts.reserve(n);
  if (side == Side::S1)
    for (int i = 1; i <= n; ++i) pts.push_back(cfg.point(side, (2.0 * i - 1.0) * u / 2.0));
  else
    for (int j = n; j >= 1; --j) pts.push_back(cfg.point(side, (2.0 * j - 1.0) * u / 2.0));
  return Codebook(std::move(pts));
}

BestAllocation best_allocation(int n) {
  if (n < 1) throw std::invalid_argument("best_allocation: n must be >= 1");
  BestAllocation best{Allocation{n, 0}, single_side_vn(n), true};
  // Pure allocations tie with their mirror by reflection; larger count on S1.
  for (int ell = n - 1; ell >= 1; --ell) {
    const Allocation alloc{ell, n - ell};
    const DistortionValue v = vn(alloc);
    if (v.value < best.value.value) best = BestAllocation{alloc, v, alloc.ell != alloc.m};
  }
  // vn is symmetric in (ell, m); prefer the S1-heavy representative.
  if (best.alloc.m > best.alloc.ell) best.alloc = best.alloc.mirrored();
  return best;
}

}  // namespace cq

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cq/quantizer.hpp"

namespace cqtest {

inline cq::TriangleConfig canon() { return cq::TriangleConfig::canonical(); }

inline double min_rho(double x, const std::vector<cq::Point2>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    const double d = x - p.x;
    best = std::min(best, d * d + p.y * p.y);
  }
  return best;
}

inline double simpson_rec(const std::vector<cq::Point2>& pts, double a, double m, double b,
                          double fa, double fm, double fb, double whole, double tol, int depth) {
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = min_rho(lm, pts), frm = min_rho(rm, pts);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15 * tol) return left + right + err / 15;
  return simpson_rec(pts, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(pts, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}

/// Plain adaptive Simpson over the min-integrand; an integration route with
/// no knowledge of cells or cuts, used to check the exact per-cell sums.
inline double reference_min_distortion(const cq::Codebook& cb, const cq::TriangleConfig& cfg,
                                       double tol = 1e-13) {
  std::vector<cq::Point2> pts;
  for (const auto& p : cb.points) pts.push_back(p.position);
  const double L = cfg.base_length();
  const double a = 0, b = L, m = L / 2;
  const double fa = min_rho(a, pts), fm = min_rho(m, pts), fb = min_rho(b, pts);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(pts, a, m, b, fa, fm, fb, whole, tol, 52) / L;
}

/// Random codebook with ordered, well-separated parameters inside the
/// feasible windows and a valid partition (rejection sampling).
inline cq::Codebook random_feasible_codebook(std::mt19937& rng, const cq::TriangleConfig& cfg,
                                             int n_lo = 1, int n_hi = 8) {
  using namespace cq;
  std::uniform_int_distribution<int> nd(n_lo, n_hi);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const ParamWindow w1 = feasible_param_window(Side::S1, cfg);
  const ParamWindow w2 = feasible_param_window(Side::S2, cfg);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    const int n = nd(rng);
    std::uniform_int_distribution<int> ld(0, n);
    const int ell = ld(rng);
    const int m = n - ell;
    const auto draw_sorted = [&](const ParamWindow& w, int count) {
      std::vector<double> ts(count);
      for (auto& t : ts) t = w.lo + (w.hi - w.lo) * ud(rng);
      std::sort(ts.begin(), ts.end());
      for (int i = 0; i + 1 < count; ++i)
        if (ts[i + 1] - ts[i] < 1e-3) return std::vector<double>{};
      return ts;
    };
    const auto t1 = draw_sorted(w1, ell);
    const auto t2 = draw_sorted(w2, m);
    if ((ell && t1.empty()) || (m && t2.empty())) continue;
    std::vector<ConstraintPoint> pts;
    for (double t : t1) pts.push_back(cfg.point(Side::S1, t));
    for (auto it = t2.rbegin(); it != t2.rend(); ++it) pts.push_back(cfg.point(Side::S2, *it));
    Codebook cb(std::move(pts));
    if (try_build_partition(cb, cfg)) return cb;
  }
  throw std::runtime_error("random_feasible_codebook: rejection sampling failed");
}

}  // namespace cqtest

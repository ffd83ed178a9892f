#include "cq/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "cq/closed_form.hpp"
#include "cq/solver.hpp"

namespace cq {

double canonical_gap(int n) {
  const BestAllocation best = best_allocation(n);
  if (best.alloc.m == 0) return 0.75 + 1.0 / (12.0 * double(n) * double(n));
  return vn_gap(best.alloc);
}

VInfinity v_infinity(const TriangleConfig& cfg) {
  if (cfg.is_canonical()) return VInfinity{0.25, true};
  // Even-n progression values V_{2k} approach the limit like C/k^2; one
  // Richardson step over the last doubling removes the leading term.
  double prev = 0.0, last = 0.0;
  for (int k = 4; k <= 32; k *= 2) {
    const Allocation alloc{k, k};
    const SolveResult res = newton_uv(alloc, cfg, default_newton_init(alloc, cfg));
    prev = last;
    last = res.distortion.value;
  }
  return VInfinity{(4.0 * last - prev) / 3.0, false};
}

double dimension_estimate(const std::vector<std::pair<int, double>>& gaps) {
  if (gaps.size() < 2) throw std::invalid_argument("dimension_estimate: need at least two entries");
  const auto& [n1, g1] = gaps[gaps.size() - 2];
  const auto& [n2, g2] = gaps[gaps.size() - 1];
  if (!(g1 > 0.0) || !(g2 > 0.0))
    throw std::invalid_argument("dimension_estimate: gaps must be positive");
  if (n1 == n2) throw std::invalid_argument("dimension_estimate: entries must have distinct n");
  return 2.0 * std::log(double(n2) / double(n1)) / std::log(g1 / g2);
}

double raw_dimension_ratio(int n, double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("raw_dimension_ratio: gap must be positive");
  return 2.0 * std::log(double(n)) / (-std::log(gap));
}

namespace {

double gap_for(int n, const TriangleConfig& cfg, double vinf) {
  if (cfg.is_canonical()) return canonical_gap(n);
  return solve(n, cfg).distortion.value - vinf;
}

}  // namespace

std::vector<std::pair<int, double>> coefficient_sequence(const std::vector<int>& ns,
                                                         const TriangleConfig& cfg) {
  const double vinf = v_infinity(cfg).value;
  std::vector<std::pair<int, double>> out;
  out.reserve(ns.size());
  for (int n : ns) out.emplace_back(n, double(n) * double(n) * gap_for(n, cfg, vinf));
  return out;
}

AsymptoticsReport build_report(const std::vector<int>& ns, const TriangleConfig& cfg) {
  AsymptoticsReport rep;
  const VInfinity vinf = v_infinity(cfg);
  rep.v_infinity = vinf.value;
  rep.v_infinity_exact = vinf.exact;

  std::vector<std::pair<int, double>> gaps;
  for (int n : ns) {
    const double gap = gap_for(n, cfg, vinf.value);
    const double vn_value = cfg.is_canonical() ? best_allocation(n).value.value
                                               : solve(n, cfg).distortion.value;
    rep.entries.push_back({n, vn_value, gap, double(n) * double(n) * gap,
                           raw_dimension_ratio(n, gap)});
    gaps.emplace_back(n, gap);
  }
  if (gaps.size() >= 2) rep.dimension_estimate = dimension_estimate(gaps);
  if (!rep.entries.empty()) rep.coefficient_estimate = rep.entries.back().n2gap;
  return rep;
}

}  // namespace cq

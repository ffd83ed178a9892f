#pragma once

#include <utility>
#include <vector>

#include "cq/geometry.hpp"

namespace cq {

struct VInfinity {
  double value = 0.0;
  bool exact = false;  // false when the limit was extrapolated numerically
};

/// Limit of V_n as n grows. Exactly 1/4 for the canonical config; otherwise a
/// Richardson extrapolation of the even-n progression values over doubling k,
/// flagged as an estimate.
VInfinity v_infinity(const TriangleConfig& cfg);

/// V_n - V_infinity for the canonical config, computed cancellation-free.
double canonical_gap(int n);

/// Two-point power-law estimator over the last pair of (n, gap) entries:
///   D = 2 log(n2/n1) / log(gap1/gap2).
/// Converges at the rate of the gap's power law, unlike the raw definitional
/// ratio. Requires at least two entries with distinct n and positive gaps.
double dimension_estimate(const std::vector<std::pair<int, double>>& gaps);

/// The definitional ratio 2 log n / (-log gap); approaches the dimension only
/// logarithmically, reported for fidelity to the definition.
double raw_dimension_ratio(int n, double gap);

/// (n, n^2 * (V_n - V_infinity)) per requested n.
std::vector<std::pair<int, double>> coefficient_sequence(const std::vector<int>& ns,
                                                         const TriangleConfig& cfg);

struct AsymptoticsReport {
  struct Entry {
    int n;
    double vn;
    double gap;        // V_n - V_infinity
    double n2gap;      // n^2 * gap
    double raw_ratio;  // 2 log n / (-log gap)
  };
  double v_infinity = 0.0;
  bool v_infinity_exact = false;
  std::vector<Entry> entries;
  double dimension_estimate = 0.0;    // two-point estimator over the last pair
  double coefficient_estimate = 0.0;  // last n^2 * gap
};

AsymptoticsReport build_report(const std::vector<int>& ns, const TriangleConfig& cfg);

}  // namespace cq

#include "cq/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "cq/detail/eval.hpp"
#include "cq/errors.hpp"

namespace cq {

namespace {

std::vector<detail::EvalPoint<double>> eval_points(const Codebook& cb) {
  std::vector<detail::EvalPoint<double>> pts;
  pts.reserve(cb.points.size());
  for (const auto& p : cb.points)
    pts.push_back(detail::EvalPoint<double>::from_xy(p.position.x, p.position.y));
  return pts;
}

}  // namespace

int Partition::locate(double x) const {
  for (size_t i = 0; i + 1 < cells.size(); ++i)
    if (x <= cells[i].interval.hi) return static_cast<int>(i);
  return static_cast<int>(cells.size()) - 1;
}

std::optional<Partition> try_build_partition(const Codebook& cb, const TriangleConfig& cfg,
                                             std::string* reason) {
  const double L = cfg.base_length();
  if (cb.points.empty()) {
    if (reason) *reason = "empty codebook";
    return std::nullopt;
  }

  Partition part;
  double lo = 0.0;
  for (size_t i = 0; i + 1 < cb.points.size(); ++i) {
    const auto cut = bisector_cut(cb.points[i].position, cb.points[i + 1].position);
    if (!cut) {
      if (reason) *reason = "no cut between adjacent points (bisector parallel to base)";
      return std::nullopt;
    }
    if (!(*cut > lo && *cut < L)) {
      if (reason) *reason = "cut outside the support or cuts non-monotone";
      return std::nullopt;
    }
    part.cells.push_back({static_cast<int>(i), Interval{lo, *cut}});
    part.boundaries.push_back(*cut);
    lo = *cut;
  }
  part.cells.push_back({static_cast<int>(cb.points.size()) - 1, Interval{lo, L}});
  return part;
}

Partition build_partition(const Codebook& cb, const TriangleConfig& cfg) {
  std::string why;
  auto part = try_build_partition(cb, cfg, &why);
  if (!part) throw DegeneratePartition("build_partition: " + why);
  return std::move(*part);
}

DistortionValue cell_distortion(const Interval& cell, const Point2& c, const TriangleConfig& cfg) {
  const double y2 = c.y * c.y;
  return DistortionValue{detail::rho_integral(cell.lo, cell.hi, c.x, y2) / cfg.base_length()};
}

DistortionValue distortion(const Codebook& cb, const TriangleConfig& cfg) {
  if (cb.points.empty()) throw std::invalid_argument("distortion: codebook must be nonempty");
  if (auto part = try_build_partition(cb, cfg)) {
    double acc = 0.0;
    for (const auto& cell : part->cells)
      acc += cell_distortion(cell.interval, cb.points[cell.point_index].position, cfg).value;
    return DistortionValue{acc};
  }
  // Degenerate cell structure: integrate the min-integrand directly so the
  // codebook still has a well-defined distortion.
  const auto pts = eval_points(cb);
  return DistortionValue{
      detail::min_integrand_distortion(pts.data(), static_cast<int>(pts.size()), cfg.base_length(), 1e-12)};
}

FeasibilityReport validate_feasibility(const Codebook& cb, const TriangleConfig& cfg) {
  FeasibilityReport rep;
  using Kind = FeasibilityReport::Kind;

  if (cb.points.empty()) {
    rep.issues.push_back({Kind::EmptyCell, -1, "codebook has no points"});
    return rep;
  }

  // Side blocks: all S1 points must precede all S2 points.
  bool seen_s2 = false;
  for (int i = 0; i < cb.size(); ++i) {
    if (cb.points[i].side == Side::S2) seen_s2 = true;
    else if (seen_s2)
      rep.issues.push_back({Kind::Ordering, i, "S1 point listed after an S2 point"});
  }

  // Strictly increasing abscissas within each side block.
  for (int i = 0; i + 1 < cb.size(); ++i) {
    const auto& a = cb.points[i];
    const auto& b = cb.points[i + 1];
    if (a.side != b.side) continue;
    if (!(b.abscissa() > a.abscissa()))
      rep.issues.push_back({Kind::Ordering, i + 1, "abscissas not strictly increasing along the base"});
  }

  for (int i = 0; i < cb.size(); ++i)
    for (int j = i + 1; j < cb.size(); ++j)
      if (cb.points[i] == cb.points[j])
        rep.issues.push_back({Kind::Duplicate, j, "duplicate code point"});

  const ParamWindow w1 = feasible_param_window(Side::S1, cfg);
  const ParamWindow w2 = feasible_param_window(Side::S2, cfg);
  for (int i = 0; i < cb.size(); ++i) {
    const auto& p = cb.points[i];
    const ParamWindow& w = p.side == Side::S1 ? w1 : w2;
    if (!w.contains(p.param))
      rep.issues.push_back({Kind::OutsideWindow, i, "normal foot falls outside the support"});
  }

  std::string why;
  if (!try_build_partition(cb, cfg, &why))
    rep.issues.push_back({Kind::EmptyCell, -1, "degenerate cells: " + why});

  return rep;
}

}  // namespace cq

#include "cq/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cq {

namespace {

std::string format_digits(double v, int digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, ptr);
}

std::string json_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_digits(*v, 17);
}

}  // namespace

std::string format_full(double v) { return format_digits(v, 17); }
std::string format_table(double v) { return format_digits(v, 12); }

std::optional<double> result_gap(const SolveResult& res, const TriangleConfig& cfg) {
  if (!cfg.is_canonical()) return std::nullopt;
  if (res.provenance == Provenance::ClosedForm) {
    const int n = res.allocation.total();
    return canonical_gap(n);
  }
  return res.distortion.value - 0.25;
}

std::string result_payload_json(const SolveResult& res, const TriangleConfig& cfg) {
  const auto gap = result_gap(res, cfg);
  std::optional<double> n2gap;
  if (gap) n2gap = double(res.allocation.total()) * double(res.allocation.total()) * *gap;

  std::ostringstream os;
  os << "{\"n\":" << res.allocation.total() << ",\"ell\":" << res.allocation.ell
     << ",\"m\":" << res.allocation.m;
  os << ",\"u\":" << json_number(res.params ? std::optional<double>(res.params->u) : std::nullopt);
  os << ",\"v\":" << json_number(res.params ? std::optional<double>(res.params->v) : std::nullopt);
  os << ",\"codebook\":[";
  for (size_t i = 0; i < res.codebook.points.size(); ++i) {
    const auto& p = res.codebook.points[i];
    if (i) os << ",";
    os << "{\"side\":\"" << to_string(p.side) << "\",\"param\":" << format_full(p.param)
       << ",\"x\":" << format_full(p.position.x) << ",\"y\":" << format_full(p.position.y) << "}";
  }
  os << "]";
  os << ",\"vn\":" << format_full(res.distortion.value);
  os << ",\"gap\":" << json_number(gap);
  os << ",\"n2gap\":" << json_number(n2gap);
  os << ",\"provenance\":\"" << to_string(res.provenance) << "\"";
  os << ",\"residual\":" << format_full(res.residual);
  os << ",\"mirror\":" << (res.mirror ? "true" : "false");
  os << "}";
  return os.str();
}

std::string run_record_json(const std::string& command, const TriangleConfig& cfg,
                            const SolveResult& res, double wall_ms) {
  std::ostringstream os;
  os << "{\"command\":\"" << command << "\"";
  os << ",\"config\":{\"base\":" << format_full(cfg.base_length())
     << ",\"apex_x\":" << format_full(cfg.apex().x) << ",\"apex_y\":" << format_full(cfg.apex().y)
     << "}";
  os << ",\"result\":" << result_payload_json(res, cfg);
  os << ",\"wall_ms\":" << format_digits(wall_ms, 6);
  os << ",\"version\":\"" << kToolVersion << "\"}";
  return os.str();
}

std::string sweep_csv_header() { return "n,ell,m,u,v,vn,gap,n2gap"; }

std::string sweep_csv_row(const SolveResult& res, const TriangleConfig& cfg) {
  const auto gap = result_gap(res, cfg);
  std::ostringstream os;
  os << res.allocation.total() << "," << res.allocation.ell << "," << res.allocation.m << ",";
  if (res.params) os << format_table(res.params->u);
  os << ",";
  if (res.params) os << format_table(res.params->v);
  os << "," << format_table(res.distortion.value) << ",";
  if (gap) os << format_table(*gap);
  os << ",";
  if (gap) os << format_table(double(res.allocation.total()) * double(res.allocation.total()) * *gap);
  return os.str();
}

std::string result_table(const SolveResult& res, const TriangleConfig& cfg) {
  const auto gap = result_gap(res, cfg);
  std::ostringstream os;
  os << "n = " << res.allocation.total() << "  allocation (ell, m) = (" << res.allocation.ell
     << ", " << res.allocation.m << ")\n";
  if (res.params)
    os << "u = " << format_table(res.params->u) << "  v = " << format_table(res.params->v) << "\n";
  os << "V_n = " << format_table(res.distortion.value);
  if (gap)
    os << "  gap = " << format_table(*gap) << "  n^2*gap = "
       << format_table(double(res.allocation.total()) * double(res.allocation.total()) * *gap);
  os << "\n";
  os << "provenance = " << to_string(res.provenance) << "  iterations = " << res.iterations
     << "  residual = " << format_table(res.residual) << "  mirror = "
     << (res.mirror ? "yes" : "no") << "\n";
  os << "codebook (side, param, x, y):\n";
  for (const auto& p : res.codebook.points)
    os << "  " << to_string(p.side) << "  " << format_table(p.param) << "  "
       << format_table(p.position.x) << "  " << format_table(p.position.y) << "\n";
  return os.str();
}

std::string asymptotics_table(const AsymptoticsReport& rep) {
  std::ostringstream os;
  os << "V_inf = " << format_table(rep.v_infinity) << (rep.v_infinity_exact ? "" : " (estimate)")
     << "\n";
  os << "n,vn,gap,n2gap,raw_ratio\n";
  for (const auto& e : rep.entries)
    os << e.n << "," << format_table(e.vn) << "," << format_table(e.gap) << ","
       << format_table(e.n2gap) << "," << format_table(e.raw_ratio) << "\n";
  os << "dimension_estimate (two-point) = " << format_table(rep.dimension_estimate) << "\n";
  os << "coefficient_estimate = " << format_table(rep.coefficient_estimate) << "\n";
  return os.str();
}

}  // namespace cq

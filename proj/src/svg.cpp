#include "cq/svg.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cq {

namespace {

constexpr double kBaseWidthPx = 560.0;
constexpr double kMarginPx = 40.0;

std::string px(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

}  // namespace

std::string render_figure(const SolveResult& res, const TriangleConfig& cfg) {
  if (res.codebook.points.empty())
    throw std::invalid_argument("render_figure: result carries no codebook");

  const double scale = kBaseWidthPx / cfg.base_length();
  const double apex_y = cfg.apex().y;
  const double width = kBaseWidthPx + 2.0 * kMarginPx;
  const double height = std::ceil(apex_y * scale) + 2.0 * kMarginPx;
  const auto X = [&](double x) { return kMarginPx + x * scale; };
  const auto Y = [&](double y) { return kMarginPx + (apex_y - y) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
     << px(height) << "\" viewBox=\"0 0 " << px(width) << " " << px(height) << "\">\n";
  os << "<path d=\"M " << px(X(0)) << " " << px(Y(0)) << " L " << px(X(cfg.base_length())) << " "
     << px(Y(0)) << " L " << px(X(cfg.apex().x)) << " " << px(Y(cfg.apex().y))
     << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << px(X(cfg.apex().x)) << "\" y1=\"" << px(Y(cfg.apex().y)) << "\" x2=\""
     << px(X(cfg.apex().x)) << "\" y2=\"" << px(Y(0))
     << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& p : res.codebook.points)
    os << "<circle cx=\"" << px(X(p.position.x)) << "\" cy=\"" << px(Y(p.position.y))
       << "\" r=\"4\" fill=\"#cc0000\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace cq

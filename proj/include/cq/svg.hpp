#pragma once

#include <string>

#include "cq/solver.hpp"

namespace cq {

/// SVG document with the triangle outline, the dashed apex altitude and one
/// filled dot per code point, the base scaled to a fixed pixel width.
/// Byte-identical across runs for identical inputs. Requires a nonempty
/// codebook.
std::string render_figure(const SolveResult& res, const TriangleConfig& cfg);

}  // namespace cq

#pragma once

#include <optional>
#include <string>

#include "cq/asymptotics.hpp"
#include "cq/solver.hpp"

namespace cq {

inline constexpr const char* kToolVersion = "0.1.0";

/// Locale-independent decimal formatting. 17 significant digits round-trip a
/// double exactly (the JSON machine interface); tables and CSV carry 12.
std::string format_full(double v);
std::string format_table(double v);

/// Gap above the large-n limit for a result, when the config has a known
/// limit (canonical only). Closed-form results use the cancellation-free gap.
std::optional<double> result_gap(const SolveResult& res, const TriangleConfig& cfg);

/// Stable-schema payload: {"n","ell","m","u","v","codebook":[{"side","param",
/// "x","y"}],"vn","gap","n2gap","provenance","residual","mirror"}.
std::string result_payload_json(const SolveResult& res, const TriangleConfig& cfg);

/// Run envelope around the payload: command echo, config, wall time, version.
std::string run_record_json(const std::string& command, const TriangleConfig& cfg,
                            const SolveResult& res, double wall_ms);

std::string sweep_csv_header();
std::string sweep_csv_row(const SolveResult& res, const TriangleConfig& cfg);

std::string result_table(const SolveResult& res, const TriangleConfig& cfg);
std::string asymptotics_table(const AsymptoticsReport& rep);

}  // namespace cq

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cq/asymptotics.hpp"
#include "cq/errors.hpp"
#include "cq/oracle.hpp"
#include "cq/report_io.hpp"
#include "cq/solver.hpp"
#include "cq/svg.hpp"
#include "cq/threads.hpp"

namespace {

enum ExitCode { kOk = 0, kBadArguments = 2, kNoConvergence = 3, kInternalError = 4 };

std::string join_args(int argc, char** argv) {
  std::string cmd;
  for (int i = 0; i < argc; ++i) {
    if (i) cmd += ' ';
    for (const char* p = argv[i]; *p; ++p) {
      if (*p == '"' || *p == '\\') cmd += '\\';
      cmd += *p;
    }
  }
  return cmd;
}

double now_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit_result(const cq::SolveResult& res, const cq::TriangleConfig& cfg, bool json, bool csv,
                 const std::string& command, double wall_ms) {
  if (json) {
    std::cout << cq::run_record_json(command, cfg, res, wall_ms) << "\n";
  } else if (csv) {
    std::cout << cq::sweep_csv_header() << "\n" << cq::sweep_csv_row(res, cfg) << "\n";
  } else {
    std::cout << cq::result_table(res, cfg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal constrained quantizers on the two non-base sides of a triangle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cq ") + cq::kToolVersion);

  double base = 2.0, apex_x = 1.0, apex_y = std::sqrt(3.0);
  int n = 1;
  bool as_json = false, as_csv = false;

  auto* solve_cmd = app.add_subcommand("solve", "Optimal n-point codebook and distortion");
  solve_cmd->add_option("--n", n, "number of code points")->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--apex-x", apex_x, "apex x coordinate");
  solve_cmd->add_option("--apex-y", apex_y, "apex y coordinate (must be positive)");
  solve_cmd->add_option("--base", base, "base length");
  auto* jflag = solve_cmd->add_flag("--json", as_json, "machine-readable JSON output");
  solve_cmd->add_flag("--csv", as_csv, "CSV output")->excludes(jflag);

  int sweep_from = 1, sweep_to = 1;
  std::string csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate solves over a range of n");
  sweep_cmd->add_option("--from", sweep_from, "first n")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--to", sweep_to, "last n")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--csv", csv_path, "write CSV to this path instead of stdout");

  int max_n = 20;
  bool odd_only = false;
  auto* asym_cmd = app.add_subcommand("asymptotics", "Gap, dimension and coefficient table");
  asym_cmd->add_option("--max-n", max_n, "largest n in the table")->required();
  asym_cmd->add_flag("--odd", odd_only, "odd-n sequence instead of even");

  int grid = 2001, refine = 3;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid search (n <= 3)");
  oracle_cmd->add_option("--n", n, "number of code points")->required();
  oracle_cmd->add_option("--grid", grid, "samples per side parameter");
  oracle_cmd->add_option("--refine", refine, "refinement rounds");

  std::string out_path;
  auto* figure_cmd = app.add_subcommand("figure", "SVG of the optimal configuration");
  figure_cmd->add_option("--n", n, "number of code points")->required()->check(CLI::PositiveNumber);
  figure_cmd->add_option("--out", out_path, "output SVG path")->required();

  std::string side_name = "s1";
  auto* single_cmd = app.add_subcommand("single-side", "Best codebook confined to one side");
  single_cmd->add_option("--n", n, "number of code points")->required()->check(CLI::PositiveNumber);
  single_cmd->add_option("--side", side_name, "s1 or s2")->check(CLI::IsMember({"s1", "s2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  const std::string command = join_args(argc, argv);
  const auto t0 = std::chrono::steady_clock::now();

  try {
    if (solve_cmd->parsed()) {
      const cq::TriangleConfig cfg(base, cq::Point2{apex_x, apex_y});
      const cq::SolveResult res = cq::solve(n, cfg);
      emit_result(res, cfg, as_json, as_csv, command, now_ms(t0));
      return kOk;
    }

    if (sweep_cmd->parsed()) {
      if (sweep_from > sweep_to) throw CLI::ValidationError("sweep", "--from must not exceed --to");
      const cq::TriangleConfig cfg = cq::TriangleConfig::canonical();
      const int rows = sweep_to - sweep_from + 1;
      std::vector<std::string> lines(rows);
      cq::parallel_chunks(rows, rows, [&](int, std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i)
          lines[i] = cq::sweep_csv_row(cq::solve(sweep_from + static_cast<int>(i), cfg), cfg);
      });
      if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw CLI::ValidationError("sweep", "cannot open " + csv_path);
        out << cq::sweep_csv_header() << "\n";
        for (const auto& line : lines) out << line << "\n";
      } else {
        std::cout << cq::sweep_csv_header() << "\n";
        for (const auto& line : lines) std::cout << line << "\n";
      }
      return kOk;
    }

    if (asym_cmd->parsed()) {
      std::vector<int> ns;
      for (int k = odd_only ? 1 : 2; k <= max_n; k += 2) ns.push_back(k);
      if (ns.size() < 2) throw CLI::ValidationError("asymptotics", "--max-n leaves fewer than two entries");
      const auto rep = cq::build_report(ns, cq::TriangleConfig::canonical());
      std::cout << cq::asymptotics_table(rep);
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      const cq::TriangleConfig cfg = cq::TriangleConfig::canonical();
      cq::GridSpec spec;
      spec.resolution = grid;
      spec.refine_rounds = refine;
      const cq::SolveResult res = cq::grid_search(n, cfg, spec);
      std::cout << cq::result_table(res, cfg);
      const double reference = cq::best_allocation(n).value.value;
      std::cout << "closed-form V_n = " << cq::format_table(reference)
                << "  oracle - closed = " << cq::format_table(res.distortion.value - reference)
                << "\n";
      return kOk;
    }

    if (figure_cmd->parsed()) {
      const cq::TriangleConfig cfg = cq::TriangleConfig::canonical();
      const cq::SolveResult res = cq::solve(n, cfg);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw CLI::ValidationError("figure", "cannot open " + out_path);
      out << cq::render_figure(res, cfg);
      return kOk;
    }

    if (single_cmd->parsed()) {
      const cq::TriangleConfig cfg = cq::TriangleConfig::canonical();
      const cq::Side side = side_name == "s1" ? cq::Side::S1 : cq::Side::S2;
      const cq::SolveResult res = cq::solve_single_side(n, side, cfg);
      std::cout << cq::result_table(res, cfg);
      return kOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const cq::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kBadArguments;
}

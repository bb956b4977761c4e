// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark CLI: solve | compare | sweep | model. See README.md for the
// solver spec grammar and report formats.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "f3r/bench.hpp"
#include "f3r/errors.hpp"

namespace {

f3r::Precision parse_precision_flag(const std::string& s) {
  if (s == "f64") return f3r::Precision::P64;
  if (s == "f32") return f3r::Precision::P32;
  if (s == "f16") return f3r::Precision::P16;
  throw f3r::ParseError("bad precision '" + s + "' (expected f64|f32|f16)");
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& csv, Parse parse) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto next = csv.find(',', pos);
    const std::string tok = csv.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!tok.empty()) out.push_back(parse(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

int parse_int_tok(const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw f3r::ParseError("bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f3r: nested mixed-precision Krylov solver benchmark"};
  app.require_subcommand(1);

  f3r::bench::RunConfig cfg;
  std::vector<std::string> solvers;
  std::string precond_precision;
  std::string sweep_m2 = "8", sweep_m3 = "4", sweep_m4 = "2", sweep_c = "64", sweep_modes = "fp16",
              sweep_omegas;
  double model_ca = 45.0, model_cm = 45.0;
  int model_m = 64;
  bool model_no_richardson = false;
  bool fixed_omega_set = false;
  double fixed_omega_value = 1.0;

  const auto add_problem_flags = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", cfg.problem.matrix_path, "Matrix Market (.mtx) file");
    cmd->add_option("--stencil", cfg.problem.stencil_name, "hpcg_X_Y_Z or hpgmp_X_Y_Z problem");
    cmd->add_option("--tol", cfg.tol, "relative residual tolerance")->check(CLI::Range(1e-300, 1.0));
    cmd->add_option("--seed", cfg.rhs_seed, "RHS generator seed (SplitMix64)");
    cmd->add_option("--repeats", cfg.repeats, "runs per configuration")->check(CLI::PositiveNumber);
    cmd->add_flag("--zero-rhs", cfg.zero_rhs, "use b = 0 instead of a random RHS");
    cmd->add_option("--threads", cfg.threads, "kernel threads");
    cmd->add_option("--precond-blocks", cfg.precond_blocks, "block-Jacobi block count");
    cmd->add_option("--alpha", cfg.alpha, "diagonal boost used only inside the factorization");
    cmd->add_option("--precond", cfg.precond_kind, "auto|ilu0|ic0|identity");
    cmd->add_option("--precond-precision", precond_precision, "f64|f32|f16 factor storage");
    cmd->add_option("--out", cfg.out_path, "output file (JSON for solve, CSV otherwise)");
    cmd->add_option("--m1", cfg.m1, "outermost cycle length");
    cmd->add_option("--m2", cfg.m2, "level-2 iterations");
    cmd->add_option("--m3", cfg.m3, "level-3 iterations");
    cmd->add_option("--m4", cfg.m4, "innermost Richardson iterations");
    cmd->add_option("--c", cfg.c, "weight-update cycle (0 disables updates)");
    cmd->add_option("--max-outer", cfg.max_outer_total, "total outermost iteration cap");
    cmd->add_option("--max-restarts", cfg.max_outer_restarts, "additional executions after the first");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one solver and write a JSON report");
  add_problem_flags(solve);
  solve->add_option("--solver", cfg.solver, "solver alias or spec string");
  solve->add_option("--fixed-omega", fixed_omega_value, "fixed Richardson weight (disables updates)")
      ->each([&](const std::string&) { fixed_omega_set = true; });

  CLI::App* compare = app.add_subcommand("compare", "run several solvers on one problem (CSV)");
  add_problem_flags(compare);
  compare->add_option("--solver", solvers, "solver (repeatable); first one is the baseline")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with a shared RHS (CSV)");
  add_problem_flags(sweep);
  sweep->add_option("--sweep-m2", sweep_m2, "comma list of m2 values");
  sweep->add_option("--sweep-m3", sweep_m3, "comma list of m3 values");
  sweep->add_option("--sweep-m4", sweep_m4, "comma list of m4 values");
  sweep->add_option("--sweep-c", sweep_c, "comma list of weight cycles");
  sweep->add_option("--sweep-mode", sweep_modes, "comma list from fp64,fp32,fp16");
  sweep->add_option("--sweep-fixed-omega", sweep_omegas, "comma list of fixed weights (adds fixed-weight runs)");

  CLI::App* model = app.add_subcommand("model", "memory-access cost table (CSV)");
  model->add_option("--ca", model_ca, "per-row traffic constant of A");
  model->add_option("--cm", model_cm, "per-row traffic constant of M");
  model->add_option("--m", model_m, "iteration count to split")->check(CLI::PositiveNumber);
  model->add_flag("--no-richardson", model_no_richardson, "only consider nested FGMRES interiors");
  model->add_option("--out", cfg.out_path, "output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!precond_precision.empty()) cfg.precond_precision = parse_precision_flag(precond_precision);
    if (fixed_omega_set) cfg.fixed_omega = fixed_omega_value;

    if (solve->parsed()) {
      const std::string json = f3r::bench::cmd_solve(cfg);
      if (cfg.out_path.empty()) {
        std::cout << json;
      } else {
        std::cout << "report written to " << cfg.out_path << "\n";
      }
    } else if (compare->parsed()) {
      const std::string csv = f3r::bench::cmd_compare(cfg, solvers);
      if (cfg.out_path.empty()) std::cout << csv;
    } else if (sweep->parsed()) {
      f3r::bench::SweepGrid grid;
      grid.m2 = parse_list<int>(sweep_m2, parse_int_tok);
      grid.m3 = parse_list<int>(sweep_m3, parse_int_tok);
      grid.m4 = parse_list<int>(sweep_m4, parse_int_tok);
      grid.c = parse_list<std::uint64_t>(sweep_c, [](const std::string& s) {
        return static_cast<std::uint64_t>(parse_int_tok(s));
      });
      grid.modes = parse_list<std::string>(sweep_modes, [](const std::string& s) {
        if (s != "fp64" && s != "fp32" && s != "fp16") throw f3r::ParseError("bad mode '" + s + "'");
        return s;
      });
      if (!sweep_omegas.empty()) {
        grid.fixed_omegas = parse_list<double>(sweep_omegas, [](const std::string& s) { return std::stod(s); });
      }
      const std::string csv = f3r::bench::cmd_sweep(cfg, grid);
      if (cfg.out_path.empty()) std::cout << csv;
    } else if (model->parsed()) {
      const std::string csv = f3r::bench::cmd_model(model_ca, model_cm, model_m, !model_no_richardson);
      if (cfg.out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(cfg.out_path);
        out << csv;
      }
    }
  } catch (const f3r::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file bench.hpp
/// \brief Benchmark harness: problem setup (stencil generation or Matrix
/// Market files, diagonal scaling, seeded random right-hand sides), solver
/// selection by alias or spec string, repeated runs, and JSON/CSV reporting.

#ifndef F3R_BENCH_HPP
#define F3R_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "f3r/nesting.hpp"
#include "f3r/report.hpp"
#include "f3r/scaling.hpp"

namespace f3r::bench {

struct ProblemConfig {
  std::string matrix_path;   ///< Matrix Market file; mutually exclusive with stencil
  std::string stencil_name;  ///< hpcg_X_Y_Z or hpgmp_X_Y_Z
};

struct RunConfig {
  ProblemConfig problem;
  std::string solver = "fp16-f3r";
  // preconditioner defaults, overridden by an explicit terminal in the spec string
  std::size_t precond_blocks = 4;
  double alpha = 1.0;
  std::string precond_kind = "auto";  ///< auto | ilu0 | ic0 | identity
  std::optional<Precision> precond_precision;
  double tol = 1e-8;
  std::uint64_t rhs_seed = 1;
  int repeats = 3;
  bool zero_rhs = false;
  std::optional<double> fixed_omega;  ///< disables weight updates, sets all weights
  int m1 = 100, m2 = 8, m3 = 4, m4 = 2;
  std::uint64_t c = 64;
  int max_outer_restarts = 3;
  std::uint64_t max_outer_total = 300;
  int threads = 1;
  std::string out_path;
};

/// Scaled problem ready to solve. The right-hand side is synthesized after
/// scaling, so it is the scaled system's RHS directly.
struct PreparedProblem {
  std::string id;
  SparseCsr matrix;  ///< after symmetric diagonal scaling
  std::vector<double> scale;
  PrecisionReplicas replicas;
  bool symmetric = false;
};

PreparedProblem prepare_problem(const ProblemConfig& problem);

enum class SolverFamily { Composed, Cg, Bicgstab, FgmresRestarted };

struct SolverPlan {
  SolverFamily family = SolverFamily::Composed;
  SolverSpec spec;      ///< for Composed
  int restart = 64;     ///< for FgmresRestarted
  IluConfig ilu;        ///< merged terminal + flag configuration
  bool use_identity = false;
  std::string id;
};

/// Resolves a solver alias (fp64-f3r, fp32-f3r, fp16-f3r, f2, fp16-f2, f3,
/// fp16-f3, f4, cg, bicgstab, fgmres64) or a full spec string. Throws
/// ParseError for unknown names or malformed specs.
SolverPlan plan_solver(const RunConfig& cfg, bool symmetric);

struct SolveOutcome {
  ConvergenceReport report;
  double factorization_seconds = 0.0;
};

/// One full solve (fresh preconditioner and solver state).
SolveOutcome run_once(const SolverPlan& plan, const PreparedProblem& prep, const DenseVector& rhs,
                      const RunConfig& cfg);

/// `solve` subcommand: repeated runs, JSON report (written to cfg.out_path
/// when set). Returns the JSON text.
std::string cmd_solve(const RunConfig& cfg);

/// `compare` subcommand: one CSV row per solver, speedup relative to the
/// first entry.
std::string cmd_compare(const RunConfig& cfg, const std::vector<std::string>& solvers);

struct SweepGrid {
  std::vector<int> m2{8};
  std::vector<int> m3{4};
  std::vector<int> m4{2};
  std::vector<std::uint64_t> c{64};
  std::vector<std::string> modes{"fp16"};
  std::vector<double> fixed_omegas;  ///< adds fixed-weight runs when non-empty
};

/// `sweep` subcommand: Cartesian product over the grid with a shared RHS.
std::string cmd_sweep(const RunConfig& cfg, const SweepGrid& grid);

/// `model` subcommand: cost table for the split advisor.
std::string cmd_model(double c_a, double c_m, int m, bool allow_richardson);

}  // namespace f3r::bench

#endif  // F3R_BENCH_HPP

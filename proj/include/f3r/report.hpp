// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_REPORT_HPP
#define F3R_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace f3r {

/// Outcome of one solver run. `residual_history` holds relative residuals
/// per outermost iteration (entry 0 is the initial residual), so its length
/// is outer_iterations + 1. `precond_invocations` counts applications of the
/// primary preconditioner. A converged report always satisfies
/// final_true_residual < tol with the residual recomputed from scratch at fp64.
struct ConvergenceReport {
  bool converged = false;
  std::uint64_t outer_iterations = 0;
  std::uint64_t precond_invocations = 0;
  std::vector<std::uint64_t> level_iterations;  ///< per nesting level (empty for flat solvers)
  std::vector<double> residual_history;
  double final_true_residual = 0.0;
  double wall_seconds = 0.0;
  std::vector<double> omegas_final;  ///< innermost Richardson weights, if any
  std::string flag;                  ///< "", "capped", "breakdown", ...
  std::string solver_id;
  std::string problem_id;
};

}  // namespace f3r

#endif  // F3R_REPORT_HPP

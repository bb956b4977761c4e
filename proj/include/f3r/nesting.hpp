// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file nesting.hpp
/// \brief Recursive solver composition: each level's preconditioning action
/// runs the next level to completion (its full iteration budget, zero initial
/// guess, no tolerance test) and returns the approximate solution. Only the
/// outermost level evaluates convergence. Vector precision conversion happens
/// once at each level boundary: the parent demotes the vector it hands down
/// and promotes the result it gets back.

#ifndef F3R_NESTING_HPP
#define F3R_NESTING_HPP

#include <memory>

#include "f3r/csr.hpp"
#include "f3r/ilu.hpp"
#include "f3r/report.hpp"
#include "f3r/solver_spec.hpp"

namespace f3r {

struct BuildOptions {
  /// Permit precision to increase with depth (experimental structures).
  bool allow_precision_increase = false;
};

struct RunOptions {
  double tol = 1e-8;
  /// Additional executions of the whole solver after an unconverged pass of
  /// the outermost cycle, in the manner of restarting.
  int max_outer_restarts = 3;
  /// Hard cap on total outermost iterations across all executions.
  std::uint64_t max_outer_total = 300;
  /// Richardson weights persist across restarts by default; set to wipe them.
  bool reset_richardson_on_restart = false;
};

struct NestingCounters {
  std::vector<std::uint64_t> level_invocations;  ///< solves started per level
  std::vector<std::uint64_t> level_iterations;   ///< iterations per level
  std::uint64_t precond_invocations = 0;         ///< primary preconditioner applications
};

struct RunResult {
  DenseVector x;  ///< at fp64, regardless of the outermost storage precision
  ConvergenceReport report;
};

/// An executable nested solver. Holds references to the matrix replicas and
/// the primary preconditioner; both must outlive the solver. A solver
/// instance is exclusively owned during run() (Richardson weights mutate);
/// distinct instances over the same replicas may run concurrently.
class ComposedSolver {
 public:
  ComposedSolver(const SolverSpec& spec, const PrecisionReplicas& a, const Preconditioner& m,
                 const BuildOptions& opts = {});
  ~ComposedSolver();
  ComposedSolver(ComposedSolver&&) noexcept;
  ComposedSolver& operator=(ComposedSolver&&) noexcept;

  RunResult run(const DenseVector& b, const RunOptions& opts = {});

  const NestingCounters& counters() const;
  /// Weights of the deepest Richardson level; empty when there is none.
  std::vector<double> innermost_omegas() const;
  const std::string& id() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Validates the spec against the replicas and returns an executable solver.
ComposedSolver build(const SolverSpec& spec, const PrecisionReplicas& a, const Preconditioner& m,
                     const BuildOptions& opts = {});

enum class F3rMode { FP64, FP32, FP16 };

/// Four-level structure (F_m1, F_m2, F_m3, R_m4, M) with the per-mode
/// precision schedule; FP16 runs f64/f64 > f32/f32 > f16-matrix/f32 >
/// f16 Richardson, FP32 keeps all inner levels at f32, FP64 stays at f64.
struct F3rConfig {
  int m1 = 100;
  int m2 = 8;
  int m3 = 4;
  int m4 = 2;
  std::uint64_t c = 64;  ///< Richardson weight-update cycle
  F3rMode mode = F3rMode::FP16;
};

SolverSpec f3r_spec(const F3rConfig& cfg);

ComposedSolver build_f3r(const F3rConfig& cfg, const PrecisionReplicas& a, const Preconditioner& m);

}  // namespace f3r

#endif  // F3R_NESTING_HPP

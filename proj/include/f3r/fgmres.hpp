// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file fgmres.hpp
/// \brief One flexible-GMRES cycle: Arnoldi with single-pass classical
/// Gram-Schmidt, Givens-rotation QR of the Hessenberg matrix, and storage of
/// the preconditioned vectors so the preconditioner may change per step.
///
/// All Arnoldi and QR scalars live at the same precision as the basis
/// vectors, which is taken from the right-hand side.

#ifndef F3R_FGMRES_HPP
#define F3R_FGMRES_HPP

#include <optional>
#include <vector>

#include "f3r/operator.hpp"
#include "f3r/report.hpp"

namespace f3r {

struct FgmresCycleResult {
  int iterations = 0;              ///< Arnoldi steps performed
  double residual_norm = 0.0;      ///< final least-squares residual |g_{j+1}| (absolute)
  std::vector<double> estimates;   ///< |g| before the cycle and after each step
  bool happy_breakdown = false;    ///< h_{j+1,j} == 0: exact solution in the searched space
  bool diverged = false;           ///< NaN/Inf entered the Hessenberg column
  int divergence_step = -1;
};

/// Runs at most m Arnoldi steps updating x in place (x is the initial guess
/// on entry). With `rel_tol` set, stops early once |g_{j+1}| / ||b|| drops
/// below it; inner solvers pass nullopt and run all m steps. `x_is_zero`
/// skips the initial residual multiply (r0 = b without computation).
/// On divergence the solution assembled from the steps before the bad column
/// is returned and the step index recorded.
FgmresCycleResult fgmres_cycle(LinearOperator& op, const DenseVector& b, DenseVector& x, int m,
                               std::optional<double> rel_tol, bool x_is_zero = false);

struct FgmresOptions {
  double tol = 1e-8;
  std::uint64_t max_precond_invocations = 19200;
};

/// Restarted FGMRES(m) with a terminal preconditioner: repeats cycles from
/// the current iterate until the tolerance or the invocation cap is reached.
ConvergenceReport fgmres_restarted(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                                   int restart, const FgmresOptions& opts = {});

}  // namespace f3r

#endif  // F3R_FGMRES_HPP

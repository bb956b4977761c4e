// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_CG_HPP
#define F3R_CG_HPP

#include "f3r/ilu.hpp"
#include "f3r/report.hpp"

namespace f3r {

struct ReferenceSolveOptions {
  double tol = 1e-8;
  std::uint64_t max_precond_invocations = 19200;
};

/// Preconditioned conjugate gradient at fp64. The caller asserts A symmetric
/// and M a symmetric positive definite action. Convergence requires the true
/// residual recomputed from scratch to pass the tolerance. Throws SolverError
/// when p' A p <= 0 (indefinite operator detected).
ConvergenceReport cg_solve(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                           const ReferenceSolveOptions& opts = {});

/// Preconditioned BiCGStab at fp64; two preconditioner applications per
/// iteration are counted as two. A rho breakdown yields a non-converged
/// report flagged "breakdown". `shadow` overrides the shadow residual
/// (defaults to the initial residual).
ConvergenceReport bicgstab_solve(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                                 const ReferenceSolveOptions& opts = {},
                                 const DenseVector* shadow = nullptr);

}  // namespace f3r

#endif  // F3R_CG_HPP

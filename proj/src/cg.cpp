// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/cg.hpp"

#include <cmath>

namespace f3r {

namespace {

double true_relative_residual(const SparseCsr& a, const DenseVector& x, const DenseVector& b, double bnorm) {
  DenseVector ax(a.rows(), Precision::P64);
  spmv(a, x, ax);
  DenseVector r(a.rows(), Precision::P64);
  add_scaled(b, -1.0, ax, r);
  return norm2(r) / bnorm;
}

}  // namespace

ConvergenceReport cg_solve(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                           const ReferenceSolveOptions& opts) {
  const std::size_t n = a.rows();
  ConvergenceReport rep;
  rep.solver_id = "cg";

  const double bnorm = norm2(b);
  rep.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }

  DenseVector x(n, Precision::P64);
  DenseVector r = converted(b, Precision::P64);  // x0 = 0
  DenseVector z(n, Precision::P64);
  DenseVector p(n, Precision::P64);
  DenseVector q(n, Precision::P64);

  m.apply(r, z);
  ++rep.precond_invocations;
  copy_into(z, p);
  double rz = dot(r, z);

  while (true) {
    spmv(a, p, q);
    const double pq = dot(p, q);
    if (pq <= 0.0) throw SolverError("cg: indefinite operator detected");
    const double alpha = rz / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    ++rep.outer_iterations;
    const double rel = norm2(r) / bnorm;
    rep.residual_history.push_back(rel);
    if (rel < opts.tol) {
      const double true_rel = true_relative_residual(a, x, b, bnorm);
      if (true_rel < opts.tol) {
        rep.converged = true;
        rep.final_true_residual = true_rel;
        return rep;
      }
    }
    if (rep.precond_invocations >= opts.max_precond_invocations) {
      rep.flag = "capped";
      break;
    }
    m.apply(r, z);
    ++rep.precond_invocations;
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    // p = z + beta p
    add_scaled(z, beta, p, p);
  }

  rep.final_true_residual = true_relative_residual(a, x, b, bnorm);
  return rep;
}

ConvergenceReport bicgstab_solve(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                                 const ReferenceSolveOptions& opts, const DenseVector* shadow) {
  const std::size_t n = a.rows();
  ConvergenceReport rep;
  rep.solver_id = "bicgstab";

  const double bnorm = norm2(b);
  rep.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }

  DenseVector x(n, Precision::P64);
  DenseVector r = converted(b, Precision::P64);
  DenseVector rhat = shadow ? converted(*shadow, Precision::P64) : converted(r, Precision::P64);
  DenseVector p(n, Precision::P64);
  DenseVector v(n, Precision::P64);
  DenseVector s(n, Precision::P64);
  DenseVector t(n, Precision::P64);
  DenseVector phat(n, Precision::P64);
  DenseVector shat(n, Precision::P64);

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  // rho ~ 0 relative to the vector magnitudes means the shadow residual has
  // become (numerically) orthogonal to r
  const double breakdown_eps = 1e-14;

  while (true) {
    const double rho_new = dot(rhat, r);
    if (std::abs(rho_new) <= breakdown_eps * norm2(rhat) * norm2(r)) {
      rep.flag = "breakdown";
      break;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    // p = r + beta (p - omega v)
    axpy(-omega, v, p);
    add_scaled(r, beta, p, p);

    m.apply(p, phat);
    ++rep.precond_invocations;
    spmv(a, phat, v);
    const double rhat_v = dot(rhat, v);
    if (std::abs(rhat_v) < breakdown_eps) {
      rep.flag = "breakdown";
      break;
    }
    alpha = rho / rhat_v;
    add_scaled(r, -alpha, v, s);

    m.apply(s, shat);
    ++rep.precond_invocations;
    spmv(a, shat, t);
    const double tt = dot(t, t);
    if (tt == 0.0) {
      // t vanishes either because s is already (numerically) zero -- the
      // solve finished at the half step -- or as a genuine breakdown
      if (norm2(s) / bnorm < opts.tol) {
        omega = 0.0;
      } else {
        rep.flag = "breakdown";
        break;
      }
    } else {
      omega = dot(t, s) / tt;
    }
    axpy(alpha, phat, x);
    axpy(omega, shat, x);
    add_scaled(s, -omega, t, r);
    ++rep.outer_iterations;

    const double rel = norm2(r) / bnorm;
    rep.residual_history.push_back(rel);
    if (rel < opts.tol) {
      const double true_rel = true_relative_residual(a, x, b, bnorm);
      if (true_rel < opts.tol) {
        rep.converged = true;
        rep.final_true_residual = true_rel;
        return rep;
      }
    }
    if (rep.precond_invocations >= opts.max_precond_invocations) {
      rep.flag = "capped";
      break;
    }
  }

  rep.final_true_residual = true_relative_residual(a, x, b, bnorm);
  return rep;
}

}  // namespace f3r

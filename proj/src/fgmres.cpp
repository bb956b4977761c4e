// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/fgmres.hpp"

#include <cmath>
#include <cstring>

namespace f3r {

namespace {

template <class W>
bool finite(W x) {
  using std::isfinite;
  return isfinite(x);
}

// One cycle with basis vectors, Hessenberg entries, Givens coefficients and
// the rotated right-hand side all typed W.
template <class W>
FgmresCycleResult cycle_impl(LinearOperator& op, const DenseVector& b, DenseVector& x, int m,
                             const std::optional<double>& rel_tol, bool x_is_zero) {
  using std::abs;
  using std::hypot;

  const std::size_t n = b.size();
  const Precision wp = precision_of_v<W>;
  FgmresCycleResult res;

  DenseVector r(n, wp);
  if (x_is_zero) {
    copy_into(b, r);
  } else {
    DenseVector ax(n, wp);
    op.multiply(x, ax);
    add_scaled(b, -1.0, ax, r);
  }
  const double beta = norm2(r);
  res.estimates.push_back(beta);
  res.residual_norm = beta;
  if (beta == 0.0 || !std::isfinite(beta)) {
    res.diverged = !std::isfinite(beta);
    res.divergence_step = res.diverged ? 0 : -1;
    return res;
  }
  const double bnorm = x_is_zero ? beta : norm2(converted(b, wp));

  std::vector<DenseVector> basis;
  std::vector<DenseVector> preconditioned;
  basis.reserve(static_cast<std::size_t>(m) + 1);
  preconditioned.reserve(static_cast<std::size_t>(m));
  scale_in_place(to_double(W(1) / scalar_from_double<W>(beta)), r);
  basis.push_back(std::move(r));

  std::vector<std::vector<W>> hcols;  // column j holds h(0..j+1, j)
  std::vector<W> g(static_cast<std::size_t>(m) + 1, W{});
  std::vector<W> rot_c(static_cast<std::size_t>(m), W{});
  std::vector<W> rot_s(static_cast<std::size_t>(m), W{});
  g[0] = scalar_from_double<W>(beta);

  bool stop = false;
  for (int j = 0; j < m && !stop; ++j) {
    DenseVector z(n, wp);
    op.precondition(basis[static_cast<std::size_t>(j)], z);
    DenseVector w(n, wp);
    op.multiply(z, w);

    // classical Gram-Schmidt: all projections against the unmodified w
    std::vector<W> h(static_cast<std::size_t>(j) + 2, W{});
    for (int i = 0; i <= j; ++i) {
      h[static_cast<std::size_t>(i)] = scalar_from_double<W>(dot(w, basis[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i <= j; ++i) {
      axpy(-to_double(h[static_cast<std::size_t>(i)]), basis[static_cast<std::size_t>(i)], w);
    }
    const double wnorm = norm2(w);
    h[static_cast<std::size_t>(j) + 1] = scalar_from_double<W>(wnorm);

    bool bad = !std::isfinite(wnorm);
    for (const W& e : h) bad = bad || !finite(e);
    if (bad) {
      res.diverged = true;
      res.divergence_step = j;
      break;
    }

    const bool happy = wnorm == 0.0;
    if (!happy) {
      scale_in_place(to_double(W(1) / scalar_from_double<W>(wnorm)), w);
      basis.push_back(std::move(w));
    }
    preconditioned.push_back(std::move(z));

    // apply accumulated rotations, then generate the new one
    for (int i = 0; i < j; ++i) {
      const W t = rot_c[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
                  rot_s[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
      h[static_cast<std::size_t>(i) + 1] = -rot_s[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)] +
                                           rot_c[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i) + 1];
      h[static_cast<std::size_t>(i)] = t;
    }
    const W hj = h[static_cast<std::size_t>(j)];
    const W hj1 = h[static_cast<std::size_t>(j) + 1];
    const W rho = hypot(hj, hj1);  // faithful hypot keeps |c|,|s| <= 1
    if (rho == W{}) {
      rot_c[static_cast<std::size_t>(j)] = W(1);
      rot_s[static_cast<std::size_t>(j)] = W{};
    } else {
      rot_c[static_cast<std::size_t>(j)] = hj / rho;
      rot_s[static_cast<std::size_t>(j)] = hj1 / rho;
    }
    h[static_cast<std::size_t>(j)] = rho;
    h[static_cast<std::size_t>(j) + 1] = W{};
    g[static_cast<std::size_t>(j) + 1] = -rot_s[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
    g[static_cast<std::size_t>(j)] = rot_c[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
    hcols.push_back(std::move(h));
    ++res.iterations;

    const double estimate = std::abs(to_double(g[static_cast<std::size_t>(j) + 1]));
    res.estimates.push_back(estimate);
    res.residual_norm = estimate;

    if (happy) {
      res.happy_breakdown = true;
      stop = true;
    } else if (rel_tol && estimate < *rel_tol * bnorm) {
      stop = true;
    }
  }

  // back-substitution on the rotated triangular system, then x += Z y
  const int k = res.iterations;
  if (k > 0) {
    std::vector<W> y(static_cast<std::size_t>(k), W{});
    for (int i = k - 1; i >= 0; --i) {
      W acc = g[static_cast<std::size_t>(i)];
      for (int l = i + 1; l < k; ++l) {
        acc = acc - hcols[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(l)];
      }
      y[static_cast<std::size_t>(i)] = acc / hcols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < k; ++i) {
      axpy(to_double(y[static_cast<std::size_t>(i)]), preconditioned[static_cast<std::size_t>(i)], x);
    }
  }
  return res;
}

}  // namespace

FgmresCycleResult fgmres_cycle(LinearOperator& op, const DenseVector& b, DenseVector& x, int m,
                               std::optional<double> rel_tol, bool x_is_zero) {
  if (m < 1) throw SolverError("fgmres cycle length must be >= 1");
  if (b.size() != op.size() || x.size() != op.size()) throw DimensionError("fgmres: dimension mismatch");
  switch (b.precision()) {
    case Precision::P16: return cycle_impl<Half>(op, b, x, m, rel_tol, x_is_zero);
    case Precision::P32: return cycle_impl<float>(op, b, x, m, rel_tol, x_is_zero);
    default: return cycle_impl<double>(op, b, x, m, rel_tol, x_is_zero);
  }
}

ConvergenceReport fgmres_restarted(const SparseCsr& a, const Preconditioner& m, const DenseVector& b,
                                   int restart, const FgmresOptions& opts) {
  if (restart < 1) throw SolverError("restart length must be >= 1");
  ConvergenceReport rep;
  rep.solver_id = "fgmres" + std::to_string(restart);
  const std::size_t n = a.rows();
  PreconditionedMatrix op(a, m);

  const double bnorm = norm2(b);
  DenseVector x(n, Precision::P64);
  rep.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
  if (bnorm == 0.0) {
    rep.converged = true;
    return rep;
  }

  bool first = true;
  while (true) {
    const auto remaining = opts.max_precond_invocations - op.precond_invocations();
    const int steps = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(restart), remaining));
    if (steps == 0) {
      rep.flag = "capped";
      break;
    }
    const FgmresCycleResult cycle = fgmres_cycle(op, b, x, steps, opts.tol, first);
    first = false;
    rep.outer_iterations += static_cast<std::uint64_t>(cycle.iterations);
    for (std::size_t i = 1; i < cycle.estimates.size(); ++i) {
      rep.residual_history.push_back(cycle.estimates[i] / bnorm);
    }
    if (cycle.diverged) {
      rep.flag = "divergence at step " + std::to_string(cycle.divergence_step);
      break;
    }
    if (cycle.residual_norm < opts.tol * bnorm) {
      DenseVector ax(n, Precision::P64);
      spmv(a, x, ax);
      DenseVector r(n, Precision::P64);
      add_scaled(b, -1.0, ax, r);
      const double true_res = norm2(r) / bnorm;
      if (true_res < opts.tol) {
        rep.converged = true;
        break;
      }
      // estimate drift: keep going from the current iterate
    }
    if (op.precond_invocations() >= opts.max_precond_invocations) {
      rep.flag = "capped";
      break;
    }
  }

  rep.precond_invocations = op.precond_invocations();
  DenseVector ax(n, Precision::P64);
  spmv(a, x, ax);
  DenseVector r(n, Precision::P64);
  add_scaled(b, -1.0, ax, r);
  rep.final_true_residual = norm2(r) / bnorm;
  return rep;
}

}  // namespace f3r

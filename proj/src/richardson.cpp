// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/richardson.hpp"

#include <cmath>

namespace f3r {

void richardson_apply(LinearOperator& op, const DenseVector& v, RichardsonState& state, DenseVector& z) {
  if (state.m_inner < 1) throw SolverError("richardson: m must be >= 1");
  if (v.size() != op.size() || z.size() != op.size()) throw DimensionError("richardson: dimension mismatch");

  const std::size_t n = v.size();
  const Precision wp = z.precision();
  const bool update_call = state.cycle != 0 && state.call_count % state.cycle == 0;

  fill(z, 0.0);
  DenseVector residual = converted(v, wp);  // r_0 = v without computation
  DenseVector preconditioned(n, wp);
  DenseVector scratch(n, wp);

  for (int k = 0; k < state.m_inner; ++k) {
    if (k > 0) {
      op.multiply(z, scratch);
      add_scaled(v, -1.0, scratch, residual);
    }
    op.precondition(residual, preconditioned);
    double& omega_k = state.omegas[static_cast<std::size_t>(k)];
    if (update_call) {
      op.multiply(preconditioned, scratch);  // A M r
      const double num = dot_at_least(residual, scratch, Precision::P32);
      const double den = dot_at_least(scratch, scratch, Precision::P32);
      if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) {
        ++state.degenerate_events;
        axpy(omega_k, preconditioned, z);
      } else {
        const Precision dp = compute_precision(Precision::P32, wp);
        const double omega_prime = dp == Precision::P32
                                       ? static_cast<double>(static_cast<float>(num) / static_cast<float>(den))
                                       : num / den;
        axpy(omega_prime, preconditioned, z);
        // cumulative average over the update count so far
        const auto updates_done = static_cast<double>(state.call_count / state.cycle - 1);
        omega_k = (updates_done * omega_k + omega_prime) / (updates_done + 1.0);
        if (state.record_updates) state.update_log.push_back(omega_prime);
      }
    } else {
      axpy(omega_k, preconditioned, z);
    }
  }
  if (update_call) ++state.update_count;
  ++state.call_count;
}

}  // namespace f3r

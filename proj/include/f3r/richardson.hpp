// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file richardson.hpp
/// \brief Richardson iteration with adaptive weight updating.
///
/// The solver keeps one weight per inner step. Every `cycle` invocations the
/// locally optimal weight
///     w'_k = (r_{k-1}, A M r_{k-1}) / (A M r_{k-1}, A M r_{k-1})
/// is computed (its inner products never below fp32, regardless of the
/// operating precision), the step is taken with w'_k, and the stored weight
/// is folded into the cumulative average of all w' computed so far. Weights
/// persist across invocations: the optimal weight depends on the operator,
/// not on the right-hand side of any one preconditioning call.

#ifndef F3R_RICHARDSON_HPP
#define F3R_RICHARDSON_HPP

#include <cstdint>
#include <vector>

#include "f3r/operator.hpp"

namespace f3r {

struct RichardsonState {
  RichardsonState(int m, std::uint64_t cycle_in) : m_inner(m), cycle(cycle_in), omegas(static_cast<std::size_t>(m), 1.0) {}

  int m_inner;           ///< steps per invocation
  std::uint64_t cycle;   ///< update every `cycle` calls; 0 disables updates
  std::vector<double> omegas;
  std::uint64_t call_count = 1;  ///< increments exactly once per invocation
  std::uint64_t update_count = 0;
  std::uint64_t degenerate_events = 0;  ///< (AMr, AMr) == 0 during an update

  bool record_updates = false;
  std::vector<double> update_log;  ///< computed w' values, when recording

  void reset() {
    std::fill(omegas.begin(), omegas.end(), 1.0);
    call_count = 1;
    update_count = 0;
    degenerate_events = 0;
    update_log.clear();
  }
};

/// One invocation: solves A z = v approximately with m_inner weighted
/// Richardson steps from z_0 = 0 (so r_0 = v without computation). z is
/// written at its own storage precision; all arithmetic other than the w'
/// inner products follows the operator's precision contract.
void richardson_apply(LinearOperator& op, const DenseVector& v, RichardsonState& state, DenseVector& z);

}  // namespace f3r

#endif  // F3R_RICHARDSON_HPP

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file costmodel.hpp
/// \brief Rough per-n memory-access models for preconditioned FGMRES and
/// Richardson, and for splitting an FGMRES solver into a two-level nested
/// one. The models guide the choice of nesting parameters; they never feed
/// back into solver execution.
///
/// With c_A, c_M the per-row traffic constants of A and M and m the iteration
/// count:
///   fgmres:      c_A m + c_M m + (5/2) m^2
///   richardson:  c_A (m-1) + c_M m + 4 (m-1)      (zero initial guess)
///   nested wrap: c_A m_outer + inner_cost * m_outer + (5/2) m_outer^2
/// The inner count of a split is treated as the real number m / m_outer, not
/// restricted to divisors.

#ifndef F3R_COSTMODEL_HPP
#define F3R_COSTMODEL_HPP

#include <vector>

namespace f3r {

struct CostParams {
  double c_a = 45.0;  ///< per-row traffic of A
  double c_m = 45.0;  ///< per-row traffic of M
  double m = 64.0;    ///< iteration count (real-valued for split interiors)
};

double fgmres_cost(const CostParams& p);
double richardson_cost(const CostParams& p);

/// Cost of (F_{m_outer}, F_{m_inner}, M).
double nested_fgmres_cost(double m_outer, double m_inner, const CostParams& p);
/// Cost of (F_{m_outer}, R_{m_inner}, M).
double fgmres_richardson_cost(double m_outer, double m_inner, const CostParams& p);

enum class InnerKind { Fgmres, Richardson };

struct SplitOption {
  int m_outer;
  double m_inner;  ///< p.m / m_outer
  InnerKind inner;
  double cost;
};

/// Enumerates every integer m_outer in [1, m] (and both inner kinds when
/// Richardson is allowed), sorted ascending by modeled cost with ties broken
/// by smaller m_outer, then FGMRES before Richardson.
std::vector<SplitOption> advise_split(const CostParams& p, bool allow_richardson);

}  // namespace f3r

#endif  // F3R_COSTMODEL_HPP

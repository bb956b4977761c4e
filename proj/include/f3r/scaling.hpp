// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_SCALING_HPP
#define F3R_SCALING_HPP

#include <vector>

#include "f3r/csr.hpp"
#include "f3r/dense_vector.hpp"

namespace f3r {

/// Result of symmetric diagonal scaling A~ = D^{-1/2} A D^{-1/2} with
/// D = diag(|a_ii|). `d` holds diag(D^{-1/2}), so a solution of the scaled
/// system maps back via x_i = d_i * x~_i. Symmetric (rather than row)
/// scaling keeps SPD problems SPD.
struct ScaledMatrix {
  SparseCsr matrix;
  std::vector<double> d;
};

/// Throws FactorizationError naming the row when a diagonal entry is missing
/// or zero.
ScaledMatrix diagonal_scale(const SparseCsr& a);

struct ScaledSystem {
  SparseCsr matrix;
  DenseVector rhs;  // D^{-1/2} b
  std::vector<double> d;
};

ScaledSystem diagonal_scale(const SparseCsr& a, const DenseVector& b);

}  // namespace f3r

#endif  // F3R_SCALING_HPP

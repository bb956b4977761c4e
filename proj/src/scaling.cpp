// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/scaling.hpp"

#include <cmath>
#include <string>

namespace f3r {

ScaledMatrix diagonal_scale(const SparseCsr& a) {
  const std::size_t n = a.rows();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pos = a.diagonal_index(i);
    if (!pos) throw FactorizationError("diagonal scaling: missing diagonal entry in row " + std::to_string(i));
    const double aii = a.value_at(*pos);
    if (aii == 0.0) throw FactorizationError("diagonal scaling: zero diagonal entry in row " + std::to_string(i));
    d[i] = 1.0 / std::sqrt(std::abs(aii));
  }

  const auto& src = a.values_as<double>();
  std::vector<double> scaled(src.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      scaled[k] = src[k] * d[i] * d[a.col_idx()[k]];
    }
  }
  return {SparseCsr(n, a.row_ptr(), a.col_idx(), std::move(scaled)), std::move(d)};
}

ScaledSystem diagonal_scale(const SparseCsr& a, const DenseVector& b) {
  if (b.size() != a.rows()) throw DimensionError("diagonal scaling: rhs length mismatch");
  ScaledMatrix sm = diagonal_scale(a);
  DenseVector rhs(b.size(), b.precision());
  for (std::size_t i = 0; i < b.size(); ++i) rhs.set(i, b.at(i) * sm.d[i]);
  return {std::move(sm.matrix), std::move(rhs), std::move(sm.d)};
}

}  // namespace f3r

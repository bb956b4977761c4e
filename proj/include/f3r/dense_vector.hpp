// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file dense_vector.hpp
/// \brief Dense vector with a runtime-selected storage precision, plus the
/// precision-parameterized BLAS-1 kernels used throughout the solvers.
///
/// Every kernel computes at compute_precision(operands) and stores results at
/// the destination's storage precision. Reductions accumulate sequentially in
/// index order at the compute precision (per contiguous chunk when threaded),
/// so results are deterministic for a fixed thread count.

#ifndef F3R_DENSE_VECTOR_HPP
#define F3R_DENSE_VECTOR_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "f3r/errors.hpp"
#include "f3r/precision.hpp"

namespace f3r {

class DenseVector {
 public:
  using Storage = std::variant<std::vector<double>, std::vector<float>, std::vector<Half>>;

  DenseVector() = default;
  DenseVector(std::size_t n, Precision p);
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {}
  explicit DenseVector(std::vector<float> values) : values_(std::move(values)) {}
  explicit DenseVector(std::vector<Half> values) : values_(std::move(values)) {}

  Precision precision() const;
  std::size_t size() const;

  template <class T>
  std::vector<T>& data() {
    return std::get<std::vector<T>>(values_);
  }
  template <class T>
  const std::vector<T>& data() const {
    return std::get<std::vector<T>>(values_);
  }

  Storage& storage() { return values_; }
  const Storage& storage() const { return values_; }

  /// Widened element read (exact).
  double at(std::size_t i) const;
  /// Element write, rounded to the storage precision.
  void set(std::size_t i, double value);

 private:
  Storage values_;
};

/// x[i] = value (rounded to storage precision) for all i.
void fill(DenseVector& x, double value);

/// y[i] = x[i] rounded to y's storage precision; sizes must match.
void copy_into(const DenseVector& x, DenseVector& y);

/// Fresh copy of x converted to precision p.
DenseVector converted(const DenseVector& x, Precision p);

/// x *= alpha at x's precision.
void scale_in_place(double alpha, DenseVector& x);

/// y += alpha * x at compute_precision(x, y); result stored at y's precision.
void axpy(double alpha, const DenseVector& x, DenseVector& y);

/// out = x + alpha * y at compute_precision of the three vectors involved,
/// stored at out's precision. out may alias x or y.
void add_scaled(const DenseVector& x, double alpha, const DenseVector& y, DenseVector& out);

/// Inner product accumulated at compute_precision(x, y). The returned double
/// carries the compute-precision result exactly.
double dot(const DenseVector& x, const DenseVector& y);

/// As dot(), but never below `floor_precision` (used where a formula is
/// pinned to fp32 while the data may be fp16).
double dot_at_least(const DenseVector& x, const DenseVector& y, Precision floor_precision);

/// sqrt(dot(x, x)) with the square root taken at the compute precision.
double norm2(const DenseVector& x);

}  // namespace f3r

#endif  // F3R_DENSE_VECTOR_HPP

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file csr.hpp
/// \brief Compressed-sparse-row matrices with 32-bit index arrays and values
/// stored at one of the three precisions, plus mixed-precision SpMV.

#ifndef F3R_CSR_HPP
#define F3R_CSR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "f3r/dense_vector.hpp"
#include "f3r/errors.hpp"
#include "f3r/precision.hpp"

namespace f3r {

class SparseCsr {
 public:
  using ValueStorage = std::variant<std::vector<double>, std::vector<float>, std::vector<Half>>;

  SparseCsr() = default;
  /// Takes ownership of fully formed CSR arrays; validates the invariants
  /// (monotone row_ptr, strictly increasing in-row columns, 32-bit bounds).
  SparseCsr(std::size_t n, std::vector<std::uint32_t> row_ptr, std::vector<std::uint32_t> col_idx,
            std::vector<double> values);
  SparseCsr(std::size_t n, std::vector<std::uint32_t> row_ptr, std::vector<std::uint32_t> col_idx,
            ValueStorage values);

  std::size_t rows() const { return n_; }
  std::size_t nnz() const { return col_idx_.size(); }
  Precision precision() const;

  const std::vector<std::uint32_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }
  ValueStorage& values() { return values_; }
  const ValueStorage& values() const { return values_; }

  template <class T>
  const std::vector<T>& values_as() const {
    return std::get<std::vector<T>>(values_);
  }

  /// Widened read of the k-th stored value (exact).
  double value_at(std::size_t k) const;

  /// Copy with values rounded to precision p (same index arrays).
  SparseCsr demoted(Precision p) const;

  /// Position of the diagonal entry in row i, if stored.
  std::optional<std::size_t> diagonal_index(std::size_t i) const;

  bool is_symmetric() const;

 private:
  void validate() const;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
  ValueStorage values_;
};

/// The same matrix held at several precisions for use at different nesting
/// levels. Lower-precision values are element-wise demotions of a64; all
/// replicas share identical index array content.
struct PrecisionReplicas {
  SparseCsr a64;
  std::optional<SparseCsr> a32;
  std::optional<SparseCsr> a16;

  const SparseCsr& at(Precision p) const;
};

/// Builds all three replicas from a P64 matrix.
PrecisionReplicas make_replicas(SparseCsr a64);

/// y = A * x computed at compute_precision(A storage, x storage); per-row
/// accumulation at the compute precision, result stored at y's precision.
void spmv(const SparseCsr& a, const DenseVector& x, DenseVector& y);

}  // namespace f3r

#endif  // F3R_CSR_HPP

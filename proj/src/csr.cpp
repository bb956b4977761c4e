// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/csr.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace f3r {

namespace {

constexpr std::size_t kIndexLimit = std::size_t{1} << 31;

template <class T>
std::vector<T> demoted_values(const std::vector<double>& src) {
  std::vector<T> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) out[i] = scalar_from_double<T>(src[i]);
  return out;
}

template <class TA, class TX, class TY>
void spmv_core(std::size_t n, const std::vector<std::uint32_t>& row_ptr,
               const std::vector<std::uint32_t>& col_idx, const std::vector<TA>& vals,
               const std::vector<TX>& x, std::vector<TY>& y) {
  using C = promote_t<TA, TX>;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    C acc{};
    const std::uint32_t end = row_ptr[i + 1];
    for (std::uint32_t k = row_ptr[i]; k < end; ++k) {
      acc += scalar_from_double<C>(to_double(vals[k])) * scalar_from_double<C>(to_double(x[col_idx[k]]));
    }
    y[i] = scalar_from_double<TY>(to_double(acc));
  }
}

}  // namespace

SparseCsr::SparseCsr(std::size_t n, std::vector<std::uint32_t> row_ptr,
                     std::vector<std::uint32_t> col_idx, std::vector<double> values)
    : SparseCsr(n, std::move(row_ptr), std::move(col_idx), ValueStorage(std::move(values))) {}

SparseCsr::SparseCsr(std::size_t n, std::vector<std::uint32_t> row_ptr,
                     std::vector<std::uint32_t> col_idx, ValueStorage values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
  validate();
}

void SparseCsr::validate() const {
  const std::size_t nnz = col_idx_.size();
  if (n_ >= kIndexLimit || nnz >= kIndexLimit) throw DimensionError("matrix exceeds 32-bit index range");
  if (row_ptr_.size() != n_ + 1) throw DimensionError("row_ptr length must be n+1");
  if (row_ptr_.front() != 0 || row_ptr_.back() != nnz) throw DimensionError("row_ptr endpoints invalid");
  const std::size_t stored = std::visit([](const auto& v) { return v.size(); }, values_);
  if (stored != nnz) throw DimensionError("values length must equal nnz");
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw DimensionError("row_ptr must be non-decreasing");
    for (std::uint32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_) {
        throw DimensionError("column index out of bounds in row " + std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw DimensionError("columns must be strictly increasing in row " + std::to_string(i));
      }
    }
  }
}

Precision SparseCsr::precision() const {
  switch (values_.index()) {
    case 1: return Precision::P32;
    case 2: return Precision::P16;
    default: return Precision::P64;
  }
}

double SparseCsr::value_at(std::size_t k) const {
  return std::visit([k](const auto& v) { return to_double(v[k]); }, values_);
}

SparseCsr SparseCsr::demoted(Precision p) const {
  const auto& src = values_as<double>();
  ValueStorage vals;
  switch (p) {
    case Precision::P16: vals = demoted_values<Half>(src); break;
    case Precision::P32: vals = demoted_values<float>(src); break;
    default: vals = src; break;
  }
  return SparseCsr(n_, row_ptr_, col_idx_, std::move(vals));
}

std::optional<std::size_t> SparseCsr::diagonal_index(std::size_t i) const {
  const auto begin = col_idx_.begin() + row_ptr_[i];
  const auto end = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(i));
  if (it == end || *it != i) return std::nullopt;
  return static_cast<std::size_t>(it - col_idx_.begin());
}

bool SparseCsr::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::uint32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::uint32_t j = col_idx_[k];
      if (j == i) continue;
      const auto begin = col_idx_.begin() + row_ptr_[j];
      const auto end = col_idx_.begin() + row_ptr_[j + 1];
      const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(i));
      if (it == end || *it != i) return false;
      const auto pos = static_cast<std::size_t>(it - col_idx_.begin());
      if (value_at(pos) != value_at(k)) return false;
    }
  }
  return true;
}

const SparseCsr& PrecisionReplicas::at(Precision p) const {
  switch (p) {
    case Precision::P64: return a64;
    case Precision::P32:
      if (!a32) throw SolverError("no fp32 replica available");
      return *a32;
    default:
      if (!a16) throw SolverError("no fp16 replica available");
      return *a16;
  }
}

PrecisionReplicas make_replicas(SparseCsr a64) {
  PrecisionReplicas r;
  r.a32 = a64.demoted(Precision::P32);
  r.a16 = a64.demoted(Precision::P16);
  r.a64 = std::move(a64);
  return r;
}

void spmv(const SparseCsr& a, const DenseVector& x, DenseVector& y) {
  if (x.size() != a.rows() || y.size() != a.rows()) {
    throw DimensionError("spmv: dimension mismatch");
  }
  std::visit(
      [&a](const auto& vals, const auto& xs, auto& ys) {
        spmv_core(a.rows(), a.row_ptr(), a.col_idx(), vals, xs, ys);
      },
      a.values(), x.storage(), y.storage());
}

}  // namespace f3r

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the test suites.

#ifndef F3R_TESTS_COMMON_HPP
#define F3R_TESTS_COMMON_HPP

#include <vector>

#include "dense.hpp"
#include "f3r/csr.hpp"
#include "f3r/rng.hpp"

namespace testutil {

inline f3r::SparseCsr csr_from_dense(const dense::Matrix& a, double drop_tol = 0.0) {
  const std::size_t n = a.size();
  std::vector<std::uint32_t> ptr(n + 1, 0);
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || std::abs(a[i][j]) > drop_tol) {
        idx.push_back(static_cast<std::uint32_t>(j));
        val.push_back(a[i][j]);
      }
    }
    ptr[i + 1] = static_cast<std::uint32_t>(idx.size());
  }
  return f3r::SparseCsr(n, std::move(ptr), std::move(idx), std::move(val));
}

inline dense::Matrix dense_from_csr(const f3r::SparseCsr& a) {
  dense::Matrix m(a.rows(), std::vector<double>(a.rows(), 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::uint32_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      m[i][a.col_idx()[k]] = a.value_at(k);
    }
  }
  return m;
}

/// Diagonally dominant random matrix: well conditioned, generally
/// non-symmetric.
inline dense::Matrix random_well_conditioned(std::size_t n, std::uint64_t seed) {
  f3r::SplitMix64 rng(seed);
  dense::Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      a[i][j] = rng.next_unit() - 0.5;
      off += std::abs(a[i][j]);
    }
    a[i][i] = off + 1.0 + rng.next_unit();
  }
  return a;
}

/// Random symmetric positive definite matrix: B^T B + n I.
inline dense::Matrix random_spd(std::size_t n, std::uint64_t seed) {
  f3r::SplitMix64 rng(seed);
  dense::Matrix b(n, std::vector<double>(n, 0.0));
  for (auto& row : b) {
    for (auto& v : row) v = rng.next_unit() - 0.5;
  }
  dense::Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b[k][i] * b[k][j];
      a[i][j] = s;
    }
    a[i][i] += static_cast<double>(n);
  }
  return a;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  f3r::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& e : v) e = rng.next_unit();
  return v;
}

}  // namespace testutil

#endif

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file ilu.hpp
/// \brief Block-Jacobi ILU(0)/IC(0) primary preconditioner.
///
/// Rows are partitioned into contiguous blocks (sizes n/nblocks with the
/// remainder spread over the leading blocks) and each diagonal block is
/// factorized independently with zero fill-in, so application never reads
/// across block boundaries. The factorization input has its diagonal entries
/// pre-multiplied by alpha; A itself is never modified. Factors are computed
/// at fp64 and then cast to the requested application precision.

#ifndef F3R_ILU_HPP
#define F3R_ILU_HPP

#include <cstdint>
#include <vector>

#include "f3r/csr.hpp"
#include "f3r/dense_vector.hpp"

namespace f3r {

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  /// z ~= A^{-1} r, computed at compute_precision(stored factors, r) and
  /// stored at z's precision.
  virtual void apply(const DenseVector& r, DenseVector& z) const = 0;
  virtual std::size_t rows() const = 0;
};

class IdentityPrecond final : public Preconditioner {
 public:
  explicit IdentityPrecond(std::size_t n) : n_(n) {}
  void apply(const DenseVector& r, DenseVector& z) const override;
  std::size_t rows() const override { return n_; }

 private:
  std::size_t n_;
};

struct IluConfig {
  std::size_t nblocks = 1;
  double alpha = 1.0;                           ///< diagonal boost, >= 1 typical
  bool symmetric = false;                       ///< IC(0) when true
  Precision apply_precision = Precision::P64;
};

class BlockJacobiIlu0 final : public Preconditioner {
 public:
  /// Factorizes A block by block. Throws FactorizationError naming the block
  /// and row on a zero pivot (ILU) or non-positive pivot (IC), and when
  /// casting the factors to the apply precision underflows a diagonal to zero.
  static BlockJacobiIlu0 factorize(const SparseCsr& a, const IluConfig& cfg);

  void apply(const DenseVector& r, DenseVector& z) const override;
  std::size_t rows() const override { return n_; }

  const IluConfig& config() const { return cfg_; }
  const std::vector<std::uint32_t>& block_ranges() const { return block_ranges_; }

 private:
  using Values = std::variant<std::vector<double>, std::vector<float>, std::vector<Half>>;

  template <class TF>
  void apply_typed(const std::vector<TF>& lo, const std::vector<TF>& up, const DenseVector& r,
                   DenseVector& z) const;

  std::size_t n_ = 0;
  IluConfig cfg_;
  std::vector<std::uint32_t> block_ranges_;  // nblocks+1 row offsets

  // Lower factor: strict lower triangle for ILU (unit diagonal implied),
  // full lower triangle including the diagonal for IC.
  std::vector<std::uint32_t> low_ptr_, low_idx_;
  Values low_vals_;
  // Upper factor with diagonal (ILU only; empty for IC).
  std::vector<std::uint32_t> up_ptr_, up_idx_;
  Values up_vals_;
};

}  // namespace f3r

#endif  // F3R_ILU_HPP

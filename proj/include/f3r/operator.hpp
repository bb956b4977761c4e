// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_OPERATOR_HPP
#define F3R_OPERATOR_HPP

#include <cstdint>

#include "f3r/csr.hpp"
#include "f3r/dense_vector.hpp"
#include "f3r/ilu.hpp"

namespace f3r {

/// The role interface every solver iterates against: a multiply action and a
/// preconditioning action. multiply is linear within rounding; precondition
/// may change between calls (an inner iterative solver is a valid, flexible
/// preconditioner).
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t size() const = 0;
  /// y = A x at compute_precision(A storage, x storage), stored at y's precision.
  virtual void multiply(const DenseVector& x, DenseVector& y) const = 0;
  /// z ~= A^{-1} v.
  virtual void precondition(const DenseVector& v, DenseVector& z) = 0;
};

/// Plain (A, M) pair; counts M applications for the reporting protocol.
class PreconditionedMatrix final : public LinearOperator {
 public:
  PreconditionedMatrix(const SparseCsr& a, const Preconditioner& m) : a_(&a), m_(&m) {}

  std::size_t size() const override { return a_->rows(); }
  void multiply(const DenseVector& x, DenseVector& y) const override { spmv(*a_, x, y); }
  void precondition(const DenseVector& v, DenseVector& z) override {
    ++precond_invocations_;
    m_->apply(v, z);
  }

  std::uint64_t precond_invocations() const { return precond_invocations_; }

 private:
  const SparseCsr* a_;
  const Preconditioner* m_;
  std::uint64_t precond_invocations_ = 0;
};

}  // namespace f3r

#endif  // F3R_OPERATOR_HPP

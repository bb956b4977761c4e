// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/ilu.hpp"

#include <cmath>
#include <string>

namespace f3r {

namespace {

std::string block_row_msg(const char* what, std::size_t block, std::size_t row) {
  return std::string(what) + " in block " + std::to_string(block) + ", row " + std::to_string(row);
}

template <class T>
std::vector<T> cast_values(const std::vector<double>& src) {
  std::vector<T> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) out[i] = scalar_from_double<T>(src[i]);
  return out;
}

struct WorkCsr {
  std::vector<std::uint32_t> ptr;
  std::vector<std::uint32_t> idx;
  std::vector<double> val;
  std::vector<std::uint32_t> diag;  // position of the diagonal entry per row
};

}  // namespace

void IdentityPrecond::apply(const DenseVector& r, DenseVector& z) const {
  if (r.size() != n_ || z.size() != n_) throw DimensionError("identity preconditioner: size mismatch");
  copy_into(r, z);
}

BlockJacobiIlu0 BlockJacobiIlu0::factorize(const SparseCsr& a, const IluConfig& cfg) {
  const std::size_t n = a.rows();
  if (cfg.nblocks == 0 || cfg.nblocks > n) throw FactorizationError("nblocks must be in [1, n]");
  if (cfg.alpha <= 0.0) throw FactorizationError("alpha must be positive");

  BlockJacobiIlu0 m;
  m.n_ = n;
  m.cfg_ = cfg;

  // Contiguous split; the remainder is spread over the leading blocks.
  const std::size_t base = n / cfg.nblocks;
  const std::size_t rem = n % cfg.nblocks;
  m.block_ranges_.resize(cfg.nblocks + 1);
  m.block_ranges_[0] = 0;
  for (std::size_t b = 0; b < cfg.nblocks; ++b) {
    m.block_ranges_[b + 1] = m.block_ranges_[b] + static_cast<std::uint32_t>(base + (b < rem ? 1 : 0));
  }

  const auto block_of = [&](std::size_t row) {
    std::size_t b = 0;
    while (m.block_ranges_[b + 1] <= row) ++b;
    return b;
  };

  // Working copy of A restricted to the diagonal blocks (IC keeps only the
  // lower triangle), with the diagonal pre-multiplied by alpha.
  WorkCsr w;
  w.ptr.assign(n + 1, 0);
  w.diag.assign(n, 0);
  for (std::size_t b = 0; b < cfg.nblocks; ++b) {
    const std::uint32_t lo = m.block_ranges_[b];
    const std::uint32_t hi = m.block_ranges_[b + 1];
    for (std::uint32_t i = lo; i < hi; ++i) {
      bool have_diag = false;
      for (std::uint32_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
        const std::uint32_t j = a.col_idx()[k];
        if (j < lo || j >= hi) continue;
        if (cfg.symmetric && j > i) continue;
        if (j == i) {
          have_diag = true;
          w.diag[i] = static_cast<std::uint32_t>(w.idx.size());
          w.val.push_back(a.value_at(k) * cfg.alpha);
        } else {
          w.val.push_back(a.value_at(k));
        }
        w.idx.push_back(j);
      }
      if (!have_diag) throw FactorizationError(block_row_msg("missing diagonal entry", b, i));
      w.ptr[i + 1] = static_cast<std::uint32_t>(w.idx.size());
    }
  }

  if (!cfg.symmetric) {
    // ILU(0), IKJ order with a column-position scratch per active row.
    std::vector<std::int64_t> pos(n, -1);
    for (std::size_t b = 0; b < cfg.nblocks; ++b) {
      const std::uint32_t lo = m.block_ranges_[b];
      const std::uint32_t hi = m.block_ranges_[b + 1];
      for (std::uint32_t i = lo; i < hi; ++i) {
        for (std::uint32_t k = w.ptr[i]; k < w.ptr[i + 1]; ++k) pos[w.idx[k]] = k;
        for (std::uint32_t k = w.ptr[i]; k < w.ptr[i + 1] && w.idx[k] < i; ++k) {
          const std::uint32_t prow = w.idx[k];
          w.val[k] /= w.val[w.diag[prow]];
          const double lik = w.val[k];
          for (std::uint32_t q = w.diag[prow] + 1; q < w.ptr[prow + 1]; ++q) {
            const std::int64_t p = pos[w.idx[q]];
            if (p >= 0) w.val[p] -= lik * w.val[q];
          }
        }
        for (std::uint32_t k = w.ptr[i]; k < w.ptr[i + 1]; ++k) pos[w.idx[k]] = -1;
        if (w.val[w.diag[i]] == 0.0) throw FactorizationError(block_row_msg("zero pivot", b, i));
      }
    }
  } else {
    // IC(0) on the lower-triangular pattern; the diagonal entry is the last
    // one in each working row.
    for (std::size_t b = 0; b < cfg.nblocks; ++b) {
      const std::uint32_t lo = m.block_ranges_[b];
      const std::uint32_t hi = m.block_ranges_[b + 1];
      for (std::uint32_t i = lo; i < hi; ++i) {
        for (std::uint32_t k = w.ptr[i]; k < w.ptr[i + 1]; ++k) {
          const std::uint32_t j = w.idx[k];
          // sum over common columns < j of rows i and j
          double s = w.val[k];
          std::uint32_t pi = w.ptr[i];
          std::uint32_t pj = w.ptr[j];
          while (pi < w.ptr[i + 1] && pj < w.ptr[j + 1] && w.idx[pi] < j && w.idx[pj] < j) {
            if (w.idx[pi] == w.idx[pj]) {
              s -= w.val[pi] * w.val[pj];
              ++pi;
              ++pj;
            } else if (w.idx[pi] < w.idx[pj]) {
              ++pi;
            } else {
              ++pj;
            }
          }
          if (j < i) {
            w.val[k] = s / w.val[w.diag[j]];
          } else {
            if (s <= 0.0) throw FactorizationError(block_row_msg("non-positive pivot", b, i));
            w.val[k] = std::sqrt(s);
          }
        }
      }
    }
  }

  // Split into the stored factors and cast to the apply precision.
  std::vector<double> low_vals, up_vals;
  m.low_ptr_.assign(n + 1, 0);
  m.up_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t k = w.ptr[i]; k < w.ptr[i + 1]; ++k) {
      const std::uint32_t j = w.idx[k];
      const bool lower = cfg.symmetric ? true : j < i;
      if (lower) {
        m.low_idx_.push_back(j);
        low_vals.push_back(w.val[k]);
      } else {
        m.up_idx_.push_back(j);
        up_vals.push_back(w.val[k]);
      }
    }
    m.low_ptr_[i + 1] = static_cast<std::uint32_t>(m.low_idx_.size());
    m.up_ptr_[i + 1] = static_cast<std::uint32_t>(m.up_idx_.size());
  }

  const auto check_diag = [&](double v, std::size_t row) {
    const double cast = demote(v, cfg.apply_precision);
    if (cast == 0.0 || !std::isfinite(cast)) {
      throw FactorizationError("casting factors to " + std::string(precision_name(cfg.apply_precision)) +
                               " lost the diagonal of row " + std::to_string(row) + "; block " +
                               std::to_string(block_of(row)));
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (cfg.symmetric) {
      check_diag(low_vals[m.low_ptr_[i + 1] - 1], i);
    } else {
      check_diag(up_vals[m.up_ptr_[i]], i);
    }
  }

  switch (cfg.apply_precision) {
    case Precision::P16:
      m.low_vals_ = cast_values<Half>(low_vals);
      m.up_vals_ = cast_values<Half>(up_vals);
      break;
    case Precision::P32:
      m.low_vals_ = cast_values<float>(low_vals);
      m.up_vals_ = cast_values<float>(up_vals);
      break;
    default:
      m.low_vals_ = std::move(low_vals);
      m.up_vals_ = std::move(up_vals);
      break;
  }
  return m;
}

template <class TF>
void BlockJacobiIlu0::apply_typed(const std::vector<TF>& lo, const std::vector<TF>& up,
                                  const DenseVector& r, DenseVector& z) const {
  std::visit(
      [&](const auto& rv, auto& zv) {
        using TR = typename std::decay_t<decltype(rv)>::value_type;
        using TZ = typename std::decay_t<decltype(zv)>::value_type;
        using C = promote_t<TF, TR>;
        const auto nblocks = static_cast<std::int64_t>(block_ranges_.size() - 1);
#pragma omp parallel for schedule(static)
        for (std::int64_t b = 0; b < nblocks; ++b) {
          const std::uint32_t blo = block_ranges_[b];
          const std::uint32_t bhi = block_ranges_[b + 1];
          std::vector<C> work(bhi - blo);
          if (!cfg_.symmetric) {
            // forward: unit lower triangular
            for (std::uint32_t i = blo; i < bhi; ++i) {
              C acc = scalar_from_double<C>(to_double(rv[i]));
              for (std::uint32_t k = low_ptr_[i]; k < low_ptr_[i + 1]; ++k) {
                acc = acc - scalar_from_double<C>(to_double(lo[k])) * work[low_idx_[k] - blo];
              }
              work[i - blo] = acc;
            }
            // backward: upper triangular, diagonal first in each row
            for (std::uint32_t i = bhi; i-- > blo;) {
              C acc = work[i - blo];
              for (std::uint32_t k = up_ptr_[i] + 1; k < up_ptr_[i + 1]; ++k) {
                acc = acc - scalar_from_double<C>(to_double(up[k])) * work[up_idx_[k] - blo];
              }
              work[i - blo] = acc / scalar_from_double<C>(to_double(up[up_ptr_[i]]));
            }
          } else {
            // L L^T solve; the diagonal entry is last in each row of L
            for (std::uint32_t i = blo; i < bhi; ++i) {
              C acc = scalar_from_double<C>(to_double(rv[i]));
              for (std::uint32_t k = low_ptr_[i]; k + 1 < low_ptr_[i + 1]; ++k) {
                acc = acc - scalar_from_double<C>(to_double(lo[k])) * work[low_idx_[k] - blo];
              }
              work[i - blo] = acc / scalar_from_double<C>(to_double(lo[low_ptr_[i + 1] - 1]));
            }
            for (std::uint32_t i = bhi; i-- > blo;) {
              const C xi = work[i - blo] / scalar_from_double<C>(to_double(lo[low_ptr_[i + 1] - 1]));
              work[i - blo] = xi;
              for (std::uint32_t k = low_ptr_[i]; k + 1 < low_ptr_[i + 1]; ++k) {
                work[low_idx_[k] - blo] = work[low_idx_[k] - blo] - scalar_from_double<C>(to_double(lo[k])) * xi;
              }
            }
          }
          for (std::uint32_t i = blo; i < bhi; ++i) {
            zv[i] = scalar_from_double<TZ>(to_double(work[i - blo]));
          }
        }
      },
      r.storage(), z.storage());
}

void BlockJacobiIlu0::apply(const DenseVector& r, DenseVector& z) const {
  if (r.size() != n_ || z.size() != n_) throw DimensionError("preconditioner apply: size mismatch");
  std::visit(
      [&](const auto& lv) {
        using TF = typename std::decay_t<decltype(lv)>::value_type;
        apply_typed<TF>(lv, std::get<std::vector<TF>>(up_vals_), r, z);
      },
      low_vals_);
}

}  // namespace f3r

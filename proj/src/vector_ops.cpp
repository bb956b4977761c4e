// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/dense_vector.hpp"

#include <cmath>
#include <cstddef>

namespace f3r {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

template <class C, class TX, class TY>
double dot_core(const std::vector<TX>& x, const std::vector<TY>& y) {
  C acc{};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc += scalar_from_double<C>(to_double(x[i])) * scalar_from_double<C>(to_double(y[i]));
  }
  return to_double(acc);
}

// Dispatch helper: run f with the accumulate type selected at runtime, never
// below `floor_p`.
template <class TX, class TY, class F>
double with_compute_type(Precision floor_p, const std::vector<TX>& x, const std::vector<TY>& y, F&& f) {
  const Precision cp = compute_precision(floor_p, compute_precision(precision_of_v<TX>, precision_of_v<TY>));
  switch (cp) {
    case Precision::P16: return f(Half{}, x, y);
    case Precision::P32: return f(float{}, x, y);
    default: return f(double{}, x, y);
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t n, Precision p) {
  switch (p) {
    case Precision::P16: values_ = std::vector<Half>(n); break;
    case Precision::P32: values_ = std::vector<float>(n); break;
    default: values_ = std::vector<double>(n); break;
  }
}

Precision DenseVector::precision() const {
  switch (values_.index()) {
    case 1: return Precision::P32;
    case 2: return Precision::P16;
    default: return Precision::P64;
  }
}

std::size_t DenseVector::size() const {
  return std::visit([](const auto& v) { return v.size(); }, values_);
}

double DenseVector::at(std::size_t i) const {
  return std::visit([i](const auto& v) { return to_double(v[i]); }, values_);
}

void DenseVector::set(std::size_t i, double value) {
  std::visit(
      [i, value](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        v[i] = scalar_from_double<T>(value);
      },
      values_);
}

void fill(DenseVector& x, double value) {
  std::visit(
      [value](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        const T t = scalar_from_double<T>(value);
        for (auto& e : v) e = t;
      },
      x.storage());
}

void copy_into(const DenseVector& x, DenseVector& y) {
  check_same_size(x.size(), y.size(), "copy");
  std::visit(
      [](const auto& src, auto& dst) {
        using T = typename std::decay_t<decltype(dst)>::value_type;
        const std::size_t n = src.size();
        for (std::size_t i = 0; i < n; ++i) dst[i] = scalar_from_double<T>(to_double(src[i]));
      },
      x.storage(), y.storage());
}

DenseVector converted(const DenseVector& x, Precision p) {
  DenseVector out(x.size(), p);
  copy_into(x, out);
  return out;
}

void scale_in_place(double alpha, DenseVector& x) {
  std::visit(
      [alpha](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        const T a = scalar_from_double<T>(alpha);
        for (auto& e : v) e = a * e;
      },
      x.storage());
}

void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  check_same_size(x.size(), y.size(), "axpy");
  std::visit(
      [alpha](const auto& xs, auto& ys) {
        using TX = typename std::decay_t<decltype(xs)>::value_type;
        using TY = typename std::decay_t<decltype(ys)>::value_type;
        using C = promote_t<TX, TY>;
        const C a = scalar_from_double<C>(alpha);
        const std::size_t n = xs.size();
        for (std::size_t i = 0; i < n; ++i) {
          const C t = a * scalar_from_double<C>(to_double(xs[i])) + scalar_from_double<C>(to_double(ys[i]));
          ys[i] = scalar_from_double<TY>(to_double(t));
        }
      },
      x.storage(), y.storage());
}

void add_scaled(const DenseVector& x, double alpha, const DenseVector& y, DenseVector& out) {
  check_same_size(x.size(), y.size(), "add_scaled");
  check_same_size(x.size(), out.size(), "add_scaled");
  std::visit(
      [alpha](const auto& xs, const auto& ys, auto& os) {
        using TX = typename std::decay_t<decltype(xs)>::value_type;
        using TY = typename std::decay_t<decltype(ys)>::value_type;
        using TO = typename std::decay_t<decltype(os)>::value_type;
        using C = promote_t<promote_t<TX, TY>, TO>;
        const C a = scalar_from_double<C>(alpha);
        const std::size_t n = xs.size();
        for (std::size_t i = 0; i < n; ++i) {
          const C t = scalar_from_double<C>(to_double(xs[i])) + a * scalar_from_double<C>(to_double(ys[i]));
          os[i] = scalar_from_double<TO>(to_double(t));
        }
      },
      x.storage(), y.storage(), out.storage());
}

double dot(const DenseVector& x, const DenseVector& y) {
  return dot_at_least(x, y, Precision::P16);
}

double dot_at_least(const DenseVector& x, const DenseVector& y, Precision floor_precision) {
  check_same_size(x.size(), y.size(), "dot");
  return std::visit(
      [floor_precision](const auto& xs, const auto& ys) {
        return with_compute_type(floor_precision, xs, ys, [](auto tag, const auto& a, const auto& b) {
          using C = decltype(tag);
          return dot_core<C>(a, b);
        });
      },
      x.storage(), y.storage());
}

double norm2(const DenseVector& x) {
  const double s = dot(x, x);
  switch (x.precision()) {
    case Precision::P16: return to_double(sqrt(Half(s)));
    case Precision::P32: return to_double(std::sqrt(static_cast<float>(s)));
    default: return std::sqrt(s);
  }
}

}  // namespace f3r

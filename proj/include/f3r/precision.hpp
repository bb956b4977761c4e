// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file precision.hpp
/// \brief The three storage precisions and the promotion rule shared by all
/// kernels: mixed-precision operations compute at the wider of their operand
/// precisions.

#ifndef F3R_PRECISION_HPP
#define F3R_PRECISION_HPP

#include <cstdint>
#include <string_view>

#include "f3r/half.hpp"

namespace f3r {

/// Storage precision tag. Ordered for promotion: P16 < P32 < P64.
enum class Precision : std::uint8_t { P16 = 0, P32 = 1, P64 = 2 };

constexpr Precision compute_precision(Precision a, Precision b) { return a < b ? b : a; }

constexpr std::string_view precision_name(Precision p) {
  switch (p) {
    case Precision::P16: return "f16";
    case Precision::P32: return "f32";
    default: return "f64";
  }
}

/// Unit roundoff of the precision (half ulp of 1).
constexpr double unit_roundoff(Precision p) {
  switch (p) {
    case Precision::P16: return 0x1p-11;
    case Precision::P32: return 0x1p-24;
    default: return 0x1p-53;
  }
}

template <class T>
struct precision_of;
template <>
struct precision_of<Half> {
  static constexpr Precision value = Precision::P16;
};
template <>
struct precision_of<float> {
  static constexpr Precision value = Precision::P32;
};
template <>
struct precision_of<double> {
  static constexpr Precision value = Precision::P64;
};
template <class T>
inline constexpr Precision precision_of_v = precision_of<T>::value;

/// Wider of two scalar storage types under the promotion order.
template <class A, class B>
using promote_t = std::conditional_t<(precision_of_v<A> < precision_of_v<B>), B, A>;

/// Round a binary64 value to precision `p` (round-to-nearest-even) and widen
/// the result back to binary64. demote(x, P64) == x. Overflow yields +-inf.
constexpr double demote(double x, Precision p) {
  switch (p) {
    case Precision::P16: return static_cast<double>(static_cast<float>(Half(x)));
    case Precision::P32: return static_cast<double>(static_cast<float>(x));
    default: return x;
  }
}

template <class T>
constexpr T scalar_from_double(double x) {
  return static_cast<T>(x);
}
template <>
constexpr Half scalar_from_double<Half>(double x) {
  return Half(x);
}

/// Exact widening of any stored scalar.
constexpr double to_double(Half x) { return static_cast<double>(static_cast<float>(x)); }
constexpr double to_double(float x) { return static_cast<double>(x); }
constexpr double to_double(double x) { return x; }

}  // namespace f3r

#endif  // F3R_PRECISION_HPP

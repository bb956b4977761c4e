// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

/// \file half.hpp
/// \brief Software IEEE 754 binary16 type.
///
/// Storage is a 16-bit pattern (1 sign, 5 exponent, 10 mantissa bits).
/// Conversions from binary32/binary64 use round-to-nearest-even; values with
/// magnitude >= 65520 overflow to infinity and subnormals are kept (no
/// flush-to-zero). Arithmetic widens both operands to binary32, computes
/// there, and rounds the result back to binary16.

#ifndef F3R_HALF_HPP
#define F3R_HALF_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <type_traits>

namespace f3r {

namespace detail {

constexpr std::uint16_t kHalfQuietNan = 0x7e00u;

constexpr std::uint16_t half_bits_from_float(float value) {
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(value);
  const auto sign = static_cast<std::uint16_t>((bits >> 16) & 0x8000u);
  const std::uint32_t mag = bits & 0x7fffffffu;
  if (mag > 0x7f800000u) return kHalfQuietNan;  // NaN payloads are not kept
  if (mag == 0x7f800000u) return static_cast<std::uint16_t>(sign | 0x7c00u);
  const std::uint32_t exp = mag >> 23;
  const std::uint32_t man = mag & 0x7fffffu;
  if (exp >= 113) {  // |value| >= 2^-14: normal halves (or overflow)
    std::uint32_t out = ((exp - 112u) << 10) | (man >> 13);
    const std::uint32_t rest = man & 0x1fffu;
    if (rest > 0x1000u || (rest == 0x1000u && (out & 1u))) ++out;
    if (out >= 0x7c00u) return static_cast<std::uint16_t>(sign | 0x7c00u);
    return static_cast<std::uint16_t>(sign | out);
  }
  if (exp >= 102) {  // 2^-25 <= |value| < 2^-14: subnormal halves
    const std::uint32_t full = man | 0x800000u;
    const unsigned shift = 126u - exp;  // 14..24
    std::uint32_t out = full >> shift;
    const std::uint32_t rest = full & ((1u << shift) - 1u);
    const std::uint32_t mid = 1u << (shift - 1u);
    if (rest > mid || (rest == mid && (out & 1u))) ++out;  // carry lands on 0x0400
    return static_cast<std::uint16_t>(sign | out);
  }
  return sign;  // rounds to +-0
}

constexpr std::uint16_t half_bits_from_double(double value) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
  const auto sign = static_cast<std::uint16_t>((bits >> 48) & 0x8000u);
  const std::uint64_t mag = bits & 0x7fffffffffffffffull;
  if (mag > 0x7ff0000000000000ull) return kHalfQuietNan;
  if (mag == 0x7ff0000000000000ull) return static_cast<std::uint16_t>(sign | 0x7c00u);
  const std::uint64_t exp = mag >> 52;
  const std::uint64_t man = mag & 0xfffffffffffffull;
  if (exp >= 1009) {
    auto out = static_cast<std::uint32_t>(((exp - 1008u) << 10) | (man >> 42));
    const std::uint64_t rest = man & 0x3ffffffffffull;
    const std::uint64_t mid = 0x20000000000ull;
    if (rest > mid || (rest == mid && (out & 1u))) ++out;
    if (out >= 0x7c00u) return static_cast<std::uint16_t>(sign | 0x7c00u);
    return static_cast<std::uint16_t>(sign | out);
  }
  if (exp >= 998) {
    const std::uint64_t full = man | 0x10000000000000ull;
    const unsigned shift = static_cast<unsigned>(1051u - exp);  // 43..53
    auto out = static_cast<std::uint32_t>(full >> shift);
    const std::uint64_t rest = full & ((1ull << shift) - 1ull);
    const std::uint64_t mid = 1ull << (shift - 1u);
    if (rest > mid || (rest == mid && (out & 1u))) ++out;
    return static_cast<std::uint16_t>(sign | out);
  }
  return sign;
}

/// Exact widening; every binary16 value is representable in binary32.
constexpr float float_from_half_bits(std::uint16_t h) {
  const std::uint32_t sign = static_cast<std::uint32_t>(h & 0x8000u) << 16;
  const std::uint32_t exp = (h >> 10) & 0x1fu;
  const std::uint32_t man = h & 0x3ffu;
  if (exp == 0) {
    if (man == 0) return std::bit_cast<float>(sign);
    int top = 9;
    while (((man >> top) & 1u) == 0) --top;
    const std::uint32_t fexp = static_cast<std::uint32_t>(top + 103);
    const std::uint32_t fman = (man ^ (1u << top)) << (23 - top);
    return std::bit_cast<float>(sign | (fexp << 23) | fman);
  }
  if (exp == 31) {
    if (man == 0) return std::bit_cast<float>(sign | 0x7f800000u);
    return std::bit_cast<float>(sign | 0x7fc00000u);
  }
  return std::bit_cast<float>(sign | ((exp + 112u) << 23) | (man << 13));
}

}  // namespace detail

class Half {
 public:
  constexpr Half() = default;
  explicit constexpr Half(float value) : bits_(detail::half_bits_from_float(value)) {}
  explicit constexpr Half(double value) : bits_(detail::half_bits_from_double(value)) {}
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  explicit constexpr Half(I value) : Half(static_cast<double>(value)) {}

  constexpr operator float() const { return detail::float_from_half_bits(bits_); }

  static constexpr Half from_bits(std::uint16_t bits) {
    Half h;
    h.bits_ = bits;
    return h;
  }
  constexpr std::uint16_t bits() const { return bits_; }

  friend constexpr Half operator+(Half a, Half b) { return Half(static_cast<float>(a) + static_cast<float>(b)); }
  friend constexpr Half operator-(Half a, Half b) { return Half(static_cast<float>(a) - static_cast<float>(b)); }
  friend constexpr Half operator*(Half a, Half b) { return Half(static_cast<float>(a) * static_cast<float>(b)); }
  friend constexpr Half operator/(Half a, Half b) { return Half(static_cast<float>(a) / static_cast<float>(b)); }
  constexpr Half operator-() const { return from_bits(static_cast<std::uint16_t>(bits_ ^ 0x8000u)); }

  Half& operator+=(Half o) { return *this = *this + o; }
  Half& operator-=(Half o) { return *this = *this - o; }
  Half& operator*=(Half o) { return *this = *this * o; }
  Half& operator/=(Half o) { return *this = *this / o; }

  friend constexpr bool operator==(Half a, Half b) { return static_cast<float>(a) == static_cast<float>(b); }
  friend constexpr bool operator!=(Half a, Half b) { return static_cast<float>(a) != static_cast<float>(b); }
  friend constexpr bool operator<(Half a, Half b) { return static_cast<float>(a) < static_cast<float>(b); }
  friend constexpr bool operator<=(Half a, Half b) { return static_cast<float>(a) <= static_cast<float>(b); }
  friend constexpr bool operator>(Half a, Half b) { return static_cast<float>(a) > static_cast<float>(b); }
  friend constexpr bool operator>=(Half a, Half b) { return static_cast<float>(a) >= static_cast<float>(b); }

 private:
  std::uint16_t bits_ = 0;
};

static_assert(sizeof(Half) == 2);
static_assert(std::is_trivially_copyable_v<Half>);

inline Half sqrt(Half x) { return Half(std::sqrt(static_cast<float>(x))); }
inline Half hypot(Half a, Half b) { return Half(std::hypot(static_cast<float>(a), static_cast<float>(b))); }
constexpr Half abs(Half x) { return Half::from_bits(static_cast<std::uint16_t>(x.bits() & 0x7fffu)); }
constexpr bool isfinite(Half x) { return (x.bits() & 0x7c00u) != 0x7c00u; }
constexpr bool isnan(Half x) { return (x.bits() & 0x7c00u) == 0x7c00u && (x.bits() & 0x3ffu) != 0; }

}  // namespace f3r

#endif  // F3R_HALF_HPP

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_RNG_HPP
#define F3R_RNG_HPP

#include <cstdint>

#include "f3r/dense_vector.hpp"

namespace f3r {

/// SplitMix64 (Steele, Lea, Flood / Vigna's reference constants). Fixed here
/// so right-hand sides are bit-reproducible across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): the top 53 bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// fp64 right-hand side with entries uniform in [0, 1).
inline DenseVector random_rhs(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> values(n);
  for (auto& v : values) v = rng.next_unit();
  return DenseVector(std::move(values));
}

}  // namespace f3r

#endif  // F3R_RNG_HPP

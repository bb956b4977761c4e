// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

// Software binary16 reference used only by tests. Decoding follows the IEEE
// field formula through ldexp; demotion searches the sorted table of all
// finite binary16 values and picks between the two enclosing neighbors, so it
// shares no code path with the bit-twiddling implementation it checks.

#ifndef F3R_TESTS_HALF_REFERENCE_HPP
#define F3R_TESTS_HALF_REFERENCE_HPP

#include <cstdint>

namespace halfref {

double decode(std::uint16_t bits);
bool is_finite_pattern(std::uint16_t bits);

/// Round-to-nearest-even demotion; |x| >= 65520 yields the infinity pattern.
std::uint16_t nearest(double x);

}  // namespace halfref

#endif

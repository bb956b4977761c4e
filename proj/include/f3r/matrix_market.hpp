// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_MATRIX_MARKET_HPP
#define F3R_MATRIX_MARKET_HPP

#include <iosfwd>

#include "f3r/csr.hpp"

namespace f3r {

/// Reads a Matrix Market coordinate-format stream (real/integer/pattern,
/// general/symmetric) into a square P64 CSR matrix. Symmetric storage is
/// expanded to full storage, duplicates are summed, rows come out sorted,
/// and pattern entries become 1.0. Throws ParseError on malformed input.
SparseCsr read_matrix_market(std::istream& in);

/// Writes full (general) coordinate-format real output; round-trips P64
/// values exactly.
void write_matrix_market(std::ostream& out, const SparseCsr& a);

}  // namespace f3r

#endif  // F3R_MATRIX_MARKET_HPP

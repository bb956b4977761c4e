// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#ifndef F3R_STENCIL_HPP
#define F3R_STENCIL_HPP

#include <string_view>

#include "f3r/csr.hpp"

namespace f3r {

/// 27-point stencil problem on a (2^log2_nx x 2^log2_ny x 2^log2_nz) grid
/// with lexicographic numbering (x fastest). Diagonal entries are 26 and
/// off-diagonals -1; with beta != 0 the two face neighbors along z carry
/// -1+beta (forward) and -1-beta (backward), making the matrix non-symmetric.
/// Boundary rows simply omit out-of-grid neighbors.
struct StencilSpec {
  int log2_nx = 1;
  int log2_ny = 1;
  int log2_nz = 1;
  double beta = 0.0;
};

/// Parses the "hpcg_X_Y_Z" / "hpgmp_X_Y_Z" naming scheme; hpgmp uses
/// beta = 0.5. Throws ParseError otherwise.
StencilSpec parse_stencil_name(std::string_view name);

SparseCsr generate_stencil(const StencilSpec& spec);

}  // namespace f3r

#endif  // F3R_STENCIL_HPP

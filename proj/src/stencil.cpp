// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/stencil.hpp"

#include <charconv>
#include <string>

namespace f3r {

namespace {

int parse_axis(std::string_view tok, std::string_view name) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("stencil name '" + std::string(name) + "': bad axis token '" + std::string(tok) + "'");
  }
  return v;
}

void check_spec(const StencilSpec& s) {
  for (int e : {s.log2_nx, s.log2_ny, s.log2_nz}) {
    if (e < 1 || e > 10) throw ParseError("stencil axis exponent out of range [1, 10]");
  }
  if (s.beta < 0.0 || s.beta >= 1.0) throw ParseError("stencil beta out of range [0, 1)");
}

}  // namespace

StencilSpec parse_stencil_name(std::string_view name) {
  StencilSpec spec;
  std::string_view rest;
  if (name.rfind("hpcg_", 0) == 0) {
    spec.beta = 0.0;
    rest = name.substr(5);
  } else if (name.rfind("hpgmp_", 0) == 0) {
    spec.beta = 0.5;
    rest = name.substr(6);
  } else {
    throw ParseError("stencil name '" + std::string(name) + "': expected hpcg_X_Y_Z or hpgmp_X_Y_Z");
  }
  const auto first = rest.find('_');
  const auto second = rest.rfind('_');
  if (first == std::string_view::npos || second == first) {
    throw ParseError("stencil name '" + std::string(name) + "': expected three axis tokens");
  }
  spec.log2_nx = parse_axis(rest.substr(0, first), name);
  spec.log2_ny = parse_axis(rest.substr(first + 1, second - first - 1), name);
  spec.log2_nz = parse_axis(rest.substr(second + 1), name);
  check_spec(spec);
  return spec;
}

SparseCsr generate_stencil(const StencilSpec& spec) {
  check_spec(spec);
  const std::int64_t nx = std::int64_t{1} << spec.log2_nx;
  const std::int64_t ny = std::int64_t{1} << spec.log2_ny;
  const std::int64_t nz = std::int64_t{1} << spec.log2_nz;
  const std::size_t n = static_cast<std::size_t>(nx * ny * nz);

  std::vector<std::uint32_t> row_ptr(n + 1, 0);
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(27 * n);
  values.reserve(27 * n);

  std::size_t row = 0;
  for (std::int64_t z = 0; z < nz; ++z) {
    for (std::int64_t y = 0; y < ny; ++y) {
      for (std::int64_t x = 0; x < nx; ++x, ++row) {
        // dz/dy/dx ascending yields strictly increasing linear indices.
        for (int dz = -1; dz <= 1; ++dz) {
          const std::int64_t zz = z + dz;
          if (zz < 0 || zz >= nz) continue;
          for (int dy = -1; dy <= 1; ++dy) {
            const std::int64_t yy = y + dy;
            if (yy < 0 || yy >= ny) continue;
            for (int dx = -1; dx <= 1; ++dx) {
              const std::int64_t xx = x + dx;
              if (xx < 0 || xx >= nx) continue;
              const std::int64_t col = xx + nx * (yy + ny * zz);
              double v = -1.0;
              if (dx == 0 && dy == 0 && dz == 0) {
                v = 26.0;
              } else if (dx == 0 && dy == 0 && dz == 1) {
                v = -1.0 + spec.beta;
              } else if (dx == 0 && dy == 0 && dz == -1) {
                v = -1.0 - spec.beta;
              }
              col_idx.push_back(static_cast<std::uint32_t>(col));
              values.push_back(v);
            }
          }
        }
        row_ptr[row + 1] = static_cast<std::uint32_t>(col_idx.size());
      }
    }
  }
  return SparseCsr(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

}  // namespace f3r

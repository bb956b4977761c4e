// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace f3r {

namespace {

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

}  // namespace

SparseCsr read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty stream");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw ParseError("matrix market: missing %%MatrixMarket banner");
  object = lowered(object);
  format = lowered(format);
  field = lowered(field);
  symmetry = lowered(symmetry);
  if (object != "matrix" || format != "coordinate") {
    throw ParseError("matrix market: only 'matrix coordinate' is supported, got '" + object + " " +
                     format + "'");
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError("matrix market: unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError("matrix market: unsupported symmetry '" + symmetry + "'");
  }
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  // Size line comes after any % comments.
  std::size_t nrows = 0, ncols = 0, declared_nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("matrix market: missing size line");
    if (line.empty() || line[0] == '%') continue;
    std::istringstream sz(line);
    if (!(sz >> nrows >> ncols >> declared_nnz)) throw ParseError("matrix market: malformed size line");
    break;
  }
  if (nrows != ncols) {
    throw ParseError("matrix market: non-square matrix (" + std::to_string(nrows) + " x " +
                     std::to_string(ncols) + ")");
  }

  std::vector<Entry> entries;
  entries.reserve(symmetric ? 2 * declared_nnz : declared_nnz);
  std::size_t seen = 0;
  while (seen < declared_nnz) {
    if (!std::getline(in, line)) throw ParseError("matrix market: unexpected end of stream");
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    long long i = 0, j = 0;
    double v = 1.0;
    if (!(ls >> i >> j)) throw ParseError("matrix market: malformed entry '" + line + "'");
    if (!pattern && !(ls >> v)) throw ParseError("matrix market: missing value in '" + line + "'");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > nrows || static_cast<std::size_t>(j) > ncols) {
      throw ParseError("matrix market: index out of bounds at entry (" + std::to_string(i) + ", " +
                       std::to_string(j) + ")");
    }
    const auto r = static_cast<std::uint32_t>(i - 1);
    const auto c = static_cast<std::uint32_t>(j - 1);
    entries.push_back({r, c, v});
    if (symmetric && r != c) entries.push_back({c, r, v});
    ++seen;
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });

  std::vector<std::uint32_t> row_ptr(nrows + 1, 0);
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(entries.size());
  values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0 && entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      values.back() += entries[k].value;  // duplicates sum
      continue;
    }
    col_idx.push_back(entries[k].col);
    values.push_back(entries[k].value);
    ++row_ptr[entries[k].row + 1];
  }
  for (std::size_t i = 0; i < nrows; ++i) row_ptr[i + 1] += row_ptr[i];

  return SparseCsr(nrows, std::move(row_ptr), std::move(col_idx), std::move(values));
}

void write_matrix_market(std::ostream& out, const SparseCsr& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << " " << a.rows() << " " << a.nnz() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::uint32_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", a.value_at(k));
      out << (i + 1) << " " << (a.col_idx()[k] + 1) << " " << buf << "\n";
    }
  }
}

}  // namespace f3r

// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include "f3r/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace f3r {

double fgmres_cost(const CostParams& p) { return p.c_a * p.m + p.c_m * p.m + 2.5 * p.m * p.m; }

double richardson_cost(const CostParams& p) {
  return p.c_a * (p.m - 1.0) + p.c_m * p.m + 4.0 * (p.m - 1.0);
}

double nested_fgmres_cost(double m_outer, double m_inner, const CostParams& p) {
  const CostParams inner{p.c_a, p.c_m, m_inner};
  return p.c_a * m_outer + fgmres_cost(inner) * m_outer + 2.5 * m_outer * m_outer;
}

double fgmres_richardson_cost(double m_outer, double m_inner, const CostParams& p) {
  const CostParams inner{p.c_a, p.c_m, m_inner};
  return p.c_a * m_outer + richardson_cost(inner) * m_outer + 2.5 * m_outer * m_outer;
}

std::vector<SplitOption> advise_split(const CostParams& p, bool allow_richardson) {
  std::vector<SplitOption> out;
  const int m = static_cast<int>(std::llround(p.m));
  out.reserve(static_cast<std::size_t>(m) * (allow_richardson ? 2 : 1));
  for (int mo = 1; mo <= m; ++mo) {
    const double mi = p.m / static_cast<double>(mo);
    out.push_back({mo, mi, InnerKind::Fgmres, nested_fgmres_cost(mo, mi, p)});
    if (allow_richardson) {
      out.push_back({mo, mi, InnerKind::Richardson, fgmres_richardson_cost(mo, mi, p)});
    }
  }
  std::sort(out.begin(), out.end(), [](const SplitOption& a, const SplitOption& b) {
    return std::tie(a.cost, a.m_outer, a.inner) < std::tie(b.cost, b.m_outer, b.inner);
  });
  return out;
}

}  // namespace f3r

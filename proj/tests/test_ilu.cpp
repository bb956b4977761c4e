// Copyright (c) 2026 The f3r authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "f3r/ilu.hpp"
#include "f3r/scaling.hpp"
#include "f3r/stencil.hpp"
#include "support/common.hpp"

using f3r::BlockJacobiIlu0;
using f3r::DenseVector;
using f3r::IluConfig;
using f3r::Precision;
using f3r::SparseCsr;

namespace {

DenseVector apply(const f3r::Preconditioner& m, const std::vector<double>& r) {
  DenseVector rv(r);
  DenseVector z(r.size(), Precision::P64);
  m.apply(rv, z);
  return z;
}

}  // namespace

TEST_CASE("identity matrix factorizes to identity factors") {
  SparseCsr eye(4, {0, 1, 2, 3, 4}, {0, 1, 2, 3}, std::vector<double>{1, 1, 1, 1});
  for (std::size_t blocks : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
    const auto m = BlockJacobiIlu0::factorize(eye, {blocks, 1.0, false, Precision::P64});
    const DenseVector z = apply(m, {1.0, 2.0, 3.0, 4.0});
    for (std::size_t i = 0; i < 4; ++i) CHECK(z.at(i) == static_cast<double>(i + 1));
  }
}

TEST_CASE("dense 2x2 factors match hand elimination") {
  SparseCsr a(2, {0, 2, 4}, {0, 1, 0, 1}, std::vector<double>{4.0, 1.0, 1.0, 4.0});
  SUBCASE("alpha = 1") {
    const auto m = BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P64});
    // L21 = 1/4, U = [[4, 1], [0, 3.75]]; full pattern, so M = A^{-1} exactly
    const DenseVector z = apply(m, {1.0, 1.0});
    // A z = r check
    CHECK(4.0 * z.at(0) + 1.0 * z.at(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(1.0 * z.at(0) + 4.0 * z.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("alpha = 1.2 boosts only the factorization input") {
    const auto m = BlockJacobiIlu0::factorize(a, {1, 1.2, false, Precision::P64});
    // factorization sees [[4.8, 1], [1, 4.8]]: L21 = 1/4.8, U22 = 4.8 - 1/4.8
    const DenseVector z = apply(m, {1.0, 0.0});
    const double u22 = 4.8 - 1.0 / 4.8;
    // forward: t = (1, -1/4.8); backward: z2 = t2/u22, z1 = (1 - z2)/4.8
    const double z2 = (-1.0 / 4.8) / u22;
    const double z1 = (1.0 - z2) / 4.8;
    CHECK(z.at(0) == doctest::Approx(z1).epsilon(1e-15));
    CHECK(z.at(1) == doctest::Approx(z2).epsilon(1e-15));
  }
}

TEST_CASE("one-row blocks reduce to the boosted Jacobi solve") {
  SparseCsr a(3, {0, 2, 5, 7}, {0, 1, 0, 1, 2, 1, 2},
              std::vector<double>{4.0, -1.0, -1.0, 5.0, -1.0, -1.0, 6.0});
  const double alpha = 1.5;
  const auto m = BlockJacobiIlu0::factorize(a, {3, alpha, false, Precision::P64});
  const DenseVector z = apply(m, {1.0, 1.0, 1.0});
  CHECK(z.at(0) == doctest::Approx(1.0 / (alpha * 4.0)).epsilon(1e-15));
  CHECK(z.at(1) == doctest::Approx(1.0 / (alpha * 5.0)).epsilon(1e-15));
  CHECK(z.at(2) == doctest::Approx(1.0 / (alpha * 6.0)).epsilon(1e-15));
}

TEST_CASE("ILU(0) with no dropped fill equals the exact inverse") {
  // block-diagonal pattern fully contained in the blocks
  dense::Matrix d = testutil::random_spd(6, 3);
  // zero the coupling between the two 3x3 blocks
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 3; j < 6; ++j) d[i][j] = d[j][i] = 0.0;
  }
  const SparseCsr a = testutil::csr_from_dense(d);
  const auto m = BlockJacobiIlu0::factorize(a, {2, 1.0, false, Precision::P64});
  const std::vector<double> r = testutil::random_vector(6, 17);
  const DenseVector z = apply(m, r);
  const std::vector<double> zref = dense::lu_solve(d, r);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(z.at(i) - zref[i]) <= 1e-12 * std::abs(zref[i]) + 1e-14);
  }
}

TEST_CASE("IC(0) application is symmetric") {
  const SparseCsr a = f3r::diagonal_scale(f3r::generate_stencil({2, 2, 2, 0.0})).matrix;
  const auto m = BlockJacobiIlu0::factorize(a, {2, 1.0, true, Precision::P64});
  const std::size_t n = a.rows();
  // (M e_i)_j == (M e_j)_i within fp64 rounding
  for (std::size_t i : {std::size_t{0}, std::size_t{5}, std::size_t{31}}) {
    for (std::size_t j : {std::size_t{1}, std::size_t{17}, std::size_t{40}}) {
      std::vector<double> ei(n, 0.0), ej(n, 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      const double mij = apply(m, ei).at(j);
      const double mji = apply(m, ej).at(i);
      CHECK(std::abs(mij - mji) <= 1e-12 * std::max(1.0, std::abs(mij)));
    }
  }
}

TEST_CASE("IC(0) equals ILU(0) action on a symmetric matrix up to rounding") {
  const SparseCsr a = f3r::diagonal_scale(f3r::generate_stencil({2, 2, 1, 0.0})).matrix;
  const auto mic = BlockJacobiIlu0::factorize(a, {1, 1.0, true, Precision::P64});
  const auto milu = BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P64});
  const std::vector<double> r = testutil::random_vector(a.rows(), 5);
  const DenseVector z1 = apply(mic, r);
  const DenseVector z2 = apply(milu, r);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    CHECK(z1.at(i) == doctest::Approx(z2.at(i)).epsilon(1e-12));
  }
}

TEST_CASE("apply is linear at fp64") {
  const SparseCsr a = f3r::diagonal_scale(f3r::generate_stencil({2, 2, 2, 0.5})).matrix;
  const auto m = BlockJacobiIlu0::factorize(a, {4, 1.0, false, Precision::P64});
  const std::size_t n = a.rows();
  const std::vector<double> r1 = testutil::random_vector(n, 23);
  const std::vector<double> r2 = testutil::random_vector(n, 29);
  const double s = 2.5;
  std::vector<double> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = s * r1[i] + r2[i];
  const DenseVector z_combo = apply(m, combo);
  const DenseVector z1 = apply(m, r1);
  const DenseVector z2 = apply(m, r2);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(z_combo.at(i) == doctest::Approx(s * z1.at(i) + z2.at(i)).epsilon(1e-12));
  }
}

TEST_CASE("factorization errors carry the block and row") {
  SUBCASE("missing diagonal") {
    SparseCsr a(2, {0, 1, 2}, {1, 0}, std::vector<double>{1.0, 1.0});
    CHECK_THROWS_WITH_AS(BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P64}),
                         doctest::Contains("row 0"), f3r::FactorizationError);
  }
  SUBCASE("IC rejects a non-positive pivot") {
    SparseCsr a(2, {0, 2, 4}, {0, 1, 0, 1}, std::vector<double>{1.0, 2.0, 2.0, 1.0});
    CHECK_THROWS_WITH_AS(BlockJacobiIlu0::factorize(a, {1, 1.0, true, Precision::P64}),
                         doctest::Contains("pivot"), f3r::FactorizationError);
  }
  SUBCASE("fp16 cast underflow of a factor diagonal") {
    SparseCsr a(1, {0, 1}, {0}, std::vector<double>{1e-9});
    CHECK_NOTHROW(BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P64}));
    CHECK_THROWS_WITH_AS(BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P16}),
                         doctest::Contains("f16"), f3r::FactorizationError);
  }
}

TEST_CASE("apply precision follows the compute-precision rule") {
  // fp16 factors with fp64 input: triangular solves run at fp64 on widened
  // factors, so exactly representable factors give exactly the fp64 result
  SparseCsr a(2, {0, 2, 4}, {0, 1, 0, 1}, std::vector<double>{4.0, 1.0, 1.0, 4.0});
  const auto m16 = BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P16});
  const auto m64 = BlockJacobiIlu0::factorize(a, {1, 1.0, false, Precision::P64});
  // factors: L21 = 0.25, U = [4, 1; 0, 3.75] are all exact in binary16
  const DenseVector z16 = apply(m16, {1.0, 2.0});
  const DenseVector z64 = apply(m64, {1.0, 2.0});
  CHECK(z16.at(0) == z64.at(0));
  CHECK(z16.at(1) == z64.at(1));
}

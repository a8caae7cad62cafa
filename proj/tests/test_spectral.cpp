// Copyright 2026 The saddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <saddle/spectral.hpp>

#include <gtest/gtest.h>

#include <Eigen/SVD>

#include "test_support.hpp"

namespace saddle {
namespace {

using testing::vec;

Matrix rank_one_corner() {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1;
  return A;
}

TEST(AnalyzeCoupling, RankOneCorner) {
  const auto r = analyze_coupling(rank_one_corner());
  EXPECT_DOUBLE_EQ(r.sigma_max, 1);
  EXPECT_DOUBLE_EQ(r.lambda_min_plus_AAt, 1);
  EXPECT_DOUBLE_EQ(r.lambda_min_AAt, 0);
  EXPECT_EQ(r.numerical_rank, 1);
}

TEST(AnalyzeCoupling, Diagonal) {
  const Matrix A = vec({3, 2}).asDiagonal();
  const auto r = analyze_coupling(A);
  EXPECT_NEAR(r.sigma_max, 3, 1e-14);
  EXPECT_NEAR(r.lambda_min_plus_AtA, 4, 1e-13);
  EXPECT_NEAR(r.lambda_min_AtA, 4, 1e-13);
  EXPECT_EQ(r.numerical_rank, 2);
}

TEST(AnalyzeCoupling, ZeroMatrixIsRejected) {
  try {
    analyze_coupling(Matrix::Zero(3, 2));
    FAIL() << "expected an error";
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("zero coupling"), std::string::npos);
  }
}

TEST(AnalyzeCoupling, SigmaMaxMatchesSvdAndPositiveEigenvaluesClearTheCutoff) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index m = 1 + trial % 9, n = 1 + (3 * trial) % 11;
    const Matrix A = testing::random_matrix(m, n, rng);
    const auto r = analyze_coupling(A);
    const Eigen::JacobiSVD<Matrix> svd(A);
    const Scalar s0 = svd.singularValues()(0);
    EXPECT_NEAR(r.sigma_max * r.sigma_max, s0 * s0, 1e-10 * s0 * s0);
    EXPECT_GE(r.lambda_min_plus_AAt, r.rank_tolerance * s0 * s0);
    EXPECT_GE(r.lambda_min_plus_AtA, r.rank_tolerance * s0 * s0);
    EXPECT_EQ(r.numerical_rank, std::min(m, n));
  }
}

TEST(AnalyzeCoupling, AAtAndAtAShareTheirNonzeroSpectrum) {
  std::mt19937_64 rng(6);
  for (const auto& [m, n] : {std::pair{50, 80}, std::pair{80, 50}, std::pair{7, 3},
                             std::pair{12, 12}}) {
    Matrix A = testing::random_matrix(m, n, rng);
    A.col(0).setZero();  // force a kernel on both sides for square shapes
    const auto left = detail::symmetric_spectrum(A * A.transpose(), A.squaredNorm(), 1e-10);
    const auto right = detail::symmetric_spectrum(A.transpose() * A, A.squaredNorm(), 1e-10);
    const Scalar top = left.eigenvalues.maxCoeff();
    ASSERT_EQ(left.rank, right.rank);
    const Vector l = left.eigenvalues.tail(left.rank);
    const Vector r = right.eigenvalues.tail(right.rank);
    EXPECT_LE((l - r).cwiseAbs().maxCoeff(), 1e-9 * top);
    const auto report = analyze_coupling(A);
    EXPECT_NEAR(report.lambda_min_plus_AAt, report.lambda_min_plus_AtA, 1e-9 * top);
  }
}

TEST(DeriveMu, RankOneWithBothFlags) {
  const auto [mu_xy, mu_yx] = derive_mu_constants(analyze_coupling(rank_one_corner()), true, true);
  EXPECT_DOUBLE_EQ(mu_xy, 1);
  EXPECT_DOUBLE_EQ(mu_yx, 1);
}

TEST(DeriveMu, RankOneWithoutFlags) {
  const auto [mu_xy, mu_yx] =
      derive_mu_constants(analyze_coupling(rank_one_corner()), false, false);
  EXPECT_DOUBLE_EQ(mu_xy, 0);
  EXPECT_DOUBLE_EQ(mu_yx, 0);
}

TEST(DeriveMu, SquareFullRankIgnoresFlags) {
  const Matrix A = vec({3, 2}).asDiagonal();
  for (bool g_flag : {false, true}) {
    for (bool f_flag : {false, true}) {
      const auto [mu_xy, mu_yx] = derive_mu_constants(analyze_coupling(A), g_flag, f_flag);
      EXPECT_NEAR(mu_xy, 2, 1e-13);
      EXPECT_NEAR(mu_yx, 2, 1e-13);
    }
  }
}

TEST(DeriveMu, FullRowRankIsPositiveAndZeroRowKeepsItUnderTheRangeFlag) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix A = testing::random_matrix(4, 9, rng);
    const auto [mu_xy, unused] = derive_mu_constants(analyze_coupling(A), false, false);
    EXPECT_GT(mu_xy, 0);
    Matrix padded = Matrix::Zero(5, 9);
    padded.topRows(4) = A;
    const auto [mu_padded, unused2] = derive_mu_constants(analyze_coupling(padded), true, false);
    EXPECT_NEAR(mu_padded, mu_xy, 1e-10 * mu_xy);
  }
}

TEST(ProjectOntoRange, RankOneCorner) {
  const Vector p = project_onto_range(rank_one_corner(), vec({1, 1}), RangeSide::range_A);
  EXPECT_NEAR((p - vec({1, 0})).norm(), 0, 1e-14);
}

TEST(ProjectOntoRange, RowVectorTransposeRange) {
  Matrix A(1, 2);
  A << 1, 1;
  const Vector p = project_onto_range(A, vec({1, 0}), RangeSide::range_At);
  EXPECT_NEAR((p - vec({0.5, 0.5})).norm(), 0, 1e-14);
}

TEST(ProjectOntoRange, VectorsInTheRangeAreUnchanged) {
  std::mt19937_64 rng(9);
  const Matrix A = testing::random_matrix(6, 3, rng);
  const Vector v = A * testing::random_vector(3, rng);
  EXPECT_LE((project_onto_range(A, v, RangeSide::range_A) - v).norm(), 1e-12 * v.norm());
}

TEST(ProjectOntoRange, IdempotentContractiveAndOrthogonal) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix A = testing::random_matrix(7, 5, rng);
    A.col(trial % 5).setZero();
    for (RangeSide side : {RangeSide::range_A, RangeSide::range_At}) {
      const Eigen::Index n = side == RangeSide::range_A ? 7 : 5;
      const Vector v = testing::random_vector(n, rng);
      const Vector p = project_onto_range(A, v, side);
      const Vector pp = project_onto_range(A, p, side);
      EXPECT_LE((pp - p).norm(), 1e-12 * (1 + v.norm()));
      EXPECT_LE(p.norm(), v.norm() * (1 + 1e-14));
      const Matrix M = side == RangeSide::range_A ? A : Matrix(A.transpose());
      EXPECT_LE((M.transpose() * (v - p)).norm(), 1e-10 * (1 + v.norm()) * M.norm());
    }
  }
}

TEST(WithCouplingConstants, KeepsFunctionModuliAndFillsCoupling) {
  SmoothnessSpec s;
  s.L_x = 2;
  s.mu_x = 1;
  s.range_g_in_range_A = true;
  const auto out = with_coupling_constants(s, rank_one_corner());
  EXPECT_EQ(out.L_x, 2);
  EXPECT_EQ(out.mu_x, 1);
  EXPECT_DOUBLE_EQ(out.L_xy, 1);
  EXPECT_DOUBLE_EQ(out.mu_xy, 1);
  EXPECT_DOUBLE_EQ(out.mu_yx, 0);
}

}  // namespace
}  // namespace saddle

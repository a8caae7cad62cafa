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

#ifndef SADDLE_SPECTRAL_HPP
#define SADDLE_SPECTRAL_HPP

#include <saddle/core.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <utility>

namespace saddle {

/// Spectral data of a coupling matrix A.
struct SpectralReport {
  Scalar sigma_max = 0;
  Scalar lambda_min_plus_AAt = 0;
  Scalar lambda_min_plus_AtA = 0;
  Scalar lambda_min_AAt = 0;
  Scalar lambda_min_AtA = 0;
  int numerical_rank = 0;
  Scalar rank_tolerance = 1e-10;
};

inline constexpr Scalar kDefaultRankTolerance = 1e-10;

namespace detail {

struct SymmetricSpectrum {
  Vector eigenvalues;  // ascending
  Scalar lambda_min = 0;
  Scalar lambda_min_plus = 0;
  int rank = 0;
};

inline SymmetricSpectrum symmetric_spectrum(const Matrix& S,
                                            Scalar lambda_max,
                                            Scalar rank_tolerance) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(S, Eigen::EigenvaluesOnly);
  SymmetricSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  const Scalar cutoff = rank_tolerance * lambda_max;
  out.lambda_min = std::max<Scalar>(0, out.eigenvalues(0));
  out.lambda_min_plus = 0;
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    if (out.eigenvalues(i) > cutoff) {
      if (out.rank == 0) out.lambda_min_plus = out.eigenvalues(i);
      ++out.rank;
    }
  }
  // Values below the numerical-rank cutoff are rounding noise around zero.
  if (out.lambda_min <= cutoff) out.lambda_min = 0;
  return out;
}

}  // namespace detail

/// Full symmetric eigendecomposition of A A^T and A^T A. lambda_min_plus is
/// the smallest eigenvalue above rank_tolerance * lambda_max.
inline SpectralReport analyze_coupling(
    const Matrix& A, Scalar rank_tolerance = kDefaultRankTolerance) {
  detail::require(A.size() > 0, "coupling matrix is empty");
  detail::require(rank_tolerance > 0, "rank_tolerance must be positive");
  const Matrix AAt = A * A.transpose();
  const Matrix AtA = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<Matrix> small(
      AAt.rows() <= AtA.rows() ? AAt : AtA, Eigen::EigenvaluesOnly);
  const Scalar lambda_max = small.eigenvalues().maxCoeff();
  if (!(lambda_max > 0)) throw ContractViolation("zero coupling");

  const auto left = detail::symmetric_spectrum(AAt, lambda_max, rank_tolerance);
  const auto right = detail::symmetric_spectrum(AtA, lambda_max, rank_tolerance);

  SpectralReport report;
  report.sigma_max = std::sqrt(lambda_max);
  report.lambda_min_plus_AAt = left.lambda_min_plus;
  report.lambda_min_plus_AtA = right.lambda_min_plus;
  report.lambda_min_AAt = left.lambda_min;
  report.lambda_min_AtA = right.lambda_min;
  report.numerical_rank = std::min(left.rank, right.rank);
  report.rank_tolerance = rank_tolerance;
  return report;
}

/// (mu_xy, mu_yx) from the spectral report. The range flags select the
/// smallest positive eigenvalue instead of the smallest eigenvalue.
inline std::pair<Scalar, Scalar> derive_mu_constants(
    const SpectralReport& report, bool range_g_in_range_A,
    bool range_f_in_range_At) {
  const Scalar mu_xy_sq =
      range_g_in_range_A ? report.lambda_min_plus_AAt : report.lambda_min_AAt;
  const Scalar mu_yx_sq =
      range_f_in_range_At ? report.lambda_min_plus_AtA : report.lambda_min_AtA;
  return {std::sqrt(mu_xy_sq), std::sqrt(mu_yx_sq)};
}

enum class RangeSide { range_A, range_At };

/// Orthogonal projection onto range(A) (vectors of length rows(A)) or
/// range(A^T) (length cols(A)).
inline Vector project_onto_range(const Matrix& A, const Vector& v,
                                 RangeSide side) {
  const Matrix& M = side == RangeSide::range_A ? A : Matrix(A.transpose());
  detail::require_dim(v.size(), M.rows(), "project_onto_range vector");
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(M);
  cod.setThreshold(kDefaultRankTolerance);
  // M * argmin ||M w - v|| is the projection onto range(M).
  return M * cod.solve(v);
}

/// Completes the coupling constants of a SmoothnessSpec from an explicit matrix, keeping
/// the f/g moduli and range flags already in `spec`.
inline SmoothnessSpec with_coupling_constants(
    SmoothnessSpec spec, const Matrix& A,
    Scalar rank_tolerance = kDefaultRankTolerance) {
  const auto report = analyze_coupling(A, rank_tolerance);
  spec.L_xy = report.sigma_max;
  std::tie(spec.mu_xy, spec.mu_yx) = derive_mu_constants(
      report, spec.range_g_in_range_A, spec.range_f_in_range_At);
  return spec;
}

}  // namespace saddle

#endif  // SADDLE_SPECTRAL_HPP

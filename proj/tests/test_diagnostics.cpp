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

#include <saddle/apdg.hpp>
#include <saddle/diagnostics.hpp>
#include <saddle/gdae.hpp>
#include <saddle/problems.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace saddle {
namespace {

using testing::mat1;
using testing::vec;

std::vector<Scalar> geometric(Scalar ratio, int n, Scalar start = 1) {
  std::vector<Scalar> out;
  for (int k = 0; k < n; ++k) out.push_back(start * std::pow(ratio, k));
  return out;
}

SmoothnessSpec scsc(Scalar kappa) {
  SmoothnessSpec s;
  s.L_x = s.L_y = kappa;
  s.mu_x = s.mu_y = 1;
  s.L_xy = 1;
  return s;
}

TEST(FitLinearRate, ExactGeometricSeries) {
  const auto series = geometric(0.9, 100, 3);
  const auto fit = fit_linear_rate(series);
  EXPECT_NEAR(fit.rate, 0.9, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1, 1e-12);
  EXPECT_EQ(fit.points, 90);
  EXPECT_TRUE(fit.converging());
}

TEST(FitLinearRate, ConstantSeriesIsNotConverging) {
  const std::vector<Scalar> series(50, 2.5);
  const auto fit = fit_linear_rate(series);
  EXPECT_DOUBLE_EQ(fit.rate, 1);
  EXPECT_DOUBLE_EQ(fit.r_squared, 1);
  EXPECT_FALSE(fit.converging());
}

TEST(FitLinearRate, TooFewPointsIsAContractViolation) {
  EXPECT_THROW(fit_linear_rate(geometric(0.5, 25)), ContractViolation);
  EXPECT_NO_THROW(fit_linear_rate(geometric(0.5, 30)));
  EXPECT_THROW(fit_linear_rate(geometric(0.5, 30), -1), ContractViolation);
}

TEST(FitLinearRate, StopsAtTheFirstNonpositiveValue) {
  auto series = geometric(0.8, 100);
  series[40] = 0;
  series[41] = 5;  // ignored
  const auto fit = fit_linear_rate(series);
  EXPECT_EQ(fit.points, 30);
  EXPECT_NEAR(fit.rate, 0.8, 1e-12);
  series[25] = std::numeric_limits<Scalar>::quiet_NaN();
  EXPECT_THROW(fit_linear_rate(series), ContractViolation);
}

TEST(FitLinearRate, NoisyGrowthHasRateAboveOne) {
  std::vector<Scalar> series;
  for (int k = 0; k < 60; ++k) series.push_back(std::pow(1.05, k) * (k % 2 ? 1.2 : 0.8));
  const auto fit = fit_linear_rate(series, 0);
  EXPECT_GT(fit.rate, 1);
  EXPECT_LT(fit.r_squared, 1);
}

TEST(FitLinearRate, APDGRunIsLinearAndNoSlowerThanTheSchedule) {
  const auto inst = testing::shipped_instances().front();
  const auto p = schedule_params(inst.spec, Regime::a);
  StoppingRule stop;
  stop.residual_tol = 1e-11;
  stop.max_iterations = 5000;
  const auto record = run_apdg(inst.problem(), p,
                               {Vector::Ones(inst.A.cols()), Vector::Ones(inst.A.rows())}, stop);
  ASSERT_EQ(record.status, RunStatus::converged);
  const auto fit = fit_linear_rate(record);
  EXPECT_LE(fit.rate, p.theta + 0.02);
  EXPECT_GE(fit.r_squared, 0.98);
}

TEST(TheoreticalComplexity, StronglyConvexConcave) {
  for (Scalar kappa : {4.0, 16.0, 100.0}) {
    const auto apdg = theoretical_complexity(scsc(kappa), Method::apdg);
    const auto gdae = theoretical_complexity(scsc(kappa), Method::gdae);
    EXPECT_NEAR(apdg.T[Regime::a], std::sqrt(kappa), 1e-12);
    EXPECT_NEAR(gdae.T[Regime::a], kappa, 1e-12);
    EXPECT_EQ(apdg.best_regime, Regime::a);
    EXPECT_EQ(apdg.T[Regime::d], kInf);
  }
}

TEST(TheoreticalComplexity, BilinearRegimeD) {
  SmoothnessSpec s;
  s.L_xy = 5;
  s.mu_xy = s.mu_yx = 1;
  const auto apdg = theoretical_complexity(s, Method::apdg);
  const auto gdae = theoretical_complexity(s, Method::gdae);
  EXPECT_DOUBLE_EQ(apdg.T[Regime::d], 25);
  EXPECT_DOUBLE_EQ(gdae.T[Regime::d], 25);
  EXPECT_EQ(apdg.best_regime, Regime::d);
  EXPECT_EQ(apdg.T[Regime::a], kInf);
}

TEST(TheoreticalComplexity, RegimeBAndCClosedForms) {
  SmoothnessSpec s;
  s.L_x = 9;
  s.mu_x = 1;
  s.L_y = 4;
  s.L_xy = 2;
  s.mu_xy = 1;
  const auto apdg = theoretical_complexity(s, Method::apdg);
  EXPECT_DOUBLE_EQ(apdg.T[Regime::b], std::max({6.0, 2.0 * 3.0, 4.0}));
  const auto gdae = theoretical_complexity(s, Method::gdae);
  EXPECT_DOUBLE_EQ(gdae.T[Regime::b], std::max({9.0, 36.0, 4.0}));
  std::swap(s.L_x, s.L_y);
  std::swap(s.mu_x, s.mu_y);
  std::swap(s.mu_xy, s.mu_yx);
  EXPECT_DOUBLE_EQ(theoretical_complexity(s, Method::apdg).T[Regime::c], apdg.T[Regime::b]);
  EXPECT_DOUBLE_EQ(theoretical_complexity(s, Method::gdae).T[Regime::c], gdae.T[Regime::b]);
}

TEST(TheoreticalComplexity, ViolatedConditionIsAConfigurationError) {
  SmoothnessSpec s;
  s.L_x = s.L_y = s.L_xy = 1;
  s.mu_x = 1;
  try {
    theoretical_complexity(s, Method::apdg);
    FAIL() << "expected ConfigurationError";
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("linear convergence condition"), std::string::npos);
  }
  EXPECT_THROW(theoretical_complexity(s, Method::gdae), ConfigurationError);
}

TEST(TheoreticalComplexity, MonotoneInTheConstants) {
  std::mt19937_64 rng(60);
  std::uniform_real_distribution<Scalar> u(0.1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    SmoothnessSpec s;
    s.L_x = 1 + 10 * u(rng);
    s.L_y = 1 + 10 * u(rng);
    s.L_xy = 1 + 10 * u(rng);
    s.mu_x = u(rng);
    s.mu_y = u(rng);
    s.mu_xy = u(rng);
    s.mu_yx = u(rng);
    for (Method m : {Method::apdg, Method::gdae}) {
      const Scalar base = theoretical_complexity(s, m).T.min();
      SmoothnessSpec harder = s;
      harder.L_x *= 2;
      harder.L_xy *= 1.5;
      EXPECT_GE(theoretical_complexity(harder, m).T.min(), base * (1 - 1e-12));
      SmoothnessSpec easier = s;
      easier.mu_x = std::min(easier.L_x, easier.mu_x * 2);
      easier.mu_yx = std::min(easier.L_xy, easier.mu_yx * 2);
      EXPECT_LE(theoretical_complexity(easier, m).T.min(), base * (1 + 1e-12));
    }
    // Accelerated complexity never exceeds the unaccelerated one in regime a.
    EXPECT_LE(theoretical_complexity(s, Method::apdg).T[Regime::a],
              theoretical_complexity(s, Method::gdae).T[Regime::a]);
  }
}

TEST(DualityGap, ScalarRidge) {
  const auto inst = make_ridge_erm_from(mat1(1), vec({1}), 1);
  EXPECT_NEAR(duality_gap(inst, {vec({0.5}), vec({-0.5})}), 0, 1e-15);
  EXPECT_NEAR(duality_gap(inst, {vec({0}), vec({0})}), 0.5, 1e-15);
}

TEST(DualityGap, InfiniteOutsideTheConjugateDomain) {
  const auto inst = make_bilinear_from(mat1(2), vec({2}), vec({4}));
  EXPECT_EQ(duality_gap(inst, {vec({0}), vec({0})}), kInf);
  EXPECT_NEAR(duality_gap(inst, inst.reference), 0, 1e-12);
  EXPECT_THROW(duality_gap(inst, {vec({0, 1}), vec({0})}), ContractViolation);
}

TEST(DualityGap, NonnegativeAlongRuns) {
  for (const auto& inst : testing::shipped_instances()) {
    if (inst.spec.mu_x == 0 || inst.spec.mu_y == 0) continue;  // gap is +inf off the domain
    const auto problem = inst.problem();
    const auto p = schedule_params(inst.spec);
    std::mt19937_64 rng(61);
    APDGState s = APDGState::initial(
        {testing::random_vector(problem.dim_x, rng), testing::random_vector(problem.dim_y, rng)});
    for (int k = 0; k < 100; ++k) {
      s = apdg_step(problem, p, s);
      const Scalar gap = duality_gap(inst, s.point());
      EXPECT_GE(gap, -1e-10 * (1 + std::abs(inst.primal_value(s.x)))) << inst.name;
    }
  }
}

}  // namespace
}  // namespace saddle

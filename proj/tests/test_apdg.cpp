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
#include <saddle/problems.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace saddle {
namespace {

using testing::vec;

SmoothnessSpec symmetric_scsc() {
  SmoothnessSpec s;
  s.L_x = 4;
  s.mu_x = 1;
  s.L_y = 4;
  s.mu_y = 1;
  s.L_xy = 1;
  return s;
}

SmoothnessSpec random_spec(std::mt19937_64& rng, bool strongly_convex, bool coupled) {
  std::uniform_real_distribution<Scalar> log_unif(-2, 2);
  std::uniform_real_distribution<Scalar> unit(0.05, 1);
  auto pos = [&] { return std::pow(10.0, log_unif(rng)); };
  SmoothnessSpec s;
  s.L_x = pos();
  s.L_y = pos();
  s.L_xy = pos();
  if (strongly_convex) {
    s.mu_x = s.L_x * unit(rng);
    s.mu_y = s.L_y * unit(rng);
  }
  if (coupled) {
    s.mu_xy = s.L_xy * unit(rng);
    s.mu_yx = s.L_xy * unit(rng);
  }
  return s;
}

APDGParams hand_params() {
  APDGParams p;
  p.eta_x = p.eta_y = 0.1;
  p.alpha_x = p.alpha_y = 1;
  p.beta_x = p.beta_y = 0.1;
  p.tau_x = p.tau_y = 0.5;
  p.sigma_x = p.sigma_y = 0.5;
  p.theta = 0.9;
  return APDGParams::checked(p);
}

TEST(ScheduleParams, RegimeAClosedForm) {
  const auto p = schedule_params(symmetric_scsc(), Regime::a);
  EXPECT_EQ(p.regime, Regime::a);
  EXPECT_NEAR(p.sigma_x, std::sqrt(0.125), 1e-12);
  EXPECT_NEAR(p.sigma_y, std::sqrt(0.125), 1e-12);
  EXPECT_DOUBLE_EQ(p.delta, 1);
  EXPECT_NEAR(p.eta_x, 1 / (4 * (1 + 4 * std::sqrt(0.125))), 1e-12);
  EXPECT_NEAR(p.eta_x, 0.103553, 1e-6);
  EXPECT_NEAR(p.eta_y, p.eta_x, 1e-15);
  EXPECT_DOUBLE_EQ(p.beta_x, 0.125);
  EXPECT_DOUBLE_EQ(p.beta_y, 0.125);
  EXPECT_NEAR(p.tau_x, 1 / (1 / std::sqrt(0.125) + 0.5), 1e-12);
  EXPECT_NEAR(p.tau_x, 0.300442, 1e-6);
  EXPECT_DOUBLE_EQ(p.alpha_x, 1);
  const auto inv = apdg_inverse_rhos(symmetric_scsc(), p.delta, p.sigma_x, p.sigma_y);
  EXPECT_NEAR(inv[Regime::a], 9.65685, 1e-5);
  EXPECT_NEAR(p.theta, 0.896447, 1e-6);
}

TEST(ScheduleParams, BilinearSelectsRegimeD) {
  const auto inst = make_bilinear(6, 41);
  EXPECT_EQ(schedule_params(inst.spec).regime, Regime::d);
  EXPECT_EQ(select_apdg_regime(inst.spec), Regime::d);
}

TEST(ScheduleParams, RegimeWithMissingModulusIsAConfigurationError) {
  SmoothnessSpec s = symmetric_scsc();
  s.mu_y = 0;
  try {
    schedule_params(s, Regime::a);
    FAIL() << "expected ConfigurationError";
  } catch (const ConfigurationError& e) {
    EXPECT_NE(std::string(e.what()).find("mu_y"), std::string::npos);
  }
}

TEST(ScheduleParams, NoApplicableRegime) {
  SmoothnessSpec s;
  s.L_x = 1;
  s.L_y = 1;
  s.L_xy = 1;
  s.mu_x = 1;
  EXPECT_THROW(schedule_params(s), ConfigurationError);
}

TEST(ScheduleParams, AsPrintedRuleReusesSigmaX) {
  SmoothnessSpec s = symmetric_scsc();
  s.L_y = 9;
  const auto p = schedule_params(s, Regime::a, SigmaYRule::as_printed);
  EXPECT_DOUBLE_EQ(p.sigma_y, p.sigma_x);
  const auto q = schedule_params(s, Regime::a, SigmaYRule::symmetric);
  EXPECT_NEAR(q.sigma_y, std::sqrt(1.0 / 18), 1e-14);
}

TEST(ScheduleParams, DegenerateRegimeDDelta) {
  SmoothnessSpec s;
  s.L_xy = 2;
  s.mu_xy = 1;
  s.mu_yx = 0.5;
  s.L_x = 3;
  EXPECT_DOUBLE_EQ(schedule_params(s, Regime::d).delta, 2.0 / 12);
  s.L_x = 0;
  s.L_y = 3;
  EXPECT_DOUBLE_EQ(schedule_params(s, Regime::d).delta, 6);
  s.L_y = 0;
  EXPECT_DOUBLE_EQ(schedule_params(s, Regime::d).delta, 2);
  s.L_x = 4;
  s.L_y = 1;
  EXPECT_DOUBLE_EQ(schedule_params(s, Regime::d).delta, 2 * std::sqrt(0.25));
}

TEST(ScheduleParams, InvariantsOverRandomSpecs) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const SmoothnessSpec s = random_spec(rng, trial % 3 != 0, trial % 2 == 0 || trial % 3 == 0);
    for (Regime r : kAllRegimes) {
      if (!regime_applies(s, r)) continue;
      const auto p = schedule_params(s, r);
      EXPECT_NEAR(p.tau_x, 1 / (1 / p.sigma_x + 0.5), 1e-15);
      EXPECT_NEAR(p.tau_y, 1 / (1 / p.sigma_y + 0.5), 1e-15);
      EXPECT_LE(p.tau_x, 2.0 / 3 + 1e-15);
      EXPECT_EQ(p.alpha_x, s.mu_x);
      EXPECT_EQ(p.alpha_y, s.mu_y);
      EXPECT_LE(p.beta_x * 2 * p.eta_x * s.L_xy * s.L_xy, 1 + 1e-12);
      EXPECT_LE(p.beta_y * 2 * p.eta_y * s.L_xy * s.L_xy, 1 + 1e-12);
      EXPECT_LE(p.eta_x * p.eta_y * 16 * s.L_xy * s.L_xy, 1 + 1e-12);
      EXPECT_GT(p.theta, 0);
      EXPECT_LT(p.theta, 1);
    }
  }
}

TEST(ScheduleParams, RegimeAThetaRespectsClosedFormBound) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 500; ++trial) {
    const SmoothnessSpec s = random_spec(rng, true, false);
    const auto p = schedule_params(s, Regime::a);
    const Scalar bound = apdg_regime_bounds(s)[Regime::a];
    EXPECT_LE(1 / (1 - p.theta), bound * (1 + 1e-12));
  }
}

TEST(APDGParams, RejectsThetaOutsideTheUnitInterval) {
  APDGParams p = hand_params();
  p.theta = 1.5;
  EXPECT_THROW(p.validate(), ContractViolation);
  p.theta = 0.5;
  p.sigma_x = 0;
  EXPECT_THROW(p.validate(), ContractViolation);
}

TEST(APDGStep, HandComputedScalarStep) {
  const auto problem = testing::scalar_problem(1, 0, 1, 0, 1);
  const auto next = apdg_step(problem, hand_params(), APDGState::initial({vec({1}), vec({1})}));
  EXPECT_NEAR(next.x(0), 0.8, 1e-15);
  EXPECT_NEAR(next.y(0), 0.96, 1e-15);
  EXPECT_NEAR(next.x_f(0), 0.9, 1e-15);
  EXPECT_NEAR(next.y_f(0), 0.98, 1e-15);
  EXPECT_EQ(next.y_prev(0), 1);
  EXPECT_EQ(next.k, 1);
  EXPECT_EQ(next.counters, (OracleCounters{1, 1, 4}));
}

TEST(APDGStep, SolutionIsAFixedPoint) {
  for (const auto& inst : testing::shipped_instances()) {
    const auto problem = inst.problem();
    const auto p = schedule_params(inst.spec);
    const auto s0 = APDGState::initial(inst.reference);
    const auto s1 = apdg_step(problem, p, s0);
    const Scalar scale = 1 + inst.reference.x.norm() + inst.reference.y.norm();
    EXPECT_LE((s1.x - s0.x).norm(), 1e-10 * scale) << inst.name;
    EXPECT_LE((s1.y - s0.y).norm(), 1e-10 * scale) << inst.name;
    EXPECT_LE((s1.x_f - s0.x).norm(), 1e-10 * scale) << inst.name;
  }
}

TEST(APDGStep, ZeroThetaIgnoresThePreviousDualIterate) {
  const auto inst = testing::shipped_instances().front();
  const auto problem = inst.problem();
  APDGParams p = schedule_params(inst.spec);
  p.theta = 0;  // bypasses validate(); the step itself accepts any theta
  std::mt19937_64 rng(4);
  APDGState s = APDGState::initial({testing::random_vector(problem.dim_x, rng),
                                    testing::random_vector(problem.dim_y, rng)});
  APDGState t = s;
  t.y_prev = testing::random_vector(problem.dim_y, rng);
  const auto a = apdg_step(problem, p, s);
  const auto b = apdg_step(problem, p, t);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(APDGStep, CountersGrowByTheStepBudget) {
  const auto inst = make_affine_constrained(6, 3, 4, 1, 2);
  const auto problem = inst.problem();
  const auto p = schedule_params(inst.spec);
  APDGState s = APDGState::initial({Vector::Ones(6), Vector::Ones(3)});
  for (int k = 1; k <= 25; ++k) {
    s = apdg_step(problem, p, s);
    EXPECT_EQ(s.counters, (OracleCounters{k, k, 4 * k}));
  }
}

TEST(APDGLyapunov, ZeroAtTheSolution) {
  for (const auto& inst : testing::shipped_instances()) {
    const auto p = schedule_params(inst.spec);
    EXPECT_NEAR(apdg_lyapunov(inst.problem(), p, APDGState::initial(inst.reference),
                              inst.reference),
                0, 1e-12)
        << inst.name;
  }
}

TEST(APDGLyapunov, ScalarInitialValue) {
  const auto problem = testing::scalar_problem(1, 0, 1, 0, 1);
  const IteratePair ref{vec({0}), vec({0})};
  EXPECT_NEAR(apdg_lyapunov(problem, hand_params(), APDGState::initial({vec({1}), vec({1})}),
                            ref),
              24, 1e-12);
}

TEST(APDGLyapunov, NeedsValueOracles) {
  auto problem = testing::scalar_problem(1, 0, 1, 0, 1);
  problem.value_f = nullptr;
  const IteratePair ref{vec({0}), vec({0})};
  EXPECT_THROW(apdg_lyapunov(problem, hand_params(), APDGState::initial(ref), ref),
               UnsupportedDiagnostic);
  RunOptions options;
  options.reference = ref;
  options.track_lyapunov = true;
  EXPECT_THROW(run_apdg(problem, hand_params(), ref, {}, options), UnsupportedDiagnostic);
}

TEST(APDGLyapunov, DominatesItsFloorAtArbitraryStates) {
  std::mt19937_64 rng(12);
  for (const auto& inst : testing::shipped_instances()) {
    const auto problem = inst.problem();
    const auto p = schedule_params(inst.spec);
    for (int trial = 0; trial < 50; ++trial) {
      APDGState s;
      s.x = testing::random_vector(problem.dim_x, rng);
      s.x_f = testing::random_vector(problem.dim_x, rng);
      s.y = testing::random_vector(problem.dim_y, rng);
      s.y_f = testing::random_vector(problem.dim_y, rng);
      s.y_prev = testing::random_vector(problem.dim_y, rng);
      const Scalar psi = apdg_lyapunov(problem, p, s, inst.reference);
      const Scalar floor = apdg_lyapunov_floor(p, s, inst.reference);
      EXPECT_GE(psi, floor - 1e-10 * (1 + std::abs(psi))) << inst.name;
    }
  }
}

TEST(RunAPDG, ReachesAccuracyWithinTheComplexityBound) {
  const auto inst = testing::shipped_instances().front();
  const auto p = schedule_params(inst.spec);
  RunOptions options;
  options.reference = inst.reference;
  options.track_lyapunov = true;
  options.strict_range_projection = false;
  StoppingRule stop;
  stop.epsilon = 1e-10;
  stop.max_iterations = 100000;
  const IteratePair start{Vector::Zero(inst.A.cols()), Vector::Zero(inst.A.rows())};
  const auto record = run_apdg(inst.problem(), p, start, stop, options);
  ASSERT_EQ(record.status, RunStatus::converged);
  const Scalar C = complexity_constant(record.lyapunov.front(), p.eta_x, p.eta_y);
  EXPECT_LE(record.iterations(), std::log(C / 1e-10) / (1 - p.theta) + 1);
}

TEST(RunAPDG, StartingAtTheSolutionStopsImmediately) {
  const auto inst = testing::shipped_instances().front();
  RunOptions options;
  options.strict_range_projection = false;
  StoppingRule stop;
  stop.residual_tol = 1e-6;
  const auto record =
      run_apdg(inst.problem(), schedule_params(inst.spec), inst.reference, stop, options);
  EXPECT_EQ(record.status, RunStatus::converged);
  EXPECT_EQ(record.iterations(), 0);
  EXPECT_EQ(record.final_counters(), OracleCounters{});
}

TEST(RunAPDG, RecordArraysHaveOneEntryPerIterate) {
  const auto inst = make_bilinear(4, 3);
  StoppingRule stop;
  stop.max_iterations = 30;
  const IteratePair start{Vector::Ones(4), Vector::Ones(4)};
  const auto record = run_apdg(inst.problem(), schedule_params(inst.spec), start, stop);
  EXPECT_EQ(record.status, RunStatus::max_iter);
  EXPECT_EQ(record.iterations(), 30);
  EXPECT_EQ(record.residual.size(), 31u);
  EXPECT_EQ(record.matvec_calls.back(), 120);
  EXPECT_TRUE(std::isnan(record.dist_x_sq.back()));
}

TEST(RunAPDG, IteratesStayInTheRangeSpaces) {
  std::mt19937_64 rng(30);
  Matrix A = testing::random_matrix(5, 5, rng);
  A.row(4) = A.row(0) + A.row(1);  // rank 4
  const auto inst = make_bilinear_from(A, A.transpose() * testing::random_vector(5, rng),
                                       A * testing::random_vector(5, rng));
  const auto problem = inst.problem();
  const auto p = schedule_params(inst.spec);
  APDGState s = APDGState::initial(
      {project_onto_range(A, testing::random_vector(5, rng), RangeSide::range_At),
       project_onto_range(A, testing::random_vector(5, rng), RangeSide::range_A)});
  for (int k = 0; k < 200; ++k) {
    s = apdg_step(problem, p, s);
    const Scalar scale = 1 + s.x.norm() + s.y.norm();
    EXPECT_LE((s.x - project_onto_range(A, s.x, RangeSide::range_At)).norm(), 1e-7 * scale);
    EXPECT_LE((s.y - project_onto_range(A, s.y, RangeSide::range_A)).norm(), 1e-7 * scale);
  }
}

TEST(RunAPDG, StrictModeConvergesOnRankDeficientCoupling) {
  const auto inst = make_affine_constrained(15, 6, 4, 1, 22, true);
  StoppingRule stop;
  stop.residual_tol = 1e-9;
  stop.max_iterations = 20000;
  std::mt19937_64 rng(31);
  const IteratePair start{testing::random_vector(15, rng), testing::random_vector(6, rng)};
  const auto record = run_apdg(inst.problem(), schedule_params(inst.spec), start, stop);
  EXPECT_EQ(record.status, RunStatus::converged);
}

}  // namespace
}  // namespace saddle

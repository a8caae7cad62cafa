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

#ifndef SADDLE_BASELINES_HPP
#define SADDLE_BASELINES_HPP

#include <saddle/core.hpp>
#include <saddle/run_record.hpp>

#include <Eigen/Cholesky>

#include <algorithm>
#include <utility>

// Reference methods: simultaneous and alternating gradient descent-ascent,
// extragradient, and the exact forward-backward iteration.
namespace saddle {

struct BaselineState {
  IteratePair point;
  int k = 0;
  OracleCounters counters;

  static BaselineState initial(const IteratePair& start) { return {start, 0, {}}; }
};

/// x+ = x - eta_x grad_x F(x, y), y+ = y + eta_y grad_y F(x, y).
inline BaselineState sim_gda_step(const GeneralSaddleProblem& problem,
                                  Scalar eta_x, Scalar eta_y,
                                  const BaselineState& s) {
  problem.check(s.point);
  const Vector gx = problem.gradient_x(s.point.x, s.point.y);
  const Vector gy = problem.gradient_y(s.point.x, s.point.y);
  BaselineState next{{s.point.x - eta_x * gx, s.point.y + eta_y * gy}, s.k + 1,
                     s.counters};
  next.counters.grad_f += 1;
  next.counters.grad_g += 1;
  return next;
}

/// Like sim_gda_step, but the ascent step is taken at the new x.
inline BaselineState alt_gda_step(const GeneralSaddleProblem& problem,
                                  Scalar eta_x, Scalar eta_y,
                                  const BaselineState& s) {
  problem.check(s.point);
  BaselineState next{{}, s.k + 1, s.counters};
  next.point.x = s.point.x - eta_x * problem.gradient_x(s.point.x, s.point.y);
  next.point.y = s.point.y + eta_y * problem.gradient_y(next.point.x, s.point.y);
  next.counters.grad_f += 1;
  next.counters.grad_g += 1;
  return next;
}

/// Half step at the current point, full step with midpoint gradients.
inline BaselineState extragradient_step(const GeneralSaddleProblem& problem,
                                        Scalar eta, const BaselineState& s) {
  problem.check(s.point);
  const Vector& x = s.point.x;
  const Vector& y = s.point.y;
  const Vector x_mid = x - eta * problem.gradient_x(x, y);
  const Vector y_mid = y + eta * problem.gradient_y(x, y);
  BaselineState next{{x - eta * problem.gradient_x(x_mid, y_mid),
                      y + eta * problem.gradient_y(x_mid, y_mid)},
                     s.k + 1,
                     s.counters};
  next.counters.grad_f += 2;
  next.counters.grad_g += 2;
  return next;
}

/// Exact forward-backward iteration
///
///   x+ = x - eta_x grad f(x) - eta_x A^T y+
///   y+ = y - eta_y grad g(y) + eta_y A x+
///
/// solved through (I + eta_x eta_y A^T A) x+ = u - eta_x A^T v with
/// u = x - eta_x grad f(x), v = y - eta_y grad g(y). The system matrix is
/// factorized once at construction.
class ForwardBackward {
 public:
  ForwardBackward(const BilinearSaddleProblem& problem, Scalar eta_x, Scalar eta_y)
      : problem_(&problem), eta_x_(eta_x), eta_y_(eta_y) {
    problem.check_shapes();
    detail::require(eta_x > 0 && eta_y > 0, "forward-backward stepsizes must be positive");
    const Matrix system =
        Matrix::Identity(problem.dim_x, problem.dim_x) +
        eta_x * eta_y * problem.A.transpose() * problem.A;
    factor_.compute(system);
  }

  [[nodiscard]] BaselineState step(const BaselineState& s) const {
    const auto& problem = *problem_;
    problem.check(s.point);
    const Vector u = s.point.x - eta_x_ * problem.gradient_f(s.point.x);
    const Vector v = s.point.y - eta_y_ * problem.gradient_g(s.point.y);
    BaselineState next{{}, s.k + 1, s.counters};
    next.point.x = factor_.solve(u - eta_x_ * (problem.A.transpose() * v));
    next.point.y = v + eta_y_ * (problem.A * next.point.x);
    next.counters.grad_f += 1;
    next.counters.grad_g += 1;
    next.counters.matvec += 2;
    return next;
  }

 private:
  const BilinearSaddleProblem* problem_;
  Scalar eta_x_;
  Scalar eta_y_;
  Eigen::LLT<Matrix> factor_;
};

/// Single forward-backward step; factorizes on every call.
inline BaselineState forward_backward_step(const BilinearSaddleProblem& problem,
                                           Scalar eta_x, Scalar eta_y,
                                           const BaselineState& s) {
  return ForwardBackward(problem, eta_x, eta_y).step(s);
}

/// 1/(4L) with L = max{L_x, L_y, L_xy}.
inline Scalar default_extragradient_stepsize(const SmoothnessSpec& spec) {
  return 1 / (4 * std::max({spec.L_x, spec.L_y, spec.L_xy}));
}

/// mu/(4L^2) with mu = min{max{mu_x, mu_yx}, max{mu_y, mu_xy}}; falls back to
/// 1/(4L) when mu = 0.
inline Scalar default_gda_stepsize(const SmoothnessSpec& spec) {
  const Scalar L = std::max({spec.L_x, spec.L_y, spec.L_xy});
  const Scalar mu = std::min(std::max(spec.mu_x, spec.mu_yx),
                             std::max(spec.mu_y, spec.mu_xy));
  return mu > 0 ? mu / (4 * L * L) : 1 / (4 * L);
}

/// 1/L with L = max{L_x, L_y, L_xy}.
inline Scalar default_forward_backward_stepsize(const SmoothnessSpec& spec) {
  return 1 / std::max({spec.L_x, spec.L_y, spec.L_xy});
}

/// Runs any baseline step `step(BaselineState) -> BaselineState` with the
/// residual of `problem`.
template <class Step>
RunRecord run_baseline(const GeneralSaddleProblem& problem, const IteratePair& start,
                       const StoppingRule& stop, const RunOptions& options,
                       Step&& step) {
  problem.check(start);
  auto observe = [](const BaselineState& s) { return Observation{s.point, s.counters}; };
  auto residual = [&](const IteratePair& p) { return optimality_residual(problem, p); };
  return detail::drive(BaselineState::initial(start), stop, options, observe,
                       residual, std::forward<Step>(step));
}

}  // namespace saddle

#endif  // SADDLE_BASELINES_HPP

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

#ifndef SADDLE_GDAE_HPP
#define SADDLE_GDAE_HPP

#include <saddle/core.hpp>
#include <saddle/regime.hpp>
#include <saddle/run_record.hpp>

#include <cmath>
#include <optional>

/// Gradient descent-ascent with gradient extrapolation for min_x max_y F.
///
/// The x-step uses grad_x F(x, y) + theta (grad_x F(x_prev, y) -
/// grad_x F(x_prev, y_prev)) as a cheap stand-in for grad_x F(x, y_next);
/// the y-step is an ascent step at the new x.
namespace saddle {

struct GDAEParams {
  Scalar eta_x = 0;
  Scalar eta_y = 0;
  Scalar theta = 0.5;
  Scalar delta = 1;
  Regime regime = Regime::a;

  void validate() const {
    detail::require(eta_x > 0 && eta_y > 0 && std::isfinite(eta_x) &&
                        std::isfinite(eta_y),
                    "GDAE stepsizes must be positive and finite");
    detail::require(theta > 0 && theta < 1, "GDAE theta must lie in (0, 1)");
  }

  [[nodiscard]] static GDAEParams checked(const GDAEParams& params) {
    params.validate();
    return params;
  }
};

inline RegimeValues gdae_inverse_rhos(const SmoothnessSpec& s, Scalar delta) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y;
  const Scalar mxy2 = s.mu_xy * s.mu_xy, myx2 = s.mu_yx * s.mu_yx;
  RegimeValues inv;
  if (mx > 0 && my > 0) {
    inv[Regime::a] = max_of({8 * Lx / mx, 8 * Ly / my, 4 * Lxy / (delta * mx),
                             4 * Lxy * delta / my});
  }
  if (mx > 0 && mxy2 > 0) {
    inv[Regime::b] = max_of({8 * Lx / mx, 512 * Lx * Ly / mxy2,
                             4 * Lxy / (delta * mx),
                             256 * Lx * Lxy * delta / mxy2,
                             256 * Ly * Lxy / (mxy2 * delta),
                             128 * Lxy * Lxy / mxy2});
  }
  if (my > 0 && myx2 > 0) {
    inv[Regime::c] = max_of({8 * Ly / my, 512 * Lx * Ly / myx2,
                             4 * Lxy * delta / my,
                             256 * Lx * Lxy * delta / myx2,
                             256 * Ly * Lxy / (myx2 * delta),
                             128 * Lxy * Lxy / myx2});
  }
  if (mxy2 > 0 && myx2 > 0) {
    const Scalar m = std::min(mxy2, myx2);
    inv[Regime::d] = max_of({512 * Lx * Ly / m, 256 * Lx * Lxy * delta / m,
                             256 * Ly * Lxy / (m * delta), 128 * Lxy * Lxy / m});
  }
  return inv;
}

inline Scalar gdae_theta(const SmoothnessSpec& s, Scalar delta) {
  return 1 - 1 / gdae_inverse_rhos(s, delta).min();
}

/// 1/rho for each regime at its tuned delta.
inline RegimeValues gdae_regime_bounds(const SmoothnessSpec& s) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y;
  const Scalar mxy2 = s.mu_xy * s.mu_xy, myx2 = s.mu_yx * s.mu_yx;
  RegimeValues out;
  if (mx > 0 && my > 0) {
    out[Regime::a] = max_of({8 * Lx / mx, 8 * Ly / my, 4 * Lxy / std::sqrt(mx * my)});
  }
  if (mx > 0 && mxy2 > 0) {
    out[Regime::b] = max_of({8 * Lx / mx, 512 * Lx * Ly / mxy2, 128 * Lxy * Lxy / mxy2});
  }
  if (my > 0 && myx2 > 0) {
    out[Regime::c] = max_of({8 * Ly / my, 512 * Lx * Ly / myx2, 128 * Lxy * Lxy / myx2});
  }
  if (mxy2 > 0 && myx2 > 0) {
    out[Regime::d] = max_of({512 * Lx * Ly / mxy2, 512 * Lx * Ly / myx2,
                             128 * Lxy * Lxy / mxy2, 128 * Lxy * Lxy / myx2});
  }
  return out;
}

namespace detail {

inline Scalar gdae_delta(const SmoothnessSpec& s, Regime regime) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y;
  // sqrt(L_y / L_x) with the L_x = 0 end mapped to +inf.
  const Scalar ratio = Lx > 0 ? std::sqrt(Ly / Lx) : kInf;
  switch (regime) {
    case Regime::a:
      return std::sqrt(my / mx);
    case Regime::b:
      return std::max(s.mu_xy / (8 * std::sqrt(mx * Lx)), ratio);
    case Regime::c:
      return std::min(8 * std::sqrt(my * Ly) / s.mu_yx, ratio);
    case Regime::d:
      if (Lx > 0 && Ly > 0) return ratio;
      if (Lx > 0) return Lxy / (2 * Lx);  // L_y = 0
      if (Ly > 0) return 2 * Ly / Lxy;    // L_x = 0
      return 1;
  }
  throw ContractViolation("unknown regime");
}

}  // namespace detail

inline GDAEParams gdae_params_from(const SmoothnessSpec& s, Regime regime,
                                   Scalar delta) {
  GDAEParams p;
  p.regime = regime;
  p.delta = delta;
  p.eta_x = std::min(1 / (8 * s.L_x), delta / (4 * s.L_xy));
  p.eta_y = std::min(1 / (8 * s.L_y), 1 / (4 * delta * s.L_xy));
  p.theta = gdae_theta(s, delta);
  return p;
}

inline Regime select_gdae_regime(const SmoothnessSpec& spec) {
  const auto bounds = gdae_regime_bounds(spec);
  if (!std::isfinite(bounds.min())) {
    throw ConfigurationError(
        "no GDAE regime applies: min{max{mu_x, mu_yx}, max{mu_y, mu_xy}} = 0 (" +
        describe_moduli(spec) + ")");
  }
  return bounds.argmin();
}

inline GDAEParams schedule_gdae_params(const SmoothnessSpec& spec,
                                       std::optional<Regime> regime = std::nullopt) {
  spec.validate();
  const Regime r = regime ? *regime : select_gdae_regime(spec);
  require_regime_constants(spec, r, "GDAE");
  GDAEParams p = gdae_params_from(spec, r, detail::gdae_delta(spec, r));
  p.validate();
  return p;
}

struct GDAEState {
  Vector x;
  Vector x_prev;
  Vector y;
  Vector y_prev;
  /// grad_x F(x_prev, y_prev), carried over from the previous step.
  std::optional<Vector> grad_x_prev;
  int k = 0;
  OracleCounters counters;

  static GDAEState initial(const IteratePair& start) {
    return {start.x, start.x, start.y, start.y, std::nullopt, 0, {}};
  }

  [[nodiscard]] IteratePair point() const { return {x, y}; }
};

/// One GDAE iteration: two fresh grad_x F calls (one on the first step) and
/// one grad_y F call.
inline GDAEState gdae_step(const GeneralSaddleProblem& problem,
                           const GDAEParams& p, const GDAEState& s) {
  problem.check({s.x, s.y});
  problem.check({s.x_prev, s.y_prev});
  GDAEState next;
  next.counters = s.counters;

  const Vector g = problem.gradient_x(s.x, s.y);
  next.counters.grad_f += 1;

  Vector extrapolation;
  const bool fresh_start = s.x_prev == s.x && s.y_prev == s.y;
  if (fresh_start) {
    extrapolation = Vector::Zero(s.x.size());
  } else {
    const Vector g_mix = problem.gradient_x(s.x_prev, s.y);
    next.counters.grad_f += 1;
    Vector g_prev;
    if (s.grad_x_prev) {
      g_prev = *s.grad_x_prev;
    } else {
      g_prev = problem.gradient_x(s.x_prev, s.y_prev);
      next.counters.grad_f += 1;
    }
    extrapolation = g_mix - g_prev;
  }

  next.x = s.x - p.eta_x * g - p.eta_x * p.theta * extrapolation;
  next.y = s.y + p.eta_y * problem.gradient_y(next.x, s.y);
  next.counters.grad_g += 1;
  next.x_prev = s.x;
  next.y_prev = s.y;
  next.grad_x_prev = g;
  next.k = s.k + 1;
  return next;
}

/// Psi = (1/eta_x)||x - x*||^2 + (1/eta_y)||y - y*||^2
///       - 2 <grad_x F(x_prev, y) - grad_x F(x_prev, y_prev), x - x*>
///       + (5/(16 eta_y))||y - y_prev||^2.
inline Scalar gdae_lyapunov(const GeneralSaddleProblem& problem,
                            const GDAEParams& p, const GDAEState& s,
                            const IteratePair& reference) {
  problem.check(reference);
  problem.check({s.x, s.y});
  const Vector dx = s.x - reference.x;
  const Vector dy = s.y - reference.y;
  const Vector dy_prev = s.y - s.y_prev;
  Scalar cross = 0;
  if (dy_prev.squaredNorm() > 0) {
    const Vector diff = problem.gradient_x(s.x_prev, s.y) -
                        problem.gradient_x(s.x_prev, s.y_prev);
    cross = diff.dot(dx);
  }
  return dx.squaredNorm() / p.eta_x + dy.squaredNorm() / p.eta_y - 2 * cross +
         5 * dy_prev.squaredNorm() / (16 * p.eta_y);
}

inline Scalar gdae_lyapunov_floor(const GDAEParams& p, const GDAEState& s,
                                  const IteratePair& reference) {
  return 3 / (4 * p.eta_x) * (s.x - reference.x).squaredNorm() +
         (s.y - reference.y).squaredNorm() / p.eta_y;
}

inline RunRecord run_gdae(const GeneralSaddleProblem& problem,
                          const GDAEParams& params, const IteratePair& start,
                          const StoppingRule& stop, const RunOptions& options = {}) {
  problem.check(start);
  params.validate();
  detail::require(!options.track_lyapunov || options.reference.has_value(),
                  "Lyapunov tracking needs a reference solution");
  auto observe = [&](const GDAEState& s) {
    Observation obs{s.point(), s.counters};
    if (options.track_lyapunov) {
      obs.lyapunov = gdae_lyapunov(problem, params, s, *options.reference);
    }
    return obs;
  };
  auto residual = [&](const IteratePair& p) { return optimality_residual(problem, p); };
  auto step = [&](GDAEState s) { return gdae_step(problem, params, s); };
  return detail::drive(GDAEState::initial(start), stop, options, observe, residual, step);
}

}  // namespace saddle

#endif  // SADDLE_GDAE_HPP

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

#ifndef SADDLE_APDG_HPP
#define SADDLE_APDG_HPP

#include <saddle/core.hpp>
#include <saddle/regime.hpp>
#include <saddle/run_record.hpp>
#include <saddle/spectral.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <string>

/// Accelerated primal-dual gradient method for f(x) + y^T A x - g(y).
///
/// Each step combines Nesterov acceleration of the (f, g) gradient part with
/// a linear extrapolation y_m = y + theta (y - y_prev) of the dual iterate,
/// which replaces the implicit linear solve of the forward-backward method.
/// With parameters from schedule_params the Lyapunov function of
/// apdg_lyapunov contracts by theta per step.
namespace saddle {

struct APDGParams {
  Scalar eta_x = 0;
  Scalar eta_y = 0;
  Scalar alpha_x = 0;
  Scalar alpha_y = 0;
  Scalar beta_x = 0;
  Scalar beta_y = 0;
  Scalar tau_x = 1;
  Scalar tau_y = 1;
  Scalar sigma_x = 1;
  Scalar sigma_y = 1;
  Scalar theta = 0.5;
  Scalar delta = 1;
  Regime regime = Regime::a;

  /// Throws ContractViolation unless eta > 0, alpha, beta >= 0,
  /// tau, sigma in (0, 1] and theta in (0, 1).
  void validate() const {
    auto unit = [](Scalar v) { return v > 0 && v <= 1; };
    detail::require(eta_x > 0 && eta_y > 0 && std::isfinite(eta_x) &&
                        std::isfinite(eta_y),
                    "APDG stepsizes must be positive and finite");
    detail::require(alpha_x >= 0 && alpha_y >= 0, "APDG alpha must be >= 0");
    detail::require(beta_x >= 0 && beta_y >= 0 && std::isfinite(beta_x) &&
                        std::isfinite(beta_y),
                    "APDG beta must be finite and >= 0");
    detail::require(unit(tau_x) && unit(tau_y), "APDG tau must lie in (0, 1]");
    detail::require(unit(sigma_x) && unit(sigma_y),
                    "APDG sigma must lie in (0, 1]");
    detail::require(theta > 0 && theta < 1, "APDG theta must lie in (0, 1)");
  }

  /// Validated copy; use when building parameters by hand.
  [[nodiscard]] static APDGParams checked(const APDGParams& params) {
    params.validate();
    return params;
  }
};

/// How sigma_y is chosen in regime a. The published closed form reuses
/// mu_x / L_x; `symmetric` uses mu_y / L_y instead.
enum class SigmaYRule { symmetric, as_printed };

/// The four reciprocal contraction margins 1/rho for APDG at a given
/// (delta, sigma_x, sigma_y); +inf when a regime's constants vanish.
inline RegimeValues apdg_inverse_rhos(const SmoothnessSpec& s, Scalar delta,
                                      Scalar sigma_x, Scalar sigma_y) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y;
  const Scalar mxy2 = s.mu_xy * s.mu_xy, myx2 = s.mu_yx * s.mu_yx;
  const Scalar px = mx + Lx * sigma_x;
  const Scalar py = my + Ly * sigma_y;
  RegimeValues inv{kInf, kInf, kInf, kInf};
  if (mx > 0 && my > 0) {
    inv[Regime::a] = max_of({4 * px / mx, 2 / sigma_x, 4 * py / my,
                             2 / sigma_y, 4 * Lxy / (mx * delta),
                             4 * Lxy * delta / my});
  }
  if (mx > 0 && mxy2 > 0) {
    inv[Regime::b] = max_of({4 * px / mx, 2 / sigma_x, 8 * Lx * py / mxy2,
                             2 / sigma_y, 2 * Lxy * Lxy / mxy2,
                             8 * Lx * Lxy * delta / mxy2,
                             4 * Lxy / (mx * delta)});
  }
  if (my > 0 && myx2 > 0) {
    inv[Regime::c] = max_of({4 * py / my, 2 / sigma_y, 8 * Ly * px / myx2,
                             2 / sigma_x, 2 * Lxy * Lxy / myx2,
                             8 * Ly * Lxy / (myx2 * delta),
                             4 * Lxy * delta / my});
  }
  if (mxy2 > 0 && myx2 > 0) {
    inv[Regime::d] = max_of({8 * Ly * px / myx2, 2 / sigma_x, 8 * Lx * py / mxy2,
                             2 / sigma_y, 8 * Ly * Lxy / (delta * myx2),
                             8 * Lx * Lxy * delta / mxy2, 2 * Lxy * Lxy / myx2,
                             2 * Lxy * Lxy / mxy2});
  }
  return inv;
}

/// theta = 1 - max_r rho_r(delta, sigma_x, sigma_y).
inline Scalar apdg_theta(const SmoothnessSpec& s, Scalar delta, Scalar sigma_x,
                         Scalar sigma_y) {
  const Scalar best = apdg_inverse_rhos(s, delta, sigma_x, sigma_y).min();
  return 1 - 1 / best;
}

/// Closed-form upper bounds on 1/rho for each regime at its tuned
/// (delta, sigma). Used to pick a regime automatically.
inline RegimeValues apdg_regime_bounds(const SmoothnessSpec& s) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y, mxy = s.mu_xy, myx = s.mu_yx;
  RegimeValues out{kInf, kInf, kInf, kInf};
  if (mx > 0 && my > 0) {
    out[Regime::a] = 4 + 4 * max_of({std::sqrt(Lx / mx), std::sqrt(Ly / my),
                                     Lxy / std::sqrt(mx * my)});
  }
  if (mx > 0 && mxy > 0) {
    out[Regime::b] = 4 + 8 * max_of({std::sqrt(Lx * Ly) / mxy,
                                     Lxy / mxy * std::sqrt(Lx / mx),
                                     Lxy * Lxy / (mxy * mxy)});
  }
  if (my > 0 && myx > 0) {
    out[Regime::c] = 4 + 8 * max_of({std::sqrt(Lx * Ly) / myx,
                                     Lxy / myx * std::sqrt(Ly / my),
                                     Lxy * Lxy / (myx * myx)});
  }
  if (mxy > 0 && myx > 0) {
    out[Regime::d] = 2 + 8 * max_of({std::sqrt(Lx * Ly) * Lxy / (mxy * myx),
                                     Lxy * Lxy / (myx * myx),
                                     Lxy * Lxy / (mxy * mxy)});
  }
  return out;
}

namespace detail {

struct DeltaSigma {
  Scalar delta;
  Scalar sigma_x;
  Scalar sigma_y;
};

inline Scalar capped_sqrt_ratio(Scalar mu_sq, Scalar Lx, Scalar Ly) {
  // min{1, sqrt(mu^2 / (4 L_x L_y))}; the ratio is +inf when L_x L_y = 0.
  const Scalar denom = 4 * Lx * Ly;
  if (denom <= 0) return 1;
  return std::min<Scalar>(1, std::sqrt(mu_sq / denom));
}

inline DeltaSigma apdg_tuning(const SmoothnessSpec& s, Regime regime,
                              SigmaYRule sigma_rule) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y, mxy = s.mu_xy, myx = s.mu_yx;
  switch (regime) {
    case Regime::a: {
      const Scalar sx = std::sqrt(mx / (2 * Lx));
      const Scalar sy = sigma_rule == SigmaYRule::symmetric
                            ? std::sqrt(my / (2 * Ly))
                            : sx;
      return {std::sqrt(my / mx), sx, sy};
    }
    case Regime::b:
      return {std::sqrt(mxy * mxy / (2 * mx * Lx)), std::sqrt(mx / (2 * Lx)),
              capped_sqrt_ratio(mxy * mxy, Lx, Ly)};
    case Regime::c:
      return {std::sqrt(2 * my * Ly / (myx * myx)),
              capped_sqrt_ratio(myx * myx, Lx, Ly), std::sqrt(my / (2 * Ly))};
    case Regime::d: {
      Scalar delta;
      if (Lx > 0 && Ly > 0) {
        delta = mxy / myx * std::sqrt(Ly / Lx);
      } else if (Lx > 0) {
        delta = Lxy / (4 * Lx);  // L_y = 0
      } else if (Ly > 0) {
        delta = 4 * Ly / Lxy;  // L_x = 0
      } else {
        delta = mxy / myx;
      }
      return {delta, capped_sqrt_ratio(myx * myx, Lx, Ly),
              capped_sqrt_ratio(mxy * mxy, Lx, Ly)};
    }
  }
  throw ContractViolation("unknown regime");
}

}  // namespace detail

/// Parameters at a given (delta, sigma_x, sigma_y): stepsizes, momentum
/// weights and theta from their closed forms.
inline APDGParams apdg_params_from(const SmoothnessSpec& s, Regime regime,
                                   Scalar delta, Scalar sigma_x, Scalar sigma_y) {
  APDGParams p;
  p.regime = regime;
  p.delta = delta;
  p.sigma_x = sigma_x;
  p.sigma_y = sigma_y;
  p.tau_x = 1 / (1 / sigma_x + 0.5);
  p.tau_y = 1 / (1 / sigma_y + 0.5);
  p.alpha_x = s.mu_x;
  p.alpha_y = s.mu_y;
  p.eta_x = std::min(1 / (4 * (s.mu_x + s.L_x * sigma_x)), delta / (4 * s.L_xy));
  p.eta_y = std::min(1 / (4 * (s.mu_y + s.L_y * sigma_y)), 1 / (4 * s.L_xy * delta));
  p.beta_x = std::min(1 / (2 * s.L_y), 1 / (2 * p.eta_x * s.L_xy * s.L_xy));
  p.beta_y = std::min(1 / (2 * s.L_x), 1 / (2 * p.eta_y * s.L_xy * s.L_xy));
  p.theta = apdg_theta(s, delta, sigma_x, sigma_y);
  return p;
}

/// Picks the regime with the smallest closed-form 1/rho bound; ties go to
/// the earlier regime in a, b, c, d order.
inline Regime select_apdg_regime(const SmoothnessSpec& spec) {
  const auto bounds = apdg_regime_bounds(spec);
  if (!std::isfinite(bounds.min())) {
    throw ConfigurationError(
        "no APDG regime applies: min{max{mu_x, mu_yx}, max{mu_y, mu_xy}} = 0 (" +
        describe_moduli(spec) + ")");
  }
  return bounds.argmin();
}

/// Full APDG parameter tuple for `regime` (or the best one when nullopt).
inline APDGParams schedule_params(const SmoothnessSpec& spec,
                                  std::optional<Regime> regime = std::nullopt,
                                  SigmaYRule sigma_rule = SigmaYRule::symmetric) {
  spec.validate();
  const Regime r = regime ? *regime : select_apdg_regime(spec);
  require_regime_constants(spec, r, "APDG");
  const auto tuning = detail::apdg_tuning(spec, r, sigma_rule);
  APDGParams p = apdg_params_from(spec, r, tuning.delta, tuning.sigma_x, tuning.sigma_y);
  p.validate();
  return p;
}

struct APDGState {
  Vector x;
  Vector x_f;
  Vector y;
  Vector y_f;
  Vector y_prev;
  int k = 0;
  OracleCounters counters;

  /// x_f = x, y_f = y_prev = y.
  static APDGState initial(const IteratePair& start) {
    return {start.x, start.x, start.y, start.y, start.y, 0, {}};
  }

  [[nodiscard]] IteratePair point() const { return {x, y}; }
};

/// One APDG iteration. Uses one grad f, one grad g, two products with A and
/// two with A^T. The y-update reads the freshly computed x.
inline APDGState apdg_step(const BilinearSaddleProblem& problem,
                           const APDGParams& p, const APDGState& s) {
  problem.check({s.x, s.y});
  const Matrix& A = problem.A;

  const Vector y_m = s.y + p.theta * (s.y - s.y_prev);
  const Vector x_g = p.tau_x * s.x + (1 - p.tau_x) * s.x_f;
  const Vector y_g = p.tau_y * s.y + (1 - p.tau_y) * s.y_f;
  const Vector grad_f = problem.gradient_f(x_g);
  const Vector grad_g = problem.gradient_g(y_g);

  const Vector Ax = A * s.x;
  const Vector Aty = A.transpose() * s.y;
  // A^T (beta_x (A x - grad g) + y_m) folds both A^T products of the x-line.
  const Vector x_next =
      s.x + p.eta_x * p.alpha_x * (x_g - s.x) - p.eta_x * grad_f -
      p.eta_x * (A.transpose() * (p.beta_x * (Ax - grad_g) + y_m));
  const Vector y_next =
      s.y + p.eta_y * p.alpha_y * (y_g - s.y) - p.eta_y * grad_g -
      p.eta_y * (A * (p.beta_y * (Aty + grad_f) - x_next));

  APDGState next;
  next.x_f = x_g + p.sigma_x * (x_next - s.x);
  next.y_f = y_g + p.sigma_y * (y_next - s.y);
  next.y_prev = s.y;
  next.x = x_next;
  next.y = y_next;
  next.k = s.k + 1;
  next.counters = s.counters;
  next.counters.grad_f += 1;
  next.counters.grad_g += 1;
  next.counters.matvec += 4;
  return next;
}

/// Psi = (1/eta_x)||x - x*||^2 + (1/eta_y)||y - y*||^2
///       + (2/sigma_x) B_f(x_f, x*) + (2/sigma_y) B_g(y_f, y*)
///       + (1/(4 eta_y))||y - y_prev||^2 - 2 <y - y_prev, A (x - x*)>.
inline Scalar apdg_lyapunov(const BilinearSaddleProblem& problem,
                            const APDGParams& p, const APDGState& s,
                            const IteratePair& reference) {
  if (!problem.has_values()) {
    throw UnsupportedDiagnostic("APDG Lyapunov function needs value oracles for f and g");
  }
  problem.check(reference);
  problem.check({s.x, s.y});
  const Vector dx = s.x - reference.x;
  const Vector dy = s.y - reference.y;
  const Vector dy_prev = s.y - s.y_prev;
  const Scalar bf =
      bregman_divergence(problem.value_f, problem.grad_f, s.x_f, reference.x);
  const Scalar bg =
      bregman_divergence(problem.value_g, problem.grad_g, s.y_f, reference.y);
  return dx.squaredNorm() / p.eta_x + dy.squaredNorm() / p.eta_y +
         2 / p.sigma_x * bf + 2 / p.sigma_y * bg +
         dy_prev.squaredNorm() / (4 * p.eta_y) - 2 * dy_prev.dot(problem.A * dx);
}

/// Lower bound (3/(4 eta_x))||x - x*||^2 + (1/eta_y)||y - y*||^2 that Psi
/// dominates.
inline Scalar apdg_lyapunov_floor(const APDGParams& p, const APDGState& s,
                                  const IteratePair& reference) {
  return 3 / (4 * p.eta_x) * (s.x - reference.x).squaredNorm() +
         (s.y - reference.y).squaredNorm() / p.eta_y;
}

/// Runs APDG from `start` until `stop`. In strict mode the start point is
/// projected onto range A^T x range A first.
inline RunRecord run_apdg(const BilinearSaddleProblem& problem,
                          const APDGParams& params, const IteratePair& start,
                          const StoppingRule& stop, const RunOptions& options = {}) {
  problem.check_shapes();
  problem.check(start);
  params.validate();
  if (options.track_lyapunov) {
    detail::require(options.reference.has_value(),
                    "Lyapunov tracking needs a reference solution");
    if (!problem.has_values()) {
      throw UnsupportedDiagnostic("APDG Lyapunov function needs value oracles for f and g");
    }
  }

  IteratePair x0 = start;
  if (options.strict_range_projection) {
    x0.x = project_onto_range(problem.A, start.x, RangeSide::range_At);
    x0.y = project_onto_range(problem.A, start.y, RangeSide::range_A);
  }

  auto observe = [&](const APDGState& s) {
    Observation obs{s.point(), s.counters};
    if (options.track_lyapunov) {
      obs.lyapunov = apdg_lyapunov(problem, params, s, *options.reference);
    }
    return obs;
  };
  auto residual = [&](const IteratePair& p) { return optimality_residual(problem, p); };
  auto step = [&](APDGState s) { return apdg_step(problem, params, s); };
  return detail::drive(APDGState::initial(x0), stop, options, observe, residual, step);
}

/// C = Psi^0 max{4 eta_x / 3, eta_y}: after k >= log(C/eps)/(1 - theta)
/// steps the iterate is eps-accurate.
inline Scalar complexity_constant(Scalar psi0, Scalar eta_x, Scalar eta_y) {
  return psi0 * std::max(4 * eta_x / 3, eta_y);
}

}  // namespace saddle

#endif  // SADDLE_APDG_HPP

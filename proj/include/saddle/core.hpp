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

#ifndef SADDLE_CORE_HPP
#define SADDLE_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

/// Solvers for smooth convex-concave saddle-point problems
///
///   min_x max_y  f(x) + y^T A x - g(y)
///
/// and the general form min_x max_y F(x, y).
namespace saddle {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

/// Raised when a caller breaks a documented precondition (dimension
/// mismatch, empty reference set, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when no parameter schedule applies to the given constants.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a diagnostic needs an oracle the problem does not provide.
class UnsupportedDiagnostic : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ContractViolation(what);
}

inline void require_dim(Eigen::Index got, Eigen::Index want,
                        const char* what) {
  if (got != want) {
    throw ContractViolation(std::string(what) + ": dimension " +
                            std::to_string(got) + ", expected " +
                            std::to_string(want));
  }
}

}  // namespace detail

using GradientOracle = std::function<Vector(const Vector&)>;
using ValueOracle = std::function<Scalar(const Vector&)>;
using PartialGradientOracle =
    std::function<Vector(const Vector& x, const Vector& y)>;

/// Smoothness, strong convexity and coupling constants.
///
/// f is L_x-smooth and mu_x-strongly convex, g is L_y-smooth and
/// mu_y-strongly convex, L_xy bounds the largest singular value of A and
/// mu_xy, mu_yx bound the smallest (positive) singular values of A from
/// below. The range flags record whether grad g(y) lies in range A for all y
/// and grad f(x) in range A^T for all x; they decide which lower moduli the
/// coupling constants may use.
struct SmoothnessSpec {
  Scalar L_x = 0;
  Scalar mu_x = 0;
  Scalar L_y = 0;
  Scalar mu_y = 0;
  Scalar L_xy = 0;
  Scalar mu_xy = 0;
  Scalar mu_yx = 0;
  bool range_g_in_range_A = false;
  bool range_f_in_range_At = false;

  /// min{max{mu_x, mu_yx}, max{mu_y, mu_xy}} > 0, the condition under which
  /// every solver here converges linearly.
  [[nodiscard]] bool linear_convergence_condition() const {
    return std::min(std::max(mu_x, mu_yx), std::max(mu_y, mu_xy)) > 0;
  }

  /// Throws ContractViolation when the ordering of the constants is broken.
  void validate() const {
    auto finite_nonneg = [](Scalar v) { return std::isfinite(v) && v >= 0; };
    detail::require(finite_nonneg(L_x) && finite_nonneg(mu_x) &&
                        finite_nonneg(L_y) && finite_nonneg(mu_y) &&
                        finite_nonneg(mu_xy) && finite_nonneg(mu_yx) &&
                        std::isfinite(L_xy),
                    "smoothness constants must be finite and nonnegative");
    detail::require(L_x >= mu_x, "L_x < mu_x");
    detail::require(L_y >= mu_y, "L_y < mu_y");
    detail::require(L_xy > 0, "L_xy must be positive");
    detail::require(L_xy >= mu_xy, "L_xy < mu_xy");
    detail::require(L_xy >= mu_yx, "L_xy < mu_yx");
  }
};

struct IteratePair {
  Vector x;
  Vector y;
};

/// f(x) + y^T A x - g(y). Only gradients are required; value oracles enable
/// the Bregman-based diagnostics (Lyapunov functions).
struct BilinearSaddleProblem {
  Eigen::Index dim_x = 0;
  Eigen::Index dim_y = 0;
  GradientOracle grad_f;
  GradientOracle grad_g;
  ValueOracle value_f;  // optional
  ValueOracle value_g;  // optional
  Matrix A;             // dim_y x dim_x
  SmoothnessSpec spec;

  [[nodiscard]] bool has_values() const {
    return static_cast<bool>(value_f) && static_cast<bool>(value_g);
  }

  void check_shapes() const {
    detail::require(dim_x > 0 && dim_y > 0, "problem dimensions must be positive");
    detail::require(A.rows() == dim_y && A.cols() == dim_x,
                    "coupling matrix must be dim_y x dim_x");
    detail::require(static_cast<bool>(grad_f) && static_cast<bool>(grad_g),
                    "gradient oracles are required");
  }

  void check(const IteratePair& p) const {
    detail::require_dim(p.x.size(), dim_x, "x");
    detail::require_dim(p.y.size(), dim_y, "y");
  }

  [[nodiscard]] Vector gradient_f(const Vector& x) const {
    Vector g = grad_f(x);
    detail::require_dim(g.size(), dim_x, "grad_f output");
    return g;
  }

  [[nodiscard]] Vector gradient_g(const Vector& y) const {
    Vector g = grad_g(y);
    detail::require_dim(g.size(), dim_y, "grad_g output");
    return g;
  }
};

/// min_x max_y F(x, y) given through its partial gradients.
struct GeneralSaddleProblem {
  Eigen::Index dim_x = 0;
  Eigen::Index dim_y = 0;
  PartialGradientOracle grad_x_F;
  PartialGradientOracle grad_y_F;
  SmoothnessSpec spec;

  void check(const IteratePair& p) const {
    detail::require_dim(p.x.size(), dim_x, "x");
    detail::require_dim(p.y.size(), dim_y, "y");
  }

  [[nodiscard]] Vector gradient_x(const Vector& x, const Vector& y) const {
    Vector g = grad_x_F(x, y);
    detail::require_dim(g.size(), dim_x, "grad_x_F output");
    return g;
  }

  [[nodiscard]] Vector gradient_y(const Vector& x, const Vector& y) const {
    Vector g = grad_y_F(x, y);
    detail::require_dim(g.size(), dim_y, "grad_y_F output");
    return g;
  }
};

/// Views a bilinearly coupled problem as F(x, y) = f(x) + y^T A x - g(y).
/// The returned oracles share the matrix and oracles of `problem` by value.
inline GeneralSaddleProblem to_general(const BilinearSaddleProblem& problem) {
  GeneralSaddleProblem general;
  general.dim_x = problem.dim_x;
  general.dim_y = problem.dim_y;
  general.spec = problem.spec;
  general.grad_x_F = [grad_f = problem.grad_f, A = problem.A](
                         const Vector& x, const Vector& y) -> Vector {
    return grad_f(x) + A.transpose() * y;
  };
  general.grad_y_F = [grad_g = problem.grad_g, A = problem.A](
                         const Vector& x, const Vector& y) -> Vector {
    return A * x - grad_g(y);
  };
  return general;
}

/// B_h(z1, z2) = h(z1) - h(z2) - <grad h(z2), z1 - z2>.
inline Scalar bregman_divergence(const ValueOracle& value_h,
                                 const GradientOracle& grad_h, const Vector& z1,
                                 const Vector& z2) {
  detail::require_dim(z1.size(), z2.size(), "bregman_divergence z1 vs z2");
  const Vector g = grad_h(z2);
  detail::require_dim(g.size(), z2.size(), "bregman_divergence gradient");
  return value_h(z1) - value_h(z2) - g.dot(z1 - z2);
}

/// max{||grad f(x) + A^T y||, ||grad g(y) - A x||}; zero exactly on the
/// solution set.
inline Scalar optimality_residual(const BilinearSaddleProblem& problem,
                                  const IteratePair& p) {
  problem.check(p);
  const Scalar rx = (problem.gradient_f(p.x) + problem.A.transpose() * p.y).norm();
  const Scalar ry = (problem.gradient_g(p.y) - problem.A * p.x).norm();
  return std::max(rx, ry);
}

/// max{||grad_x F(x, y)||, ||grad_y F(x, y)||}.
inline Scalar optimality_residual(const GeneralSaddleProblem& problem,
                                  const IteratePair& p) {
  problem.check(p);
  return std::max(problem.gradient_x(p.x, p.y).norm(),
                  problem.gradient_y(p.x, p.y).norm());
}

/// Squared distance of p to the nearest reference point in the
/// max{||x - x*||^2, ||y - y*||^2} sense. Accuracies are squared distances
/// throughout the library.
inline Scalar squared_distance_to(std::span<const IteratePair> reference,
                                  const IteratePair& p) {
  detail::require(!reference.empty(), "reference solution set is empty");
  Scalar best = kInf;
  for (const auto& r : reference) {
    detail::require_dim(r.x.size(), p.x.size(), "reference x");
    detail::require_dim(r.y.size(), p.y.size(), "reference y");
    best = std::min(best, std::max((p.x - r.x).squaredNorm(),
                                   (p.y - r.y).squaredNorm()));
  }
  return best;
}

/// True iff p is an eps-accurate solution with respect to the sampled
/// reference set. eps is a bound on squared distances. When the true solution
/// set is a continuum the sample makes this a conservative check.
inline bool check_epsilon_accurate(const IteratePair& p,
                                   std::span<const IteratePair> reference,
                                   Scalar eps) {
  detail::require(eps > 0, "eps must be positive");
  return squared_distance_to(reference, p) <= eps;
}

}  // namespace saddle

#endif  // SADDLE_CORE_HPP

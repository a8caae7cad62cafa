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

#ifndef SADDLE_PROBLEMS_HPP
#define SADDLE_PROBLEMS_HPP

#include <saddle/core.hpp>
#include <saddle/spectral.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

/// Synthetic instances of
///
///   min_x max_y  1/2 x^T B x + a^T x + y^T A x - 1/2 y^T C y - b^T y
///
/// with known constants and a reference saddle point. The reference is the
/// minimum-norm solution of the KKT system
///
///   [B  A^T] [x]   [-a]
///   [A  -C ] [y] = [ b],
///
/// which lies in range A^T x range A whenever the range flags hold.
namespace saddle {

/// 1/2 z^T Q z + c^T z with Q symmetric positive semidefinite, plus its
/// eigendecomposition for the conjugate.
class QuadraticFunction {
 public:
  QuadraticFunction() = default;
  QuadraticFunction(Matrix hessian, Vector linear)
      : hessian_(std::move(hessian)), linear_(std::move(linear)) {
    detail::require(hessian_.rows() == hessian_.cols(), "Hessian must be square");
    detail::require_dim(linear_.size(), hessian_.rows(), "linear term");
    detail::require((hessian_ - hessian_.transpose()).norm() <=
                        1e-12 * (1 + hessian_.norm()),
                    "Hessian must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hessian_);
    eigenvalues_ = eig.eigenvalues();
    eigenvectors_ = eig.eigenvectors();
    const Scalar top = std::max<Scalar>(0, eigenvalues_.maxCoeff());
    detail::require(eigenvalues_.minCoeff() >= -1e-10 * (1 + top),
                    "Hessian must be positive semidefinite");
    cutoff_ = 1e-12 * top;
  }

  [[nodiscard]] Eigen::Index dim() const { return linear_.size(); }
  [[nodiscard]] const Matrix& hessian() const { return hessian_; }
  [[nodiscard]] const Vector& linear() const { return linear_; }

  [[nodiscard]] Scalar value(const Vector& z) const {
    return 0.5 * z.dot(hessian_ * z) + linear_.dot(z);
  }
  [[nodiscard]] Vector gradient(const Vector& z) const {
    return hessian_ * z + linear_;
  }

  /// Largest eigenvalue (smoothness constant).
  [[nodiscard]] Scalar smoothness() const {
    return std::max<Scalar>(0, eigenvalues_.maxCoeff());
  }
  /// Smallest eigenvalue (strong convexity modulus), zero below rounding.
  [[nodiscard]] Scalar strong_convexity() const {
    const Scalar lo = eigenvalues_.minCoeff();
    return lo > cutoff_ ? lo : 0;
  }

  /// h*(w) = 1/2 (w - c)^T Q^+ (w - c) when w - c lies in range Q, +inf
  /// otherwise. Range membership is tested to `tolerance` relative to the
  /// size of w and c.
  [[nodiscard]] Scalar conjugate(const Vector& w, Scalar tolerance = 1e-9) const {
    detail::require_dim(w.size(), dim(), "conjugate argument");
    const Vector shifted = w - linear_;
    const Vector coords = eigenvectors_.transpose() * shifted;
    Scalar value = 0;
    Scalar off_range_sq = 0;
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
      if (eigenvalues_(i) > cutoff_) {
        value += 0.5 * coords(i) * coords(i) / eigenvalues_(i);
      } else {
        off_range_sq += coords(i) * coords(i);
      }
    }
    if (std::sqrt(off_range_sq) > tolerance * (1 + w.norm() + linear_.norm())) {
      return kInf;
    }
    return value;
  }

 private:
  Matrix hessian_;
  Vector linear_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
  Scalar cutoff_ = 0;
};

/// A quadratic saddle instance with exact constants and a reference point.
/// f = 1/2 x^T B x + a^T x, g = 1/2 y^T C y + b^T y.
struct QuadraticSaddleInstance {
  std::string name;
  QuadraticFunction f;
  QuadraticFunction g;
  Matrix A;
  SmoothnessSpec spec;
  IteratePair reference;

  [[nodiscard]] const Matrix& hess_f() const { return f.hessian(); }
  [[nodiscard]] const Vector& lin_f() const { return f.linear(); }
  [[nodiscard]] const Matrix& hess_g() const { return g.hessian(); }
  [[nodiscard]] const Vector& lin_g() const { return g.linear(); }

  /// Oracle view. The oracles share ownership of this instance's data.
  [[nodiscard]] BilinearSaddleProblem problem() const {
    auto fp = std::make_shared<const QuadraticFunction>(f);
    auto gp = std::make_shared<const QuadraticFunction>(g);
    BilinearSaddleProblem p;
    p.dim_x = A.cols();
    p.dim_y = A.rows();
    p.A = A;
    p.spec = spec;
    p.grad_f = [fp](const Vector& x) { return fp->gradient(x); };
    p.grad_g = [gp](const Vector& y) { return gp->gradient(y); };
    p.value_f = [fp](const Vector& x) { return fp->value(x); };
    p.value_g = [gp](const Vector& y) { return gp->value(y); };
    return p;
  }

  /// The same instance as a general problem, with the coupling lower moduli
  /// taken from lambda_min (no range-space relaxation).
  [[nodiscard]] GeneralSaddleProblem general_problem() const {
    GeneralSaddleProblem general = to_general(problem());
    SmoothnessSpec s = spec;
    s.range_f_in_range_At = false;
    s.range_g_in_range_A = false;
    general.spec = with_coupling_constants(s, A);
    return general;
  }

  /// P(x) = f(x) + g*(A x).
  [[nodiscard]] Scalar primal_value(const Vector& x) const {
    return f.value(x) + g.conjugate(A * x);
  }
  /// D(y) = -g(y) - f*(-A^T y).
  [[nodiscard]] Scalar dual_value(const Vector& y) const {
    return -g.value(y) - f.conjugate(-(A.transpose() * y));
  }
};

namespace detail {

inline Scalar kkt_scale(const QuadraticFunction& f, const QuadraticFunction& g,
                        const Matrix& A) {
  return 1 + f.hessian().norm() + g.hessian().norm() + A.norm() +
         f.linear().norm() + g.linear().norm();
}

inline Matrix random_orthogonal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<Scalar> normal;
  Matrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  // Fix column signs so Q is Haar distributed.
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1;
  return Q;
}

inline Vector random_normal(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<Scalar> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// n values with the first equal to `first`, the last to `last` and the rest
/// uniform in between.
inline Vector spread(Eigen::Index n, Scalar first, Scalar last, std::mt19937_64& rng) {
  Vector v(n);
  std::uniform_real_distribution<Scalar> unif(std::min(first, last),
                                              std::max(first, last));
  for (Eigen::Index i = 0; i < n; ++i) v(i) = unif(rng);
  v(0) = first;
  if (n > 1) v(n - 1) = last;
  return v;
}

inline Matrix kron_identity(const Matrix& M, Eigen::Index k) {
  Matrix out = Matrix::Zero(M.rows() * k, M.cols() * k);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      out.block(i * k, j * k, k, k) = M(i, j) * Matrix::Identity(k, k);
  return out;
}

/// Symmetric matrix with eigenvalues spread over [lo, hi].
inline Matrix random_spd(Eigen::Index n, Scalar lo, Scalar hi, std::mt19937_64& rng) {
  if (n == 1) require(lo == hi, "a 1x1 Hessian cannot have distinct extreme eigenvalues");
  const Matrix Q = random_orthogonal(n, rng);
  const Vector eigen = spread(n, lo, hi, rng);
  Matrix S = Q * eigen.asDiagonal() * Q.transpose();
  return 0.5 * (S + S.transpose());
}

/// rows x cols matrix with the given singular values (length min(rows, cols)).
inline Matrix random_with_singular_values(Eigen::Index rows, Eigen::Index cols,
                                          const Vector& singular,
                                          std::mt19937_64& rng) {
  const Matrix U = random_orthogonal(rows, rng);
  const Matrix V = random_orthogonal(cols, rng);
  Matrix S = Matrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < singular.size(); ++i) S(i, i) = singular(i);
  return U * S * V.transpose();
}

}  // namespace detail

/// Builds an instance from explicit data. The smoothness constants are computed from the
/// matrices; the range flags are declared by the caller. Throws
/// ContractViolation when the KKT system has no solution.
inline QuadraticSaddleInstance make_quadratic_instance(
    std::string name, const Matrix& B, const Vector& a, const Matrix& C,
    const Vector& b, const Matrix& A, bool range_g_in_range_A,
    bool range_f_in_range_At) {
  detail::require(A.rows() > 0 && A.cols() > 0, "coupling matrix is empty");
  QuadraticSaddleInstance inst;
  inst.name = std::move(name);
  inst.f = QuadraticFunction(B, a);
  inst.g = QuadraticFunction(C, b);
  detail::require_dim(inst.f.dim(), A.cols(), "f dimension vs A columns");
  detail::require_dim(inst.g.dim(), A.rows(), "g dimension vs A rows");
  inst.A = A;

  SmoothnessSpec s;
  s.L_x = inst.f.smoothness();
  s.mu_x = inst.f.strong_convexity();
  s.L_y = inst.g.smoothness();
  s.mu_y = inst.g.strong_convexity();
  s.range_g_in_range_A = range_g_in_range_A;
  s.range_f_in_range_At = range_f_in_range_At;
  inst.spec = with_coupling_constants(s, A);

  const Eigen::Index dx = A.cols(), dy = A.rows();
  Matrix K(dx + dy, dx + dy);
  K << B, A.transpose(), A, -C;
  Vector rhs(dx + dy);
  rhs << -a, b;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(K);
  cod.setThreshold(1e-12);
  const Vector z = cod.solve(rhs);
  const Scalar residual = (K * z - rhs).norm();
  if (!(residual <= 1e-10 * detail::kkt_scale(inst.f, inst.g, A) * (1 + z.norm()))) {
    throw ContractViolation("KKT system is inconsistent: the problem has no saddle point");
  }
  inst.reference = {z.head(dx), z.tail(dy)};
  return inst;
}

/// Quadratic instance with prescribed L_x, mu_x, L_y, mu_y, L_xy and smallest
/// singular value max{mu_xy, mu_yx}. Linear terms are random, so both range
/// flags are false and the declared mu_xy, mu_yx come from lambda_min.
inline QuadraticSaddleInstance make_quadratic_saddle(Eigen::Index d_x, Eigen::Index d_y,
                                                     const SmoothnessSpec& target,
                                                     std::uint64_t seed) {
  detail::require(d_x > 0 && d_y > 0, "dimensions must be positive");
  target.validate();
  if (target.mu_xy > 0) {
    detail::require(d_y <= d_x, "mu_xy > 0 needs d_y <= d_x (A A^T nonsingular)");
  }
  if (target.mu_yx > 0) {
    detail::require(d_x <= d_y, "mu_yx > 0 needs d_x <= d_y (A^T A nonsingular)");
  }
  if (target.mu_xy > 0 && target.mu_yx > 0) {
    detail::require(target.mu_xy == target.mu_yx,
                    "a square coupling matrix has a single smallest singular value");
  }
  std::mt19937_64 rng(seed);
  const Matrix B = detail::random_spd(d_x, target.mu_x, target.L_x, rng);
  const Matrix C = detail::random_spd(d_y, target.mu_y, target.L_y, rng);
  const Eigen::Index r = std::min(d_x, d_y);
  const Scalar sigma_min = std::max(target.mu_xy, target.mu_yx);
  Vector singular = detail::spread(r, target.L_xy, sigma_min, rng);
  if (r == 1) singular(0) = target.L_xy;
  const Matrix A = detail::random_with_singular_values(d_y, d_x, singular, rng);
  const Vector a = detail::random_normal(d_x, rng);
  const Vector b = detail::random_normal(d_y, rng);
  return make_quadratic_instance("quadratic", B, a, C, b, A, false, false);
}

/// a^T x + y^T A x - b^T y with A given; a must lie in range A^T and b in
/// range A, otherwise no saddle point exists.
inline QuadraticSaddleInstance make_bilinear_from(const Matrix& A, const Vector& a,
                                                  const Vector& b) {
  const Eigen::Index dx = A.cols(), dy = A.rows();
  const Vector a_proj = project_onto_range(A, a, RangeSide::range_At);
  const Vector b_proj = project_onto_range(A, b, RangeSide::range_A);
  if ((a - a_proj).norm() > 1e-10 * (1 + a.norm())) {
    throw ContractViolation("bilinear problem has no saddle point: a is not in range A^T");
  }
  if ((b - b_proj).norm() > 1e-10 * (1 + b.norm())) {
    throw ContractViolation("bilinear problem has no saddle point: b is not in range A");
  }
  return make_quadratic_instance("bilinear", Matrix::Zero(dx, dx), a,
                                 Matrix::Zero(dy, dy), b, A, true, true);
}

/// Square bilinear instance; A has singular values spread over
/// [1, condition].
inline QuadraticSaddleInstance make_bilinear(Eigen::Index d, std::uint64_t seed,
                                             Scalar condition = 2) {
  detail::require(d >= 1, "d must be at least 1");
  detail::require(condition >= 1, "condition must be >= 1");
  std::mt19937_64 rng(seed);
  const Vector singular = detail::spread(d, condition, 1, rng);
  const Matrix A = detail::random_with_singular_values(d, d, singular, rng);
  const Vector a = A.transpose() * detail::random_normal(d, rng);
  const Vector b = A * detail::random_normal(d, rng);
  return make_bilinear_from(A, a, b);
}

/// min f(x) s.t. A x = b as min_x max_y f(x) + y^T A x - b^T y. f is a
/// strongly convex quadratic with eigenvalues in [mu_x, L_x]; A has full row
/// rank, or rank n_constraints - 1 when `rank_deficient`.
inline QuadraticSaddleInstance make_affine_constrained(
    Eigen::Index d_x, Eigen::Index n_constraints, Scalar L_x, Scalar mu_x,
    std::uint64_t seed, bool rank_deficient = false, Scalar condition = 2) {
  detail::require(n_constraints >= 1 && n_constraints <= d_x,
                  "need 1 <= n_constraints <= d_x");
  detail::require(mu_x > 0 && L_x >= mu_x, "f must be strongly convex");
  detail::require(!rank_deficient || n_constraints >= 2,
                  "a rank-deficient constraint matrix needs at least two rows");
  std::mt19937_64 rng(seed);
  const Matrix B = detail::random_spd(d_x, mu_x, L_x, rng);
  Vector singular = detail::spread(n_constraints, condition, 1, rng);
  if (rank_deficient) singular(n_constraints - 1) = 0;
  const Matrix A = detail::random_with_singular_values(n_constraints, d_x, singular, rng);
  const Vector a = detail::random_normal(d_x, rng);
  const Vector b = A * detail::random_normal(d_x, rng);  // b in range A
  auto inst = make_quadratic_instance("affine_constrained", B, a,
                                      Matrix::Zero(n_constraints, n_constraints), b,
                                      A, true, false);
  return inst;
}

/// B, C, b of the projected Bellman error ||B x - b||^2_{C^{-1}}.
struct MspbeSystem {
  Matrix B;
  Matrix C;
  Vector b;

  /// argmin_x ||B x - b||^2_{C^{-1}}: solves B^T C^{-1} B x = B^T C^{-1} b.
  [[nodiscard]] Vector direct_solution() const {
    const Eigen::LLT<Matrix> c_factor(C);
    const Matrix Cinv_B = c_factor.solve(B);
    const Vector Cinv_b = c_factor.solve(b);
    const Matrix normal = B.transpose() * Cinv_B;
    return normal.completeOrthogonalDecomposition().solve(B.transpose() * Cinv_b);
  }
};

/// C = sum phi_t phi_t^T, b = sum r_t phi_t, B = C - gamma sum phi_t phi_{t+1}^T
/// over transitions t (rows of the feature matrices).
inline MspbeSystem mspbe_from_transitions(const Matrix& features,
                                          const Matrix& next_features,
                                          const Vector& rewards, Scalar gamma) {
  detail::require(features.rows() == next_features.rows() &&
                      features.cols() == next_features.cols(),
                  "feature matrices must have the same shape");
  detail::require_dim(rewards.size(), features.rows(), "rewards");
  detail::require(gamma > 0 && gamma < 1, "gamma must lie in (0, 1)");
  MspbeSystem sys;
  sys.C = features.transpose() * features;
  sys.b = features.transpose() * rewards;
  sys.B = sys.C - gamma * features.transpose() * next_features;
  return sys;
}

/// Saddle form min_x max_y -2 y^T B x - y^T C y + 2 b^T y, i.e. f = 0,
/// coupling -2B and g(y) = y^T C y - 2 b^T y.
inline QuadraticSaddleInstance make_mspbe_instance(const MspbeSystem& sys) {
  const Eigen::Index d = sys.B.cols();
  return make_quadratic_instance("mspbe", Matrix::Zero(d, d), Vector::Zero(d),
                                 2 * sys.C, -2 * sys.b, -2 * sys.B, true, true);
}

/// Random policy-evaluation data: Gaussian features for n_states states, a
/// random Markov chain trajectory of 20 n_states transitions and uniform
/// rewards. Regenerates (up to 10 attempts) until C is positive definite and
/// B is nonsingular, which makes mu_yx > 0 for the f = 0 saddle form.
inline MspbeSystem make_mspbe_system(Eigen::Index n_states, Eigen::Index d_features,
                                     Scalar gamma, std::uint64_t seed) {
  detail::require(n_states >= d_features && d_features >= 1,
                  "need n_states >= d_features >= 1");
  detail::require(gamma > 0 && gamma < 1, "gamma must lie in (0, 1)");
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
    std::normal_distribution<Scalar> normal;
    std::uniform_real_distribution<Scalar> unif(0, 1);
    Matrix phi(n_states, d_features);
    for (Eigen::Index j = 0; j < d_features; ++j)
      for (Eigen::Index i = 0; i < n_states; ++i) phi(i, j) = normal(rng);
    Vector state_reward(n_states);
    for (Eigen::Index i = 0; i < n_states; ++i) state_reward(i) = unif(rng);
    std::vector<std::discrete_distribution<Eigen::Index>> transition;
    for (Eigen::Index i = 0; i < n_states; ++i) {
      std::vector<Scalar> w(static_cast<std::size_t>(n_states));
      for (auto& wi : w) wi = unif(rng);
      transition.emplace_back(w.begin(), w.end());
    }
    const Eigen::Index T = 20 * n_states;
    Matrix features(T, d_features), next_features(T, d_features);
    Vector rewards(T);
    Eigen::Index s = 0;
    for (Eigen::Index t = 0; t < T; ++t) {
      const Eigen::Index s_next = transition[static_cast<std::size_t>(s)](rng);
      features.row(t) = phi.row(s);
      next_features.row(t) = phi.row(s_next);
      rewards(t) = state_reward(s);
      s = s_next;
    }
    MspbeSystem sys = mspbe_from_transitions(features, next_features, rewards, gamma);
    Eigen::SelfAdjointEigenSolver<Matrix> c_eig(sys.C, Eigen::EigenvaluesOnly);
    Eigen::JacobiSVD<Matrix> b_svd(sys.B);
    const auto& sv = b_svd.singularValues();
    if (c_eig.eigenvalues().minCoeff() > 1e-8 * c_eig.eigenvalues().maxCoeff() &&
        sv(sv.size() - 1) > 1e-8 * sv(0)) {
      return sys;
    }
  }
  throw ContractViolation("could not generate a nonsingular MSPBE system in 10 attempts");
}

inline QuadraticSaddleInstance make_mspbe_instance(Eigen::Index n_states,
                                                   Eigen::Index d_features,
                                                   Scalar gamma, std::uint64_t seed) {
  return make_mspbe_instance(make_mspbe_system(n_states, d_features, gamma, seed));
}

/// Ridge regression min_x reg/2 ||x||^2 + 1/2 ||A x - t||^2 in saddle form
/// with g(y) = 1/2 ||y||^2 + t^T y (the conjugate of the squared loss).
inline QuadraticSaddleInstance make_ridge_erm_from(const Matrix& A, const Vector& t,
                                                   Scalar reg) {
  detail::require(reg > 0, "reg must be positive");
  const Eigen::Index n = A.rows(), d = A.cols();
  return make_quadratic_instance("ridge_erm", reg * Matrix::Identity(d, d),
                                 Vector::Zero(d), Matrix::Identity(n, n), t, A,
                                 false, false);
}

inline QuadraticSaddleInstance make_ridge_erm(Eigen::Index n_samples, Eigen::Index d,
                                              Scalar reg, std::uint64_t seed) {
  detail::require(n_samples > 0 && d > 0, "dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<Scalar> normal;
  Matrix A(n_samples, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n_samples; ++i)
      A(i, j) = normal(rng) / std::sqrt(static_cast<Scalar>(n_samples));
  const Vector t = detail::random_normal(n_samples, rng);
  return make_ridge_erm_from(A, t, reg);
}

enum class Topology { path, ring, complete };

inline Matrix graph_laplacian(Eigen::Index n, Topology topology) {
  Matrix W = Matrix::Zero(n, n);
  auto edge = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j || W(i, j) != 0) return;
    W(i, j) = W(j, i) = -1;
    W(i, i) += 1;
    W(j, j) += 1;
  };
  for (Eigen::Index i = 0; i + 1 < n; ++i) edge(i, i + 1);
  if (topology == Topology::ring && n > 2) edge(n - 1, 0);
  if (topology == Topology::complete) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) edge(i, j);
  }
  return W;
}

/// Principal square root of a symmetric positive semidefinite matrix.
inline Matrix psd_sqrt(const Matrix& W) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(W);
  const Vector root = eig.eigenvalues().cwiseMax(0).cwiseSqrt();
  Matrix R = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (R + R.transpose());
}

/// Consensus problem sum_i f_i(x_i) s.t. sqrt(W) (x_1, ..., x_n) = 0 with W
/// the graph Laplacian, in saddle form with A = sqrt(W) kron I. Local
/// functions are strongly convex quadratics with eigenvalues in [1, 4];
/// `identical_local_functions` gives every node the same f_i.
inline QuadraticSaddleInstance make_decentralized_consensus(
    Eigen::Index n_nodes, Eigen::Index local_dim, Topology topology,
    std::uint64_t seed, bool identical_local_functions = false) {
  detail::require(n_nodes >= 2, "need at least two nodes");
  detail::require(local_dim >= 1, "local_dim must be positive");
  std::mt19937_64 rng(seed);
  const Eigen::Index d = n_nodes * local_dim;
  Matrix B = Matrix::Zero(d, d);
  Vector a(d);
  Matrix Q;
  Vector c;
  for (Eigen::Index i = 0; i < n_nodes; ++i) {
    if (i == 0 || !identical_local_functions) {
      if (local_dim == 1) {
        Q = Matrix::Constant(1, 1, std::uniform_real_distribution<Scalar>(1, 4)(rng));
      } else {
        Q = detail::random_spd(local_dim, 1, 4, rng);
      }
      c = detail::random_normal(local_dim, rng);
    }
    B.block(i * local_dim, i * local_dim, local_dim, local_dim) = Q;
    a.segment(i * local_dim, local_dim) = c;
  }
  const Matrix root = psd_sqrt(graph_laplacian(n_nodes, topology));
  const Matrix A = detail::kron_identity(root, local_dim);
  return make_quadratic_instance("decentralized", B, a, Matrix::Zero(d, d),
                                 Vector::Zero(d), A, true, false);
}

}  // namespace saddle

#endif  // SADDLE_PROBLEMS_HPP

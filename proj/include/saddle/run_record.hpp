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

#ifndef SADDLE_RUN_RECORD_HPP
#define SADDLE_RUN_RECORD_HPP

#include <saddle/core.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace saddle {

/// Oracle accounting: gradient calls to each block and products with A or
/// A^T. For general problems grad_f/grad_g count grad_x F/grad_y F calls.
struct OracleCounters {
  std::int64_t grad_f = 0;
  std::int64_t grad_g = 0;
  std::int64_t matvec = 0;

  friend bool operator==(const OracleCounters&, const OracleCounters&) = default;
};

enum class RunStatus { converged, max_iter, diverged };

inline std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged:
      return "converged";
    case RunStatus::max_iter:
      return "max_iter";
    case RunStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

/// When to stop a run. Tolerances are optional; the run stops at the first
/// one met. epsilon is a squared-distance accuracy and needs a reference.
struct StoppingRule {
  int max_iterations = 1000;
  std::optional<Scalar> residual_tol;
  std::optional<Scalar> epsilon;
};

/// Diagnostics a run should collect.
struct RunOptions {
  std::optional<IteratePair> reference;
  bool track_lyapunov = false;
  /// Project the APDG start point onto range A^T x range A.
  bool strict_range_projection = true;
  /// Abort once ||(x, y)|| exceeds divergence_factor * (1 + ||start||).
  Scalar divergence_factor = 1e12;
};

/// Per-iteration trace. Entry k describes the iterate after k steps, so
/// every array has iterations() + 1 entries.
struct RunRecord {
  std::vector<Scalar> residual;
  std::vector<Scalar> dist_x_sq;  // NaN without a reference
  std::vector<Scalar> dist_y_sq;  // NaN without a reference
  std::vector<Scalar> lyapunov;   // NaN when not tracked
  std::vector<std::int64_t> grad_f_calls;
  std::vector<std::int64_t> grad_g_calls;
  std::vector<std::int64_t> matvec_calls;
  std::vector<double> elapsed_seconds;
  RunStatus status = RunStatus::max_iter;
  IteratePair final_iterate;

  [[nodiscard]] int iterations() const {
    return residual.empty() ? 0 : static_cast<int>(residual.size()) - 1;
  }

  [[nodiscard]] OracleCounters final_counters() const {
    if (residual.empty()) return {};
    return {grad_f_calls.back(), grad_g_calls.back(), matvec_calls.back()};
  }
};

/// What a solver reports about its current state to the driver.
struct Observation {
  IteratePair point;
  OracleCounters counters;
  Scalar lyapunov = std::numeric_limits<Scalar>::quiet_NaN();
};

namespace detail {

/// Shared iteration loop. `observe(state)` yields an Observation, `residual`
/// evaluates the optimality residual at a point and `step(state)` advances.
template <class State, class Observe, class Residual, class Step>
RunRecord drive(State state, const StoppingRule& stop, const RunOptions& options,
                Observe&& observe, Residual&& residual, Step&& step) {
  require(stop.max_iterations >= 0, "max_iterations must be nonnegative");
  require(!stop.epsilon || options.reference.has_value(),
          "epsilon stopping needs a reference solution");
  const auto nan = std::numeric_limits<Scalar>::quiet_NaN();
  const auto t0 = std::chrono::steady_clock::now();

  RunRecord record;
  Scalar limit = kInf;
  auto push = [&](const Observation& obs) {
    const Scalar r = residual(obs.point);
    record.residual.push_back(r);
    if (options.reference) {
      record.dist_x_sq.push_back((obs.point.x - options.reference->x).squaredNorm());
      record.dist_y_sq.push_back((obs.point.y - options.reference->y).squaredNorm());
    } else {
      record.dist_x_sq.push_back(nan);
      record.dist_y_sq.push_back(nan);
    }
    record.lyapunov.push_back(obs.lyapunov);
    record.grad_f_calls.push_back(obs.counters.grad_f);
    record.grad_g_calls.push_back(obs.counters.grad_g);
    record.matvec_calls.push_back(obs.counters.matvec);
    record.elapsed_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    record.final_iterate = obs.point;
    return r;
  };
  auto done = [&](Scalar r) {
    if (stop.residual_tol && r <= *stop.residual_tol) return true;
    if (stop.epsilon && std::max(record.dist_x_sq.back(), record.dist_y_sq.back()) <=
                            *stop.epsilon) {
      return true;
    }
    return false;
  };

  {
    const Observation first = observe(state);
    const Scalar start_norm =
        std::sqrt(first.point.x.squaredNorm() + first.point.y.squaredNorm());
    limit = options.divergence_factor * (1 + start_norm);
    if (done(push(first))) {
      record.status = RunStatus::converged;
      return record;
    }
  }

  for (int k = 0; k < stop.max_iterations; ++k) {
    state = step(std::move(state));
    const Observation obs = observe(state);
    const Scalar norm = std::sqrt(obs.point.x.squaredNorm() + obs.point.y.squaredNorm());
    const Scalar r = push(obs);
    if (!std::isfinite(norm) || norm > limit || !std::isfinite(r)) {
      record.status = RunStatus::diverged;
      return record;
    }
    if (done(r)) {
      record.status = RunStatus::converged;
      return record;
    }
  }
  record.status = RunStatus::max_iter;
  return record;
}

}  // namespace detail

}  // namespace saddle

#endif  // SADDLE_RUN_RECORD_HPP

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

#ifndef SADDLE_CLI_EXPERIMENT_HPP
#define SADDLE_CLI_EXPERIMENT_HPP

#include <saddle/run_record.hpp>
#include <saddle_cli/config.hpp>

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace saddle::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInternalError = 2;
inline constexpr int kExitCertificateFailure = 3;

/// Oracle calls a solver spends per iteration. GDAE reuses one gradient
/// from the previous step, so its very first step costs one grad_x call
/// fewer than the steady-state budget.
struct OracleBudget {
  int grad_f = 0;
  int grad_g = 0;
  int matvec = 0;
  int first_step_grad_f_saving = 0;
};

OracleBudget oracle_budget(Solver solver);

/// Counters a run of `iterations` steps must report.
OracleCounters expected_counters(Solver solver, int iterations);

/// Outcome of one (instance, solver, regime) combination.
struct RunResult {
  std::string solver;
  std::string regime_requested;  // "a".."d", "auto" or "-" for baselines
  std::string regime_used;
  /// converged, max_iter, diverged or inapplicable.
  std::string status;
  std::string message;
  std::optional<double> scheduled_theta;
  std::optional<double> eta_x;
  std::optional<double> eta_y;
  std::optional<double> fitted_rate;
  std::optional<double> r_squared;
  std::optional<double> theoretical_T;
  std::optional<double> final_residual;
  int iterations = 0;
  OracleCounters counters;
  bool budget_consistent = true;
  std::optional<RunRecord> record;
  std::string trace_file;
};

/// Runs one solver on `instance` with the experiment's settings.
/// Inapplicable regimes come back as status "inapplicable", not as errors.
RunResult run_single(const ExperimentConfig& experiment,
                     const QuadraticSaddleInstance& instance, Solver solver,
                     std::optional<Regime> regime, bool track_lyapunov);

/// CSV columns k, residual, dist_x_sq, dist_y_sq, lyapunov, grad_f_calls,
/// grad_g_calls, matvec_calls; floats in %.17e.
void write_trace_csv(const RunRecord& record, std::ostream& out);

nlohmann::json run_to_json(const RunResult& result);

nlohmann::json summary_json(const ExperimentConfig& experiment,
                            const QuadraticSaddleInstance& instance,
                            const std::vector<RunResult>& runs);

/// Runs every combination in the config and writes one trace per run plus
/// a summary.json per experiment under <output_dir>/<experiment>/.
int run_experiment(const std::filesystem::path& config_path, std::ostream& out,
                   std::ostream& err,
                   const std::optional<std::filesystem::path>& output_dir = std::nullopt);

struct CertificateViolation {
  int k = 0;
  std::string inequality;  // "contraction" or "sandwich"
  double margin = 0;       // amount by which the slackened bound is exceeded
};

/// Result of checking Psi^{k+1} <= theta Psi^k + slack and
/// Psi^k >= 3/(4 eta_x) ||x - x*||^2 + 1/eta_y ||y - y*||^2 - slack, with
/// slack = 1e-9 Psi^0. Margins are lhs - rhs relative to Psi^0; negative
/// means the inequality holds.
struct CertificateReport {
  double worst_contraction = -std::numeric_limits<double>::infinity();
  double worst_sandwich = -std::numeric_limits<double>::infinity();
  int steps_checked = 0;
  std::vector<CertificateViolation> violations;
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

inline constexpr double kCertificateSlack = 1e-9;

CertificateReport check_certificates(const RunRecord& record, double theta,
                                     double eta_x, double eta_y);

/// Runs the APDG and GDAE entries of the config with Lyapunov tracking.
/// Returns 0 iff every run satisfies both inequalities at every iteration
/// and kExitCertificateFailure when any run violates one.
int verify_certificates(const std::filesystem::path& config_path, std::ostream& out,
                        std::ostream& err);

}  // namespace saddle::cli

#endif  // SADDLE_CLI_EXPERIMENT_HPP

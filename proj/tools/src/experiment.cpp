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

#include <saddle_cli/experiment.hpp>

#include <saddle/apdg.hpp>
#include <saddle/baselines.hpp>
#include <saddle/diagnostics.hpp>
#include <saddle/gdae.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>

namespace saddle::cli {

namespace {

bool uses_regime(Solver solver) { return solver == Solver::apdg || solver == Solver::gdae; }

std::string regime_label(std::optional<Regime> regime) {
  return regime ? std::string(to_string(*regime)) : "auto";
}

IteratePair start_point(const ExperimentConfig& ex, const QuadraticSaddleInstance& inst) {
  const auto dx = inst.A.cols(), dy = inst.A.rows();
  if (!ex.random_start) return {Vector::Zero(dx), Vector::Zero(dy)};
  std::mt19937_64 rng(ex.instance.seed ^ 0x5DEECE66DULL);
  std::normal_distribution<double> normal;
  IteratePair p{Vector(dx), Vector(dy)};
  for (Eigen::Index i = 0; i < dx; ++i) p.x(i) = normal(rng);
  for (Eigen::Index i = 0; i < dy; ++i) p.y(i) = normal(rng);
  return p;
}

StoppingRule stopping_rule(const ExperimentConfig& ex) {
  StoppingRule stop;
  stop.max_iterations = ex.max_iterations;
  stop.residual_tol = ex.tolerance;
  stop.epsilon = ex.epsilon;
  return stop;
}

void apply_overrides(const Overrides& o, double& eta_x, double& eta_y, double& theta) {
  eta_x *= o.eta_x_scale;
  eta_y *= o.eta_y_scale;
  theta *= o.theta_scale;
}

void finish(RunResult& result, Solver solver, const ExperimentConfig& ex, RunRecord record) {
  result.status = std::string(to_string(record.status));
  result.iterations = record.iterations();
  result.counters = record.final_counters();
  result.budget_consistent = result.counters == expected_counters(solver, result.iterations);
  if (!record.residual.empty()) result.final_residual = record.residual.back();
  try {
    const RateFit fit = fit_linear_rate(record, ex.burn_in);
    result.fitted_rate = fit.rate;
    result.r_squared = fit.r_squared;
  } catch (const ContractViolation&) {
    // Too few points for a fit; the summary reports null.
  }
  result.record = std::move(record);
}

template <class Params>
void validate_overridden(const ExperimentConfig& ex, const Params& params) {
  try {
    params.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError("experiment '" + ex.name + "' (line " + std::to_string(ex.line) +
                      "): overrides give invalid parameters: " + e.what());
  }
}

std::optional<double> finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  if (v && std::isfinite(static_cast<double>(*v))) return *v;
  return nullptr;
}

}  // namespace

OracleBudget oracle_budget(Solver solver) {
  switch (solver) {
    case Solver::apdg:
      return {1, 1, 4, 0};
    case Solver::gdae:
      return {2, 1, 0, 1};
    case Solver::sim_gda:
    case Solver::alt_gda:
      return {1, 1, 0, 0};
    case Solver::extragradient:
      return {2, 2, 0, 0};
    case Solver::forward_backward:
      return {1, 1, 2, 0};
  }
  return {};
}

OracleCounters expected_counters(Solver solver, int iterations) {
  const OracleBudget b = oracle_budget(solver);
  OracleCounters c;
  const std::int64_t k = iterations;
  c.grad_f = k * b.grad_f - (k > 0 ? b.first_step_grad_f_saving : 0);
  c.grad_g = k * b.grad_g;
  c.matvec = k * b.matvec;
  return c;
}

RunResult run_single(const ExperimentConfig& ex, const QuadraticSaddleInstance& inst,
                     Solver solver, std::optional<Regime> regime, bool track_lyapunov) {
  RunResult result;
  result.solver = to_string(solver);
  result.regime_requested = uses_regime(solver) ? regime_label(regime) : "-";
  result.regime_used = result.regime_requested;

  const IteratePair start = start_point(ex, inst);
  const StoppingRule stop = stopping_rule(ex);
  RunOptions options;
  options.reference = inst.reference;
  options.track_lyapunov = track_lyapunov && uses_regime(solver);

  const BilinearSaddleProblem problem = inst.problem();

  switch (solver) {
    case Solver::apdg: {
      APDGParams params;
      try {
        params = schedule_params(inst.spec, regime);
      } catch (const ConfigurationError& e) {
        result.status = "inapplicable";
        result.message = e.what();
        return result;
      }
      apply_overrides(ex.overrides, params.eta_x, params.eta_y, params.theta);
      validate_overridden(ex, params);
      result.regime_used = std::string(to_string(params.regime));
      result.scheduled_theta = params.theta;
      result.eta_x = params.eta_x;
      result.eta_y = params.eta_y;
      result.theoretical_T = finite_or_null(
          theoretical_complexity(inst.spec, Method::apdg).T[params.regime]);
      finish(result, solver, ex, run_apdg(problem, params, start, stop, options));
      return result;
    }
    case Solver::gdae: {
      const GeneralSaddleProblem general = inst.general_problem();
      GDAEParams params;
      try {
        params = schedule_gdae_params(general.spec, regime);
      } catch (const ConfigurationError& e) {
        result.status = "inapplicable";
        result.message = e.what();
        return result;
      }
      apply_overrides(ex.overrides, params.eta_x, params.eta_y, params.theta);
      validate_overridden(ex, params);
      result.regime_used = std::string(to_string(params.regime));
      result.scheduled_theta = params.theta;
      result.eta_x = params.eta_x;
      result.eta_y = params.eta_y;
      result.theoretical_T = finite_or_null(
          theoretical_complexity(general.spec, Method::gdae).T[params.regime]);
      finish(result, solver, ex, run_gdae(general, params, start, stop, options));
      return result;
    }
    case Solver::sim_gda:
    case Solver::alt_gda: {
      const GeneralSaddleProblem general = to_general(problem);
      const double eta_x = ex.eta_x.value_or(default_gda_stepsize(inst.spec));
      const double eta_y = ex.eta_y.value_or(eta_x);
      result.eta_x = eta_x;
      result.eta_y = eta_y;
      const bool simultaneous = solver == Solver::sim_gda;
      auto step = [&](const BaselineState& s) {
        return simultaneous ? sim_gda_step(general, eta_x, eta_y, s)
                            : alt_gda_step(general, eta_x, eta_y, s);
      };
      finish(result, solver, ex, run_baseline(general, start, stop, options, step));
      return result;
    }
    case Solver::extragradient: {
      const GeneralSaddleProblem general = to_general(problem);
      const double eta = ex.eta.value_or(default_extragradient_stepsize(inst.spec));
      result.eta_x = eta;
      result.eta_y = eta;
      auto step = [&](const BaselineState& s) { return extragradient_step(general, eta, s); };
      finish(result, solver, ex, run_baseline(general, start, stop, options, step));
      return result;
    }
    case Solver::forward_backward: {
      const GeneralSaddleProblem general = to_general(problem);
      const double eta_x = ex.eta_x.value_or(default_forward_backward_stepsize(inst.spec));
      const double eta_y = ex.eta_y.value_or(eta_x);
      result.eta_x = eta_x;
      result.eta_y = eta_y;
      const ForwardBackward fb(problem, eta_x, eta_y);
      auto step = [&](const BaselineState& s) { return fb.step(s); };
      finish(result, solver, ex, run_baseline(general, start, stop, options, step));
      return result;
    }
  }
  throw std::logic_error("unknown solver");
}

void write_trace_csv(const RunRecord& record, std::ostream& out) {
  out << "k,residual,dist_x_sq,dist_y_sq,lyapunov,grad_f_calls,grad_g_calls,matvec_calls\n";
  char buffer[256];
  for (std::size_t k = 0; k < record.residual.size(); ++k) {
    std::snprintf(buffer, sizeof buffer,
                  "%zu,%.17e,%.17e,%.17e,%.17e,%" PRId64 ",%" PRId64 ",%" PRId64 "\n", k,
                  record.residual[k], record.dist_x_sq[k], record.dist_y_sq[k],
                  record.lyapunov[k], record.grad_f_calls[k], record.grad_g_calls[k],
                  record.matvec_calls[k]);
    out << buffer;
  }
}

nlohmann::json run_to_json(const RunResult& r) {
  nlohmann::json j;
  j["solver"] = r.solver;
  j["regime_requested"] = r.regime_requested;
  j["regime"] = r.regime_used;
  j["status"] = r.status;
  if (!r.message.empty()) j["message"] = r.message;
  j["scheduled_theta"] = opt(r.scheduled_theta);
  j["eta_x"] = opt(r.eta_x);
  j["eta_y"] = opt(r.eta_y);
  j["fitted_rate"] = opt(r.fitted_rate);
  j["r_squared"] = opt(r.r_squared);
  j["iterations"] = r.iterations;
  j["gradient_calls"] = {{"grad_f", r.counters.grad_f},
                         {"grad_g", r.counters.grad_g},
                         {"matvec", r.counters.matvec}};
  if (r.status != "inapplicable") {
    const auto solver = parse_solver(r.solver);
    const OracleBudget b = oracle_budget(*solver);
    j["per_step_budget"] = {{"grad_f", b.grad_f},
                            {"grad_g", b.grad_g},
                            {"matvec", b.matvec},
                            {"first_step_grad_f_saving", b.first_step_grad_f_saving}};
    j["budget_consistent"] = r.budget_consistent;
  }
  j["theoretical_T"] = opt(r.theoretical_T);
  j["final_residual"] = opt(r.final_residual);
  if (!r.trace_file.empty()) j["trace"] = r.trace_file;
  return j;
}

nlohmann::json summary_json(const ExperimentConfig& ex, const QuadraticSaddleInstance& inst,
                            const std::vector<RunResult>& runs) {
  nlohmann::json j;
  j["experiment"] = ex.name;
  j["instance"] = {{"generator", ex.instance.generator},
                   {"name", inst.name},
                   {"seed", ex.instance.seed},
                   {"dim_x", inst.A.cols()},
                   {"dim_y", inst.A.rows()}};
  const SmoothnessSpec& s = inst.spec;
  j["spec"] = {{"L_x", s.L_x},   {"mu_x", s.mu_x},   {"L_y", s.L_y},
               {"mu_y", s.mu_y}, {"L_xy", s.L_xy},   {"mu_xy", s.mu_xy},
               {"mu_yx", s.mu_yx}, {"range_g_in_range_A", s.range_g_in_range_A},
               {"range_f_in_range_At", s.range_f_in_range_At}};
  j["settings"] = {{"max_iterations", ex.max_iterations},
                   {"tolerance", opt(ex.tolerance)},
                   {"epsilon", opt(ex.epsilon)},
                   {"burn_in", ex.burn_in}};
  j["runs"] = nlohmann::json::array();
  for (const auto& r : runs) j["runs"].push_back(run_to_json(r));
  return j;
}

int run_experiment(const std::filesystem::path& config_path, std::ostream& out,
                   std::ostream& err, const std::optional<std::filesystem::path>& output_dir) {
  Config config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const std::filesystem::path root = output_dir.value_or(config.output_dir);

  try {
    for (const auto& ex : config.experiments) {
      QuadraticSaddleInstance inst;
      try {
        inst = build_instance(ex.instance);
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
      }
      const auto dir = root / ex.name;
      std::filesystem::create_directories(dir);

      std::vector<RunResult> runs;
      for (Solver solver : ex.solvers) {
        std::vector<std::optional<Regime>> regimes = ex.regimes;
        if (!uses_regime(solver)) regimes = {std::nullopt};
        for (const auto& regime : regimes) {
          RunResult r = run_single(ex, inst, solver, regime, ex.track_lyapunov);
          if (r.record) {
            std::string file = r.solver;
            if (uses_regime(solver)) file += "_" + r.regime_requested;
            file += ".csv";
            std::ofstream trace(dir / file);
            if (!trace) throw std::runtime_error("cannot write " + (dir / file).string());
            write_trace_csv(*r.record, trace);
            r.trace_file = file;
          }
          out << std::left << std::setw(24) << ex.name << std::setw(18) << r.solver
              << std::setw(8) << r.regime_used << std::setw(14) << r.status
              << std::setw(8) << r.iterations;
          if (r.final_residual) out << "residual=" << std::scientific << std::setprecision(3)
                                    << *r.final_residual << std::defaultfloat;
          if (!r.message.empty()) out << r.message;
          out << "\n";
          runs.push_back(std::move(r));
        }
      }
      std::ofstream summary(dir / "summary.json");
      if (!summary) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
      summary << summary_json(ex, inst, runs).dump(2) << "\n";
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitSuccess;
}

CertificateReport check_certificates(const RunRecord& record, double theta, double eta_x,
                                     double eta_y) {
  CertificateReport report;
  const auto& psi = record.lyapunov;
  if (psi.empty()) return report;
  const double psi0 = psi.front();
  const double scale = psi0 > 0 ? psi0 : 1;
  const double slack = kCertificateSlack * (psi0 > 0 ? psi0 : 0);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double floor = 3 / (4 * eta_x) * record.dist_x_sq[k] + record.dist_y_sq[k] / eta_y;
    const double sandwich = floor - psi[k];
    report.worst_sandwich = std::max(report.worst_sandwich, sandwich / scale);
    if (!(sandwich <= slack)) {
      report.violations.push_back({static_cast<int>(k), "sandwich", (sandwich - slack) / scale});
    }
    if (k + 1 < psi.size()) {
      const double contraction = psi[k + 1] - theta * psi[k];
      report.worst_contraction = std::max(report.worst_contraction, contraction / scale);
      if (!(contraction <= slack)) {
        report.violations.push_back(
            {static_cast<int>(k), "contraction", (contraction - slack) / scale});
      }
      ++report.steps_checked;
    }
  }
  return report;
}

int verify_certificates(const std::filesystem::path& config_path, std::ostream& out,
                        std::ostream& err) {
  Config config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  int runs = 0, failed = 0;
  try {
    for (const auto& ex : config.experiments) {
      QuadraticSaddleInstance inst;
      try {
        inst = build_instance(ex.instance);
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
      }
      for (Solver solver : ex.solvers) {
        if (!uses_regime(solver)) {
          out << ex.name << " " << to_string(solver) << ": skipped (no certificate)\n";
          continue;
        }
        for (const auto& regime : ex.regimes) {
          RunResult r = run_single(ex, inst, solver, regime, true);
          const std::string label = ex.name + " " + r.solver + " regime " + r.regime_used;
          if (r.status == "inapplicable") {
            err << "error: " << config_path.string() << ":" << ex.line << ": " << label
                << " is inapplicable: " << r.message << "\n";
            return kExitConfigError;
          }
          ++runs;
          const auto report =
              check_certificates(*r.record, *r.scheduled_theta, *r.eta_x, *r.eta_y);
          out << (report.passed() ? "PASS " : "FAIL ") << label << ": " << report.steps_checked
              << " steps, worst contraction margin " << std::scientific << std::setprecision(3)
              << report.worst_contraction << ", worst sandwich margin "
              << report.worst_sandwich << std::defaultfloat << "\n";
          if (!report.passed()) {
            ++failed;
            for (const auto& v : report.violations) {
              out << "  violation: " << v.inequality << " at k=" << v.k << ", margin "
                  << std::scientific << std::setprecision(3) << v.margin
                  << std::defaultfloat << "\n";
            }
          }
        }
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  out << runs - failed << "/" << runs << " certificate runs passed\n";
  return failed == 0 ? kExitSuccess : kExitCertificateFailure;
}

}  // namespace saddle::cli

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

#include <saddle_cli/config.hpp>

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace saddle::cli {

namespace {

constexpr std::array<std::pair<Solver, const char*>, 6> kSolverNames{{
    {Solver::apdg, "apdg"},
    {Solver::gdae, "gdae"},
    {Solver::sim_gda, "sim_gda"},
    {Solver::alt_gda, "alt_gda"},
    {Solver::extragradient, "extragradient"},
    {Solver::forward_backward, "forward_backward"},
}};

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

[[noreturn]] void fail_at(const std::string& file, int line, const std::string& message) {
  throw ConfigError(file + ":" + std::to_string(line) + ": " + message);
}

bool valid_name(const std::string& name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

/// Copies the scalar entries of `node` into `params`, skipping `nested`.
void collect_scalars(const YAML::Node& node, ParamMap& params,
                     const std::set<std::string>& nested, const std::string& file) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (nested.count(key)) continue;
    if (!kv.second.IsScalar()) {
      fail_at(file, line_of(kv.second), "'" + key + "' must be a scalar value");
    }
    params.set(key, kv.second.Scalar(), line_of(kv.second));
  }
}

std::vector<std::string> scalar_list(const YAML::Node& node, const std::string& key,
                                     const std::string& file) {
  std::vector<std::string> out;
  if (node.IsScalar()) {
    out.push_back(node.Scalar());
    return out;
  }
  if (!node.IsSequence() || node.size() == 0) {
    fail_at(file, line_of(node), "'" + key + "' must be a nonempty list");
  }
  for (const auto& item : node) {
    if (!item.IsScalar()) fail_at(file, line_of(item), "'" + key + "' entries must be scalars");
    out.push_back(item.Scalar());
  }
  return out;
}

ExperimentConfig parse_experiment(const YAML::Node& node, const YAML::Node& defaults,
                                  const std::string& file) {
  if (!node.IsMap()) fail_at(file, line_of(node), "each experiment must be a mapping");
  ExperimentConfig ex;
  ex.line = line_of(node);

  const std::set<std::string> nested{"instance", "solvers", "regimes", "overrides"};
  ParamMap settings(file, ex.line);
  if (defaults) collect_scalars(defaults, settings, {}, file);
  collect_scalars(node, settings, nested, file);

  ex.name = settings.get_string("name");
  if (!valid_name(ex.name)) {
    fail_at(file, ex.line, "experiment name '" + ex.name +
                               "' may only contain letters, digits, '_' and '-'");
  }
  ex.max_iterations = static_cast<int>(settings.get_int("max_iterations", 1000));
  if (ex.max_iterations < 0) fail_at(file, ex.line, "max_iterations must be nonnegative");
  if (settings.has("tolerance")) ex.tolerance = settings.get_double("tolerance");
  if (settings.has("epsilon")) ex.epsilon = settings.get_double("epsilon");
  if ((ex.tolerance && *ex.tolerance <= 0) || (ex.epsilon && *ex.epsilon <= 0)) {
    fail_at(file, ex.line, "tolerance and epsilon must be positive");
  }
  ex.burn_in = static_cast<int>(settings.get_int("burn_in", 10));
  ex.track_lyapunov = settings.get_bool("track_lyapunov", false);
  const auto start = settings.get_string("start", std::string("zero"));
  if (start != "zero" && start != "random") {
    fail_at(file, ex.line, "start must be 'zero' or 'random', got '" + start + "'");
  }
  ex.random_start = start == "random";
  if (settings.has("eta")) ex.eta = settings.get_double("eta");
  if (settings.has("eta_x")) ex.eta_x = settings.get_double("eta_x");
  if (settings.has("eta_y")) ex.eta_y = settings.get_double("eta_y");
  for (const auto& step : {ex.eta, ex.eta_x, ex.eta_y}) {
    if (step && !(*step > 0)) fail_at(file, ex.line, "stepsizes must be positive");
  }
  settings.finish();

  const YAML::Node instance = node["instance"];
  if (!instance) fail_at(file, ex.line, "experiment '" + ex.name + "' has no instance");
  if (!instance.IsMap()) fail_at(file, line_of(instance), "instance must be a mapping");
  ex.instance.params = ParamMap(file, line_of(instance));
  collect_scalars(instance, ex.instance.params, {}, file);
  {
    ParamMap probe = ex.instance.params;
    ex.instance.generator = probe.get_string("generator");
    const auto seed = probe.get_int("seed");
    if (seed < 0) fail_at(file, probe.line(), "seed must be nonnegative");
    ex.instance.seed = static_cast<std::uint64_t>(seed);
  }

  const YAML::Node solvers = node["solvers"];
  if (!solvers) fail_at(file, ex.line, "experiment '" + ex.name + "' lists no solvers");
  for (const auto& name : scalar_list(solvers, "solvers", file)) {
    const auto solver = parse_solver(name);
    if (!solver) fail_at(file, line_of(solvers), "unknown solver '" + name + "'");
    ex.solvers.push_back(*solver);
  }

  if (const YAML::Node regimes = node["regimes"]) {
    for (const auto& name : scalar_list(regimes, "regimes", file)) {
      if (name == "auto") {
        ex.regimes.emplace_back(std::nullopt);
      } else if (const auto r = parse_regime(name)) {
        ex.regimes.emplace_back(*r);
      } else {
        fail_at(file, line_of(regimes), "unknown regime '" + name + "' (use a, b, c, d or auto)");
      }
    }
  } else {
    ex.regimes.emplace_back(std::nullopt);
  }

  if (const YAML::Node overrides = node["overrides"]) {
    if (!overrides.IsMap()) fail_at(file, line_of(overrides), "overrides must be a mapping");
    ParamMap o(file, line_of(overrides));
    collect_scalars(overrides, o, {}, file);
    ex.overrides.eta_x_scale = o.get_double("eta_x_scale", 1.0);
    ex.overrides.eta_y_scale = o.get_double("eta_y_scale", 1.0);
    ex.overrides.theta_scale = o.get_double("theta_scale", 1.0);
    o.finish();
  }
  return ex;
}

}  // namespace

std::string to_string(Solver solver) {
  for (const auto& [s, name] : kSolverNames) {
    if (s == solver) return name;
  }
  return "unknown";
}

std::optional<Solver> parse_solver(const std::string& name) {
  for (const auto& [s, n] : kSolverNames) {
    if (name == n) return s;
  }
  return std::nullopt;
}

void ParamMap::set(const std::string& key, std::string value, int line) {
  entries_[key] = {std::move(value), line};
  used_[key] = false;
}

bool ParamMap::has(const std::string& key) const { return entries_.count(key) > 0; }

const ParamMap::Entry* ParamMap::find(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  used_[key] = true;
  return &it->second;
}

void ParamMap::fail(int line, const std::string& message) const {
  fail_at(file_, line, message);
}

std::int64_t ParamMap::get_int(const std::string& key, std::optional<std::int64_t> fallback) {
  const Entry* e = find(key);
  if (!e) {
    if (fallback) return *fallback;
    fail(line_, "missing required key '" + key + "'");
  }
  std::int64_t value = 0;
  const auto* first = e->value.data();
  const auto* last = first + e->value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(e->line, "'" + key + "' must be an integer, got '" + e->value + "'");
  }
  return value;
}

double ParamMap::get_double(const std::string& key, std::optional<double> fallback) {
  const Entry* e = find(key);
  if (!e) {
    if (fallback) return *fallback;
    fail(line_, "missing required key '" + key + "'");
  }
  std::istringstream in(e->value);
  in.imbue(std::locale::classic());
  double value = 0;
  in >> value;
  if (in.fail() || !in.eof() || !std::isfinite(value)) {
    fail(e->line, "'" + key + "' must be a finite number, got '" + e->value + "'");
  }
  return value;
}

bool ParamMap::get_bool(const std::string& key, std::optional<bool> fallback) {
  const Entry* e = find(key);
  if (!e) {
    if (fallback) return *fallback;
    fail(line_, "missing required key '" + key + "'");
  }
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  fail(e->line, "'" + key + "' must be true or false, got '" + e->value + "'");
}

std::string ParamMap::get_string(const std::string& key, std::optional<std::string> fallback) {
  const Entry* e = find(key);
  if (!e) {
    if (fallback) return *fallback;
    fail(line_, "missing required key '" + key + "'");
  }
  return e->value;
}

void ParamMap::finish() const {
  for (const auto& [key, used] : used_) {
    if (!used) fail(entries_.at(key).line, "unknown key '" + key + "'");
  }
}

Config parse_config(const std::string& text, const std::string& source_name) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail_at(source_name, e.mark.line + 1, "YAML syntax error: " + e.msg);
  }
  Config config;
  config.source = source_name;
  if (!root || root.IsNull()) fail_at(source_name, 1, "no experiments");
  if (!root.IsMap()) fail_at(source_name, line_of(root), "top level must be a mapping");

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (key != "output_dir" && key != "defaults" && key != "experiments") {
      fail_at(source_name, line_of(kv.first), "unknown key '" + key + "'");
    }
  }
  if (const auto out = root["output_dir"]) {
    if (!out.IsScalar()) fail_at(source_name, line_of(out), "output_dir must be a path");
    config.output_dir = out.Scalar();
  }
  const YAML::Node defaults = root["defaults"];
  if (defaults && !defaults.IsMap()) {
    fail_at(source_name, line_of(defaults), "defaults must be a mapping");
  }
  const YAML::Node experiments = root["experiments"];
  if (!experiments || experiments.IsNull() ||
      (experiments.IsSequence() && experiments.size() == 0)) {
    fail_at(source_name, experiments ? line_of(experiments) : 1, "no experiments");
  }
  if (!experiments.IsSequence()) {
    fail_at(source_name, line_of(experiments), "experiments must be a list");
  }
  std::set<std::string> names;
  for (const auto& node : experiments) {
    auto ex = parse_experiment(node, defaults, source_name);
    if (!names.insert(ex.name).second) {
      fail_at(source_name, ex.line, "duplicate experiment name '" + ex.name + "'");
    }
    config.experiments.push_back(std::move(ex));
  }
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ":0: cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

QuadraticSaddleInstance build_instance(const InstanceConfig& config) {
  ParamMap p = config.params;
  const auto& g = config.generator;
  const auto seed = static_cast<std::uint64_t>(p.get_int("seed"));
  p.get_string("generator");
  auto dim = [&](const std::string& key, std::optional<std::int64_t> fallback = {}) {
    const auto v = p.get_int(key, fallback);
    if (v < 1) p.fail(p.line(), "'" + key + "' must be at least 1");
    return static_cast<Eigen::Index>(v);
  };

  try {
    if (g == "quadratic") {
      const auto d_x = dim("d_x");
      const auto d_y = dim("d_y");
      SmoothnessSpec target;
      target.L_x = p.get_double("L_x");
      target.mu_x = p.get_double("mu_x");
      target.L_y = p.get_double("L_y");
      target.mu_y = p.get_double("mu_y");
      target.L_xy = p.get_double("L_xy");
      target.mu_xy = p.get_double("mu_xy", 0.0);
      target.mu_yx = p.get_double("mu_yx", 0.0);
      p.finish();
      return make_quadratic_saddle(d_x, d_y, target, seed);
    }
    if (g == "bilinear") {
      const auto d = dim("d");
      const double condition = p.get_double("condition", 2.0);
      p.finish();
      return make_bilinear(d, seed, condition);
    }
    if (g == "affine_constrained") {
      const auto d_x = dim("d_x");
      const auto n = dim("n_constraints");
      const double L_x = p.get_double("L_x");
      const double mu_x = p.get_double("mu_x");
      const bool rank_deficient = p.get_bool("rank_deficient", false);
      const double condition = p.get_double("condition", 2.0);
      p.finish();
      return make_affine_constrained(d_x, n, L_x, mu_x, seed, rank_deficient, condition);
    }
    if (g == "mspbe") {
      const auto n = dim("n_states");
      const auto d = dim("d_features");
      const double gamma = p.get_double("gamma");
      p.finish();
      return make_mspbe_instance(n, d, gamma, seed);
    }
    if (g == "ridge_erm") {
      const auto n = dim("n_samples");
      const auto d = dim("d");
      const double reg = p.get_double("reg");
      p.finish();
      return make_ridge_erm(n, d, reg, seed);
    }
    if (g == "decentralized") {
      const auto n = dim("n_nodes");
      const auto local = dim("local_dim", 1);
      const auto topology_name = p.get_string("topology", std::string("path"));
      const bool identical = p.get_bool("identical", false);
      p.finish();
      Topology topology;
      if (topology_name == "path") {
        topology = Topology::path;
      } else if (topology_name == "ring") {
        topology = Topology::ring;
      } else if (topology_name == "complete") {
        topology = Topology::complete;
      } else {
        p.fail(p.line(), "unknown topology '" + topology_name + "'");
      }
      return make_decentralized_consensus(n, local, topology, seed, identical);
    }
  } catch (const ContractViolation& e) {
    p.fail(p.line(), std::string("invalid ") + g + " instance: " + e.what());
  }
  p.fail(p.line(), "unknown generator '" + g + "'");
}

}  // namespace saddle::cli

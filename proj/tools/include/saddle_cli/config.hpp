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

#ifndef SADDLE_CLI_CONFIG_HPP
#define SADDLE_CLI_CONFIG_HPP

#include <saddle/problems.hpp>
#include <saddle/regime.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace saddle::cli {

/// Invalid configuration file. what() starts with "<file>:<line>: ".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Solver { apdg, gdae, sim_gda, alt_gda, extragradient, forward_backward };

std::string to_string(Solver solver);
std::optional<Solver> parse_solver(const std::string& name);

/// Scalar parameters of one section, with the line each came from. Typed
/// getters throw ConfigError naming the line; finish() rejects keys that
/// were never read.
class ParamMap {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  ParamMap() = default;
  ParamMap(std::string file, int line) : file_(std::move(file)), line_(line) {}

  void set(const std::string& key, std::string value, int line);
  [[nodiscard]] bool has(const std::string& key) const;

  std::int64_t get_int(const std::string& key, std::optional<std::int64_t> fallback = {});
  double get_double(const std::string& key, std::optional<double> fallback = {});
  bool get_bool(const std::string& key, std::optional<bool> fallback = {});
  std::string get_string(const std::string& key, std::optional<std::string> fallback = {});

  void finish() const;
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] const std::string& file() const { return file_; }
  [[noreturn]] void fail(int line, const std::string& message) const;

 private:
  const Entry* find(const std::string& key);

  std::string file_;
  int line_ = 0;
  std::map<std::string, Entry> entries_;
  std::map<std::string, bool> used_;
};

/// Generator name, its parameters and a seed. Generators: quadratic,
/// bilinear, affine_constrained, mspbe, ridge_erm, decentralized.
struct InstanceConfig {
  std::string generator;
  std::uint64_t seed = 0;
  ParamMap params;
};

/// Deliberate parameter corruption for certificate counterexamples.
struct Overrides {
  double eta_x_scale = 1;
  double eta_y_scale = 1;
  double theta_scale = 1;
};

struct ExperimentConfig {
  std::string name;
  int line = 0;
  InstanceConfig instance;
  std::vector<Solver> solvers;
  /// nullopt entries mean automatic regime selection.
  std::vector<std::optional<Regime>> regimes;
  int max_iterations = 1000;
  std::optional<double> tolerance;
  std::optional<double> epsilon;
  int burn_in = 10;
  bool track_lyapunov = false;
  bool random_start = false;
  std::optional<double> eta;    // extragradient
  std::optional<double> eta_x;  // GDA and forward-backward
  std::optional<double> eta_y;
  Overrides overrides;
};

struct Config {
  std::filesystem::path source;
  std::filesystem::path output_dir = "results";
  std::vector<ExperimentConfig> experiments;
};

/// Parses a YAML config. Throws ConfigError with a file:line prefix.
Config load_config(const std::filesystem::path& path);

/// Same, from text; `source_name` is used in diagnostics.
Config parse_config(const std::string& text, const std::string& source_name);

/// Builds the instance an experiment describes. Generator argument errors
/// are reported as ConfigError at the instance's line.
QuadraticSaddleInstance build_instance(const InstanceConfig& config);

}  // namespace saddle::cli

#endif  // SADDLE_CLI_CONFIG_HPP

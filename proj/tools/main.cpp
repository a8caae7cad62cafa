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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"saddle_bench: run and certify saddle-point solvers on synthetic instances"};
  app.require_subcommand(1);

  std::string run_config;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "Run every experiment in a config and write traces");
  run->add_option("config", run_config, "YAML experiment config")->required();
  run->add_option("-o,--output-dir", output_dir, "Override the config's output_dir");

  std::string verify_config;
  auto* verify = app.add_subcommand(
      "verify", "Check the Lyapunov contraction and sandwich inequalities of every run");
  verify->add_option("config", verify_config, "YAML experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : saddle::cli::kExitConfigError;
  }

  if (run->parsed()) {
    std::optional<std::filesystem::path> out;
    if (!output_dir.empty()) out = output_dir;
    return saddle::cli::run_experiment(run_config, std::cout, std::cerr, out);
  }
  return saddle::cli::verify_certificates(verify_config, std::cout, std::cerr);
}

// Copyright 2026 The entroflux Authors
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

// entroflux: entropy production and its flux-based upper bound for the
// qubit, three-level maser and squeezed-bath models.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "entroflux.hpp"

namespace {

using namespace entroflux;

struct RunArgs {
  std::string config_path;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<std::string> mode;
  std::optional<std::string> out;
};

void print_report(const ScenarioConfig& cfg, const RunReport& rep) {
  std::string model(to_string(cfg.model));
  if (cfg.model == ModelKind::maser) model += " (" + std::string(to_string(cfg.mode)) + ")";
  std::fprintf(stderr,
               "model %s, t_max %g, dt %g\n"
               "  terminal Sigma      %.12g\n"
               "  terminal bound      %.12g\n"
               "  terminal gap        %.12g\n"
               "  max residual        %.3e\n"
               "  max negative gap    %.3e (tolerance %.0e)\n"
               "  wall time           %.3f s\n"
               "  status              %s\n",
               model.c_str(),
               cfg.t_max, cfg.dt, rep.terminal_sigma, rep.terminal_bound, rep.terminal_gap,
               rep.max_constraint_residual, rep.max_negative_gap, rep.tolerance, rep.wall_seconds,
               rep.passed() ? "PASS" : "FAIL");
}

int run_command(const RunArgs& args) {
  try {
    ScenarioConfig cfg = load_config(args.config_path);
    if (args.dt) cfg.dt = *args.dt;
    if (args.t_max) cfg.t_max = *args.t_max;
    if (args.mode) cfg.mode = *args.mode == "resolve" ? BoundMode::resolve : BoundMode::incremental;
    if (args.out) cfg.output_path = *args.out;
    validate(cfg);

    const ScenarioResult result = run_scenario(cfg);
    for (const auto& w : result.report.warnings) std::cerr << "warning: " << w << '\n';
    if (cfg.output_path.empty() || cfg.output_path == "-") {
      std::cout << format_csv(result.record);
    } else {
      write_csv(result.record, cfg.output_path);
    }
    print_report(cfg, result.report);
    return result.report.passed() ? 0 : kExitInvariantViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
}

int check_command() {
  bool ok = true;
  for (const CheckResult& r : run_checks()) {
    std::printf("[%s] %-50s %s (%.3f s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds);
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitInvariantViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy production and its entropy-flux upper bound"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run = app.add_subcommand("run", "Run a scenario file and emit a CSV trajectory");
  run->add_option("config", args.config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--dt", args.dt, "Integrator step (overrides the file)")
      ->check(CLI::PositiveNumber);
  run->add_option("--t-max", args.t_max, "Final time (overrides the file)")
      ->check(CLI::PositiveNumber);
  run->add_option("--mode", args.mode, "Bound evaluator for the maser")
      ->check(CLI::IsMember({"incremental", "resolve"}));
  run->add_option("--out", args.out, "CSV output path ('-' for stdout)");

  auto* check = app.add_subcommand("check", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) return run_command(args);
  if (check->parsed()) return check_command();
  return 1;
}

// Copyright 2026 The qubot-sim Authors
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

#include "qubot/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qubot/config.hpp"
#include "qubot/errors.hpp"
#include "qubot/experiments.hpp"
#include "qubot/output.hpp"

namespace qubot::cli {

namespace {

using config::RunConfig;
using config::Scenario;

/// Global flags plus the keys of the active scenario section, kebab-case.
/// `--svg` is the only value-less flag.
struct FlagSpec {
  std::string key;      // config key (snake_case)
  bool global = false;  // routed to the global scope instead of the section
};

std::string kebab_to_snake(std::string_view flag) {
  std::string key;
  key.reserve(flag.size());
  for (char c : flag) key.push_back(c == '-' ? '_' : c);
  return key;
}

bool is_global_key(const std::string& key) {
  static const char* kGlobal[] = {
      "gamma_dephasing", "gamma_forget",        "correction_time",
      "delta",           "environment",         "output_dir",
      "emit_svg",        "fidelity_convention", "entropy_base",
      "threads",         "scenario",
  };
  for (const char* g : kGlobal) {
    if (key == g) return true;
  }
  return false;
}

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Applies `--key value` pairs on top of the parsed config. Flags reuse
/// set_key, so they accept exactly the file grammar's keys and values.
void apply_flags(RunConfig& config, Scenario scenario,
                 const std::vector<std::string>& args, std::size_t start) {
  const std::string section(config::scenario_name(scenario));
  for (std::size_t i = start; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0 || arg.size() <= 2) {
      throw ValidationError(arg, "expected a --flag");
    }
    std::string key = kebab_to_snake(arg.substr(2));
    if (key == "out") key = "output_dir";  // short spelling of output_dir
    if (key == "svg") {
      config.emit_svg = true;
      continue;
    }
    if (key == "config") {
      ++i;  // handled in a first pass; skip its value here
      continue;
    }
    if (i + 1 >= args.size()) {
      throw ValidationError(key, "flag is missing its value");
    }
    const std::string& value = args[++i];
    if (is_global_key(key)) {
      config::set_key(config, "", key, value, 0);
    } else {
      config::set_key(config, section, key, value, 0);
    }
  }
}

/// Finds --config in the raw args (before any other parsing), since file
/// values must sit below flag overrides.
std::string find_config_path(const std::vector<std::string>& args,
                             std::size_t start) {
  for (std::size_t i = start; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw ValidationError("config", "flag is missing its value");
      }
      return args[i + 1];
    }
  }
  return {};
}

int dispatch(RunConfig& config, std::ostream& out) {
  const Scenario scenario = *config.scenario;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  io::WrittenFiles files;
  switch (scenario) {
    case Scenario::kTransient: {
      const auto result = experiments::run_transient(
          config.params, config.transient.t_end, config.transient.sample_dt,
          config.entropy_base, config.fidelity_convention);
      files = io::write_transient(result, config, elapsed());
      break;
    }
    case Scenario::kStabilization: {
      const auto gammas = config::linspace(
          config.stabilization.gamma_forget_min,
          config.stabilization.gamma_forget_max,
          config.stabilization.gamma_forget_points);
      const auto curves = experiments::run_stabilization_sweep(
          config.stabilization.gamma_dephasing_values, gammas,
          config.params.correction_time, config.stabilization.sample_dt,
          config.params, config.threads);
      files = io::write_stabilization(curves, config, elapsed());
      break;
    }
    case Scenario::kSweep: {
      const auto dephasing_grid = config::linspace(
          config.sweep.gamma_dephasing_min, config.sweep.gamma_dephasing_max,
          config.sweep.gamma_dephasing_points);
      const auto forget_grid = config::linspace(
          config.sweep.gamma_forget_min, config.sweep.gamma_forget_max,
          config.sweep.gamma_forget_points);
      const auto result = experiments::run_steady_sweep(
          dephasing_grid, forget_grid, config.params.correction_time,
          config.params, config.entropy_base, config.fidelity_convention,
          config.threads);
      files = io::write_sweep(result, config, elapsed());
      break;
    }
    case Scenario::kBloch: {
      const auto snaps = experiments::run_bloch_evolution(
          config.params, config.bloch.snapshot_times, config.bloch.n_points,
          config.threads);
      files = io::write_bloch(snaps, config, elapsed());
      break;
    }
    case Scenario::kPhotodissociation: {
      config.params.environment = channels::Environment::kPhotodissociation;
      const auto result = experiments::run_photodissociation(
          config.params, config.photodissociation.t_end,
          config.photodissociation.sample_dt, config.fidelity_convention);
      files = io::write_photodissociation(result, config, elapsed());
      break;
    }
    case Scenario::kValidate: {
      config.params.validate();
      const auto report = channels::validate_operating_point(config.params);
      out << io::render_validate_report(report);
      files = io::write_validate(report, config, elapsed());
      break;
    }
  }
  for (const auto& f : files.files) {
    out << "wrote " << config.output_dir << "/" << f << "\n";
  }
  return 0;
}

}  // namespace

std::string usage_text() {
  return
      "usage: qubot <scenario> [flags]\n"
      "\n"
      "scenarios:\n"
      "  transient           metric time series from the canonical start\n"
      "  stabilization       onset time t_o over forgetness-rate curves\n"
      "  sweep               steady-state metric grid over the rate plane\n"
      "  bloch               logical Bloch-sphere snapshots\n"
      "  photodissociation   fidelity decay under the alternative "
      "environment\n"
      "  validate            operating-point inequality report\n"
      "\n"
      "global flags (kebab-case of config keys):\n"
      "  --config <path>              load a config file first\n"
      "  --out <dir>                  output directory (default out)\n"
      "  --svg                        also write SVG charts\n"
      "  --gamma-dephasing <rate>     environment coupling (default 1)\n"
      "  --gamma-forget <rate>        forgetness rate (default 1.5)\n"
      "  --correction-time <time>     recovery duration (default 0)\n"
      "  --delta <rate>               loop gap, the unit scale (default 1)\n"
      "  --environment <name>         dephasing | photodissociation\n"
      "  --fidelity-convention <c>    overlap | sqrt (default overlap)\n"
      "  --entropy-base <b>           nats | bits (default nats)\n"
      "  --threads <n>                worker threads, 0 = auto\n"
      "\n"
      "scenario flags mirror the config sections, e.g. --t-end, "
      "--sample-dt,\n"
      "--gamma-forget-min/-max/-points, --gamma-dephasing-values, "
      "--snapshot-times,\n"
      "--n-points. See README for the config grammar.\n";
}

int run(const std::vector<std::string>& argv, std::ostream& out,
        std::ostream& err) {
  try {
    if (argv.size() < 2) {
      err << usage_text();
      return 1;
    }
    const std::string& sub = argv[1];
    if (sub == "--help" || sub == "-h" || sub == "help") {
      out << usage_text();
      return 0;
    }
    const auto scenario = config::scenario_from_name(sub);
    if (!scenario) {
      err << "unknown subcommand '" << sub << "'\n" << usage_text();
      return 1;
    }

    RunConfig config;
    const std::string config_path = find_config_path(argv, 2);
    if (!config_path.empty()) {
      config = config::parse_config(load_file(config_path));
    }
    config.scenario = scenario;  // the subcommand wins over the file
    apply_flags(config, *scenario, argv, 2);
    config.params.validate();
    return dispatch(config, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // Numerical failures: NoConvergence, DegenerateSteadyState,
    // InvariantViolated, NotStabilized, linear-algebra errors.
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qubot::cli

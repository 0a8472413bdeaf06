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

#ifndef QUBOT_CONFIG_HPP_
#define QUBOT_CONFIG_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qubot/channels.hpp"
#include "qubot/metrics.hpp"

namespace qubot::config {

enum class Scenario {
  kTransient,
  kStabilization,
  kSweep,
  kBloch,
  kPhotodissociation,
  kValidate,
};

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);

struct TransientConfig {
  double t_end = 10.0;
  double sample_dt = 0.01;
  bool operator==(const TransientConfig&) const = default;
};

struct StabilizationConfig {
  std::vector<double> gamma_dephasing_values = {0.25, 0.5, 1.0, 2.0};
  double gamma_forget_min = 0.5;
  double gamma_forget_max = 3.0;
  std::size_t gamma_forget_points = 11;
  double sample_dt = 0.01;
  bool operator==(const StabilizationConfig&) const = default;
};

struct SweepConfig {
  double gamma_dephasing_min = 0.05;
  double gamma_dephasing_max = 2.5;
  std::size_t gamma_dephasing_points = 50;
  double gamma_forget_min = 0.05;
  double gamma_forget_max = 2.5;
  std::size_t gamma_forget_points = 50;
  bool operator==(const SweepConfig&) const = default;
};

struct BlochConfig {
  std::vector<double> snapshot_times = {0.0, 0.4, 0.8, 2.0};
  std::size_t n_points = 200;
  bool operator==(const BlochConfig&) const = default;
};

struct PhotodissociationConfig {
  double t_end = 10.0;
  double sample_dt = 0.01;
  bool operator==(const PhotodissociationConfig&) const = default;
};

/// Complete run description. Every field has a documented default; the
/// config file and command-line flags both funnel through set_key, so the
/// two surfaces accept the same keys with the same validation.
struct RunConfig {
  std::optional<Scenario> scenario;
  channels::ModelParams params;
  std::string output_dir = "out";
  bool emit_svg = false;
  metrics::FidelityConvention fidelity_convention =
      metrics::FidelityConvention::kOverlap;
  metrics::EntropyBase entropy_base = metrics::EntropyBase::kNats;
  unsigned threads = 0;  // 0 = hardware concurrency

  TransientConfig transient;
  StabilizationConfig stabilization;
  SweepConfig sweep;
  BlochConfig bloch;
  PhotodissociationConfig photodissociation;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the flat key=value grammar: one `key = value` per line, `#`
/// comments, blank lines ignored, `[scenario]` section headers scoping the
/// keys that follow. Grammar faults raise ParseError with the line number;
/// unknown keys and out-of-range values raise ValidationError naming the
/// key.
RunConfig parse_config(std::string_view text);

/// Serializes a RunConfig to the same grammar with every key spelled out.
/// Round-trips exactly: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// Routes one key/value onto the config. `section` empty means the global
/// scope. Used by both the file parser and the flag handler; `line` is for
/// ParseError context (0 when not from a file).
void set_key(RunConfig& config, std::string_view section,
             std::string_view key, std::string_view value, int line);

/// Expanded numeric grids for the sweep scenario.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qubot::config

#endif  // QUBOT_CONFIG_HPP_

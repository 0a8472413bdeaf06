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

#include "qubot/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qubot/errors.hpp"

namespace qubot::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string buf(value);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty() || !std::isfinite(v)) {
    throw ValidationError(std::string(key), "not a finite number: '" +
                                                buf + "'");
  }
  return v;
}

double parse_positive(std::string_view key, std::string_view value) {
  const double v = parse_double(key, value);
  if (!(v > 0.0)) {
    throw ValidationError(std::string(key), "must be > 0");
  }
  return v;
}

double parse_non_negative(std::string_view key, std::string_view value) {
  const double v = parse_double(key, value);
  if (!(v >= 0.0)) {
    throw ValidationError(std::string(key), "must be >= 0");
  }
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  const std::string buf(value);
  char* end = nullptr;
  const unsigned long v = std::strtoul(buf.c_str(), &end, 10);
  if (end != buf.c_str() + buf.size() || buf.empty() ||
      buf.find('-') != std::string::npos) {
    throw ValidationError(std::string(key),
                          "not a non-negative integer: '" + buf + "'");
  }
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ValidationError(std::string(key), "expected true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto piece = trim(value.substr(
        start, comma == std::string_view::npos ? value.size() - start
                                               : comma - start));
    if (piece.empty()) {
      throw ValidationError(std::string(key), "empty list element");
    }
    out.push_back(parse_double(key, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) {
    throw ValidationError(std::string(key), "list must be non-empty");
  }
  return out;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_full(values[i]);
  }
  return out;
}

void set_global_key(RunConfig& config, std::string_view key,
                    std::string_view value) {
  using channels::Environment;
  using metrics::EntropyBase;
  using metrics::FidelityConvention;

  if (key == "gamma_dephasing") {
    config.params.gamma_dephasing = parse_non_negative(key, value);
  } else if (key == "gamma_forget") {
    config.params.gamma_forget = parse_positive(key, value);
  } else if (key == "correction_time") {
    config.params.correction_time = parse_non_negative(key, value);
  } else if (key == "delta") {
    config.params.delta = parse_positive(key, value);
  } else if (key == "environment") {
    if (value == "dephasing") {
      config.params.environment = Environment::kDephasing;
    } else if (value == "photodissociation") {
      config.params.environment = Environment::kPhotodissociation;
    } else {
      throw ValidationError("environment",
                            "expected dephasing or photodissociation");
    }
  } else if (key == "scenario") {
    const auto s = scenario_from_name(value);
    if (!s) {
      throw ValidationError("scenario",
                            "unknown scenario '" + std::string(value) + "'");
    }
    config.scenario = s;
  } else if (key == "output_dir") {
    if (value.empty()) {
      throw ValidationError("output_dir", "must be non-empty");
    }
    config.output_dir = std::string(value);
  } else if (key == "emit_svg") {
    config.emit_svg = parse_bool(key, value);
  } else if (key == "fidelity_convention") {
    if (value == "overlap") {
      config.fidelity_convention = FidelityConvention::kOverlap;
    } else if (value == "sqrt") {
      config.fidelity_convention = FidelityConvention::kSqrt;
    } else {
      throw ValidationError("fidelity_convention",
                            "expected overlap or sqrt");
    }
  } else if (key == "entropy_base") {
    if (value == "nats") {
      config.entropy_base = EntropyBase::kNats;
    } else if (value == "bits") {
      config.entropy_base = EntropyBase::kBits;
    } else {
      throw ValidationError("entropy_base", "expected nats or bits");
    }
  } else if (key == "threads") {
    config.threads = static_cast<unsigned>(parse_count(key, value));
  } else {
    throw ValidationError(std::string(key), "unknown key");
  }
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kTransient:
      return "transient";
    case Scenario::kStabilization:
      return "stabilization";
    case Scenario::kSweep:
      return "sweep";
    case Scenario::kBloch:
      return "bloch";
    case Scenario::kPhotodissociation:
      return "photodissociation";
    case Scenario::kValidate:
      return "validate";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_name(std::string_view name) {
  if (name == "transient") return Scenario::kTransient;
  if (name == "stabilization") return Scenario::kStabilization;
  if (name == "sweep") return Scenario::kSweep;
  if (name == "bloch") return Scenario::kBloch;
  if (name == "photodissociation") return Scenario::kPhotodissociation;
  if (name == "validate") return Scenario::kValidate;
  return std::nullopt;
}

void set_key(RunConfig& config, std::string_view section,
             std::string_view key, std::string_view value, int line) {
  (void)line;
  if (section.empty()) {
    set_global_key(config, key, value);
    return;
  }
  if (section == "transient") {
    if (key == "t_end") {
      config.transient.t_end = parse_positive(key, value);
    } else if (key == "sample_dt") {
      config.transient.sample_dt = parse_positive(key, value);
    } else {
      throw ValidationError(std::string(key), "unknown key in [transient]");
    }
  } else if (section == "stabilization") {
    if (key == "gamma_dephasing_values") {
      config.stabilization.gamma_dephasing_values = parse_list(key, value);
    } else if (key == "gamma_forget_min") {
      config.stabilization.gamma_forget_min = parse_positive(key, value);
    } else if (key == "gamma_forget_max") {
      config.stabilization.gamma_forget_max = parse_positive(key, value);
    } else if (key == "gamma_forget_points") {
      config.stabilization.gamma_forget_points = parse_count(key, value);
    } else if (key == "sample_dt") {
      config.stabilization.sample_dt = parse_positive(key, value);
    } else {
      throw ValidationError(std::string(key),
                            "unknown key in [stabilization]");
    }
  } else if (section == "sweep") {
    if (key == "gamma_dephasing_min") {
      config.sweep.gamma_dephasing_min = parse_positive(key, value);
    } else if (key == "gamma_dephasing_max") {
      config.sweep.gamma_dephasing_max = parse_positive(key, value);
    } else if (key == "gamma_dephasing_points") {
      config.sweep.gamma_dephasing_points = parse_count(key, value);
    } else if (key == "gamma_forget_min") {
      config.sweep.gamma_forget_min = parse_positive(key, value);
    } else if (key == "gamma_forget_max") {
      config.sweep.gamma_forget_max = parse_positive(key, value);
    } else if (key == "gamma_forget_points") {
      config.sweep.gamma_forget_points = parse_count(key, value);
    } else {
      throw ValidationError(std::string(key), "unknown key in [sweep]");
    }
  } else if (section == "bloch") {
    if (key == "snapshot_times") {
      config.bloch.snapshot_times = parse_list(key, value);
    } else if (key == "n_points") {
      config.bloch.n_points = parse_count(key, value);
    } else {
      throw ValidationError(std::string(key), "unknown key in [bloch]");
    }
  } else if (section == "photodissociation") {
    if (key == "t_end") {
      config.photodissociation.t_end = parse_positive(key, value);
    } else if (key == "sample_dt") {
      config.photodissociation.sample_dt = parse_positive(key, value);
    } else {
      throw ValidationError(std::string(key),
                            "unknown key in [photodissociation]");
    }
  } else if (section == "validate") {
    throw ValidationError(std::string(key), "unknown key in [validate]");
  } else {
    throw ValidationError(std::string(section), "unknown section");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(line_no, "unterminated section header");
      }
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!scenario_from_name(name)) {
        throw ParseError(line_no,
                         "unknown section '" + std::string(name) + "'");
      }
      section = std::string(name);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(line_no, "empty key");
    }
    set_key(config, section, key, value, line_no);
  }
  return config;
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  if (config.scenario) {
    out << "scenario = " << scenario_name(*config.scenario) << "\n";
  }
  out << "gamma_dephasing = " << format_full(config.params.gamma_dephasing)
      << "\n";
  out << "gamma_forget = " << format_full(config.params.gamma_forget) << "\n";
  out << "correction_time = " << format_full(config.params.correction_time)
      << "\n";
  out << "delta = " << format_full(config.params.delta) << "\n";
  out << "environment = "
      << (config.params.environment == channels::Environment::kDephasing
              ? "dephasing"
              : "photodissociation")
      << "\n";
  out << "output_dir = " << config.output_dir << "\n";
  out << "emit_svg = " << (config.emit_svg ? "true" : "false") << "\n";
  out << "fidelity_convention = "
      << (config.fidelity_convention == metrics::FidelityConvention::kOverlap
              ? "overlap"
              : "sqrt")
      << "\n";
  out << "entropy_base = "
      << (config.entropy_base == metrics::EntropyBase::kNats ? "nats"
                                                             : "bits")
      << "\n";
  out << "threads = " << config.threads << "\n";

  out << "[transient]\n";
  out << "t_end = " << format_full(config.transient.t_end) << "\n";
  out << "sample_dt = " << format_full(config.transient.sample_dt) << "\n";

  out << "[stabilization]\n";
  out << "gamma_dephasing_values = "
      << join_list(config.stabilization.gamma_dephasing_values) << "\n";
  out << "gamma_forget_min = "
      << format_full(config.stabilization.gamma_forget_min) << "\n";
  out << "gamma_forget_max = "
      << format_full(config.stabilization.gamma_forget_max) << "\n";
  out << "gamma_forget_points = " << config.stabilization.gamma_forget_points
      << "\n";
  out << "sample_dt = " << format_full(config.stabilization.sample_dt)
      << "\n";

  out << "[sweep]\n";
  out << "gamma_dephasing_min = "
      << format_full(config.sweep.gamma_dephasing_min) << "\n";
  out << "gamma_dephasing_max = "
      << format_full(config.sweep.gamma_dephasing_max) << "\n";
  out << "gamma_dephasing_points = " << config.sweep.gamma_dephasing_points
      << "\n";
  out << "gamma_forget_min = " << format_full(config.sweep.gamma_forget_min)
      << "\n";
  out << "gamma_forget_max = " << format_full(config.sweep.gamma_forget_max)
      << "\n";
  out << "gamma_forget_points = " << config.sweep.gamma_forget_points << "\n";

  out << "[bloch]\n";
  out << "snapshot_times = " << join_list(config.bloch.snapshot_times)
      << "\n";
  out << "n_points = " << config.bloch.n_points << "\n";

  out << "[photodissociation]\n";
  out << "t_end = " << format_full(config.photodissociation.t_end) << "\n";
  out << "sample_dt = " << format_full(config.photodissociation.sample_dt)
      << "\n";

  return out.str();
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) {
    throw ValidationError("points", "must be >= 1");
  }
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + step * static_cast<double>(i);
  return out;
}

}  // namespace qubot::config

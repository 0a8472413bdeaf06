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

#ifndef QUBOT_OUTPUT_HPP_
#define QUBOT_OUTPUT_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qubot/channels.hpp"
#include "qubot/config.hpp"
#include "qubot/experiments.hpp"

namespace qubot::io {

/// Data-file numeric format: 12 significant digits, shortest form,
/// '.' decimal separator, deterministic for identical doubles.
std::string format_number(double v);

/// Version string stamped into every output file.
std::string_view artifact_version();

/// Files written by one scenario run (paths relative to output_dir).
struct WrittenFiles {
  std::vector<std::string> files;
};

WrittenFiles write_transient(const experiments::TransientResult& result,
                             const config::RunConfig& config,
                             double duration_seconds);

WrittenFiles write_stabilization(
    const std::vector<experiments::StabilizationCurve>& curves,
    const config::RunConfig& config, double duration_seconds);

WrittenFiles write_sweep(const experiments::SweepResult& result,
                         const config::RunConfig& config,
                         double duration_seconds);

WrittenFiles write_bloch(const std::vector<experiments::BlochSnapshot>& snaps,
                         const config::RunConfig& config,
                         double duration_seconds);

WrittenFiles write_photodissociation(const experiments::PhotoResult& result,
                                     const config::RunConfig& config,
                                     double duration_seconds);

WrittenFiles write_validate(const channels::OperatingPointReport& report,
                            const config::RunConfig& config,
                            double duration_seconds);

/// Text of the operating-point report as printed by the validate
/// subcommand.
std::string render_validate_report(
    const channels::OperatingPointReport& report);

namespace svg {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;  // NaN y breaks the line
};

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series);

/// values are row-major rows x cols; cells are color-mapped over [lo, hi].
std::string heatmap(const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<double>& x_grid,
                    const std::vector<double>& y_grid,
                    const std::vector<double>& values, double lo, double hi);

/// Bloch-disk panel: points drawn in the (x, z) plane, y encoded as
/// opacity.
std::string bloch_panel(const std::string& title,
                        const std::vector<metrics::BlochVector>& points);

}  // namespace svg

}  // namespace qubot::io

#endif  // QUBOT_OUTPUT_HPP_

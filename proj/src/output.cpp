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

#include "qubot/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qubot/errors.hpp"

namespace qubot::io {

namespace {

constexpr std::string_view kVersion = "0.1.0";
constexpr std::string_view kArtifactName = "qubot-sim";

std::filesystem::path ensure_output_dir(const config::RunConfig& config) {
  std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.output_dir +
                  "': " + ec.message());
  }
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << body;
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

/// Metadata block shared by every CSV: version, scenario, and the complete
/// config echo so the file alone reproduces the run.
std::string csv_header(const config::RunConfig& config) {
  std::ostringstream out;
  out << "# " << kArtifactName << " " << kVersion << "\n";
  out << "# units: time and correction_time in 1/delta, rates in delta\n";
  out << "# recovery_rate = " << format_number(config.params.recovery())
      << "\n";
  std::istringstream echo(config::render_config(config));
  std::string line;
  while (std::getline(echo, line)) {
    out << "# " << line << "\n";
  }
  return out.str();
}

nlohmann::ordered_json json_sidecar(const config::RunConfig& config,
                                    double duration_seconds,
                                    const WrittenFiles& files) {
  nlohmann::ordered_json j;
  j["artifact"] = std::string(kArtifactName);
  j["version"] = std::string(kVersion);
  j["scenario"] = config.scenario
                      ? std::string(config::scenario_name(*config.scenario))
                      : "";
  j["config"] = config::render_config(config);
  j["recovery_rate"] = config.params.recovery();
  j["duration_seconds"] = duration_seconds;
  j["files"] = files.files;
  return j;
}

void write_sidecar(const std::filesystem::path& dir, const std::string& stem,
                   const config::RunConfig& config, double duration_seconds,
                   WrittenFiles& files) {
  const std::string name = stem + ".json";
  const auto j = json_sidecar(config, duration_seconds, files);
  write_file(dir / name, j.dump(2) + "\n");
  files.files.push_back(name);
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string_view artifact_version() { return kVersion; }

namespace svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Scale {
  double lo = 0.0;
  double hi = 1.0;
  double pix_lo = 0.0;
  double pix_hi = 1.0;
  double map(double v) const {
    const double span = hi - lo;
    const double t = span == 0.0 ? 0.5 : (v - lo) / span;
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

void open_chart(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << fmt(kWidth) << " " << fmt(kHeight) << "\">\n";
  out << "<rect width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kWidth / 2.0)
      << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << title << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Scale& xs, const Scale& ys,
               const std::string& x_label, const std::string& y_label) {
  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom;
  const double y1 = kMarginTop;
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\""
      << fmt(x1) << "\" y2=\"" << fmt(y0)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\""
      << fmt(x0) << "\" y2=\"" << fmt(y1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double tx = xs.lo + (xs.hi - xs.lo) * i / 4.0;
    const double px = xs.map(tx);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y0) << "\" x2=\""
        << fmt(px) << "\" y2=\"" << fmt(y0 + 5.0)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y0 + 18.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(tx) << "</text>\n";
    const double ty = ys.lo + (ys.hi - ys.lo) * i / 4.0;
    const double py = ys.map(ty);
    out << "<line x1=\"" << fmt(x0 - 5.0) << "\" y1=\"" << fmt(py)
        << "\" x2=\"" << fmt(x0) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt(x0 - 8.0) << "\" y=\"" << fmt(py + 4.0)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(ty) << "</text>\n";
  }
  out << "<text x=\"" << fmt((x0 + x1) / 2.0) << "\" y=\""
      << fmt(kHeight - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << fmt((y0 + y1) / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 "
      << fmt((y0 + y1) / 2.0) << ")\">" << y_label << "</text>\n";
}

/// Five-stop dark-to-light color ramp for values in [0, 1].
std::string ramp_color(double t) {
  static const double stops[5][3] = {{68, 1, 84},
                                     {59, 82, 139},
                                     {33, 145, 140},
                                     {94, 201, 98},
                                     {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0);
  const double x = t * 4.0;
  const int i = std::min(3, static_cast<int>(x));
  const double f = x - i;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)",
                static_cast<int>(std::lround(stops[i][0] +
                                             f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] +
                                             f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] +
                                             f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<Series>& series) {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (std::isnan(y)) continue;
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      } else {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  const Scale xs{x_lo, x_hi, kMarginLeft, kWidth - kMarginRight};
  const Scale ys{y_lo, y_hi, kHeight - kMarginBottom, kMarginTop};

  std::ostringstream out;
  open_chart(out, title);
  draw_axes(out, xs, ys, x_label, y_label);
  double legend_y = kMarginTop + 6.0;
  for (const auto& s : series) {
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
        points.clear();
      }
    };
    for (const auto& [x, y] : s.points) {
      if (std::isnan(y)) {
        flush();
        continue;
      }
      points += fmt(xs.map(x));
      points += ",";
      points += fmt(ys.map(y));
      points += " ";
    }
    flush();
    out << "<rect x=\"" << fmt(kWidth - kMarginRight - 150.0) << "\" y=\""
        << fmt(legend_y - 9.0)
        << "\" width=\"12\" height=\"12\" fill=\"" << s.color << "\"/>\n";
    out << "<text x=\"" << fmt(kWidth - kMarginRight - 133.0) << "\" y=\""
        << fmt(legend_y + 1.0)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
        << "</text>\n";
    legend_y += 16.0;
  }
  out << "</svg>\n";
  return out.str();
}

std::string heatmap(const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<double>& x_grid,
                    const std::vector<double>& y_grid,
                    const std::vector<double>& values, double lo, double hi) {
  if (values.size() != x_grid.size() * y_grid.size()) {
    throw DimensionMismatchError("heatmap grid/value size mismatch");
  }
  const double x_lo = x_grid.front(), x_hi = x_grid.back();
  const double y_lo = y_grid.front(), y_hi = y_grid.back();
  const Scale xs{x_lo, x_hi, kMarginLeft, kWidth - kMarginRight};
  const Scale ys{y_lo, y_hi, kHeight - kMarginBottom, kMarginTop};

  std::ostringstream out;
  open_chart(out, title);
  const double cell_w =
      (kWidth - kMarginLeft - kMarginRight) /
      static_cast<double>(std::max<std::size_t>(1, x_grid.size()));
  const double cell_h =
      (kHeight - kMarginTop - kMarginBottom) /
      static_cast<double>(std::max<std::size_t>(1, y_grid.size()));
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
      const double v = values[iy * x_grid.size() + ix];
      const double t = hi == lo ? 0.0 : (v - lo) / (hi - lo);
      const std::string color =
          std::isnan(v) ? std::string("rgb(200,200,200)") : ramp_color(t);
      const double px = kMarginLeft + cell_w * static_cast<double>(ix);
      const double py = kHeight - kMarginBottom -
                        cell_h * static_cast<double>(iy + 1);
      out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
          << fmt(cell_w + 0.5) << "\" height=\"" << fmt(cell_h + 0.5)
          << "\" fill=\"" << color << "\"/>\n";
    }
  }
  draw_axes(out, xs, ys, x_label, y_label);
  out << "<text x=\"" << fmt(kWidth - kMarginRight) << "\" y=\"36\" "
      << "text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << "scale " << fmt(lo) << " to " << fmt(hi) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string bloch_panel(const std::string& title,
                        const std::vector<metrics::BlochVector>& points) {
  std::ostringstream out;
  open_chart(out, title);
  const double cx = kWidth / 2.0;
  const double cy = (kHeight + kMarginTop - kMarginBottom) / 2.0 + 10.0;
  const double radius = 150.0;
  out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\""
      << fmt(radius)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << fmt(cx - radius) << "\" y1=\"" << fmt(cy)
      << "\" x2=\"" << fmt(cx + radius) << "\" y2=\"" << fmt(cy)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy - radius)
      << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(cy + radius)
      << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << fmt(cx + radius + 8.0) << "\" y=\"" << fmt(cy + 4.0)
      << "\" font-family=\"sans-serif\" font-size=\"11\">x</text>\n";
  out << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy - radius - 6.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">z</text>\n";
  for (const auto& p : points) {
    const double opacity = 0.25 + 0.75 * (std::clamp(p.y, -1.0, 1.0) + 1.0) / 2.0;
    out << "<circle cx=\"" << fmt(cx + radius * p.x) << "\" cy=\""
        << fmt(cy - radius * p.z) << "\" r=\"2.4\" fill=\"#cc4444\" "
        << "fill-opacity=\"" << fmt(opacity) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace svg

WrittenFiles write_transient(const experiments::TransientResult& result,
                             const config::RunConfig& config,
                             double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "time,C_qubot,S_AB,S_L,C_free\n";
  for (std::size_t i = 0; i < result.qubot.size(); ++i) {
    const auto& s = result.qubot[i];
    csv << format_number(s.time) << "," << format_number(s.concurrence_ab)
        << "," << format_number(s.entropy_ab) << ","
        << format_number(s.entropy_loop) << ","
        << format_number(result.free_spin[i].second) << "\n";
  }
  write_file(dir / "transient.csv", csv.str());
  files.files.push_back("transient.csv");

  if (config.emit_svg) {
    std::vector<svg::Series> series(4);
    series[0] = {"C qubot", "#d95f02", {}};
    series[1] = {"S AB", "#7570b3", {}};
    series[2] = {"S loop", "#1b9e77", {}};
    series[3] = {"C free", "#377eb8", {}};
    for (std::size_t i = 0; i < result.qubot.size(); ++i) {
      const auto& s = result.qubot[i];
      series[0].points.emplace_back(s.time, s.concurrence_ab);
      series[1].points.emplace_back(s.time, s.entropy_ab);
      series[2].points.emplace_back(s.time, s.entropy_loop);
      series[3].points.emplace_back(s.time, result.free_spin[i].second);
    }
    write_file(dir / "transient.svg",
               svg::line_chart("transient metrics", "time (1/delta)",
                               "value", series));
    files.files.push_back("transient.svg");
  }

  write_sidecar(dir, "transient", config, duration_seconds, files);
  return files;
}

WrittenFiles write_stabilization(
    const std::vector<experiments::StabilizationCurve>& curves,
    const config::RunConfig& config, double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "gamma_dephasing,gamma_forget,t_o\n";
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < curve.gamma_forget.size(); ++i) {
      csv << format_number(curve.gamma_dephasing) << ","
          << format_number(curve.gamma_forget[i]) << ","
          << (curve.t_o[i] ? format_number(*curve.t_o[i])
                           : std::string("nan"))
          << "\n";
    }
  }
  write_file(dir / "stabilization.csv", csv.str());
  files.files.push_back("stabilization.csv");

  if (config.emit_svg) {
    static const char* palette[] = {"#d95f02", "#7570b3", "#1b9e77",
                                    "#e7298a", "#66a61e", "#e6ab02"};
    std::vector<svg::Series> series;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      svg::Series s;
      s.name = "dephasing " + format_number(curves[c].gamma_dephasing);
      s.color = palette[c % 6];
      for (std::size_t i = 0; i < curves[c].gamma_forget.size(); ++i) {
        s.points.emplace_back(curves[c].gamma_forget[i],
                              curves[c].t_o[i]
                                  ? *curves[c].t_o[i]
                                  : std::numeric_limits<double>::quiet_NaN());
      }
      series.push_back(std::move(s));
    }
    write_file(dir / "stabilization.svg",
               svg::line_chart("stabilization time", "forgetness rate",
                               "t_o (1/delta)", series));
    files.files.push_back("stabilization.svg");
  }

  write_sidecar(dir, "stabilization", config, duration_seconds, files);
  return files;
}

WrittenFiles write_sweep(const experiments::SweepResult& result,
                         const config::RunConfig& config,
                         double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "gamma_dephasing,gamma_forget,C_ss,S_AB,S_L,F_ss\n";
  for (std::size_t i = 0; i < result.gamma_dephasing_grid.size(); ++i) {
    for (std::size_t j = 0; j < result.gamma_forget_grid.size(); ++j) {
      const auto& r = result.at(i, j);
      csv << format_number(result.gamma_dephasing_grid[i]) << ","
          << format_number(result.gamma_forget_grid[j]) << ","
          << format_number(r.concurrence_ss) << ","
          << format_number(r.entropy_ab_ss) << ","
          << format_number(r.entropy_loop_ss) << ","
          << format_number(r.fidelity_ss) << "\n";
    }
  }
  write_file(dir / "sweep.csv", csv.str());
  files.files.push_back("sweep.csv");

  if (config.emit_svg) {
    const auto& xg = result.gamma_forget_grid;
    const auto& yg = result.gamma_dephasing_grid;
    auto collect = [&](auto getter) {
      // heatmap wants row-major over (y, x) = (dephasing, forget)
      std::vector<double> v(xg.size() * yg.size());
      for (std::size_t iy = 0; iy < yg.size(); ++iy)
        for (std::size_t ix = 0; ix < xg.size(); ++ix)
          v[iy * xg.size() + ix] = getter(result.at(iy, ix));
      return v;
    };
    const struct {
      const char* file;
      const char* title;
      std::vector<double> values;
    } maps[] = {
        {"sweep_concurrence.svg", "steady concurrence",
         collect([](const auto& r) { return r.concurrence_ss; })},
        {"sweep_entropy_ab.svg", "steady entropy of the pair",
         collect([](const auto& r) { return r.entropy_ab_ss; })},
        {"sweep_entropy_loop.svg", "steady entropy of the loop",
         collect([](const auto& r) { return r.entropy_loop_ss; })},
    };
    for (const auto& m : maps) {
      write_file(dir / m.file,
                 svg::heatmap(m.title, "forgetness rate", "dephasing rate",
                              xg, yg, m.values, 0.0, 1.0));
      files.files.push_back(m.file);
    }
  }

  write_sidecar(dir, "sweep", config, duration_seconds, files);
  return files;
}

WrittenFiles write_bloch(const std::vector<experiments::BlochSnapshot>& snaps,
                         const config::RunConfig& config,
                         double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "snapshot_time,point_index,x,y,z\n";
  for (const auto& snap : snaps) {
    for (std::size_t p = 0; p < snap.points.size(); ++p) {
      const auto& b = snap.points[p];
      csv << format_number(snap.time) << "," << p << ","
          << format_number(b.x) << "," << format_number(b.y) << ","
          << format_number(b.z) << "\n";
    }
  }
  write_file(dir / "bloch.csv", csv.str());
  files.files.push_back("bloch.csv");

  if (config.emit_svg) {
    for (std::size_t s = 0; s < snaps.size(); ++s) {
      const std::string name = "bloch_snapshot_" + std::to_string(s) + ".svg";
      write_file(dir / name,
                 svg::bloch_panel("logical Bloch sphere at t = " +
                                      format_number(snaps[s].time),
                                  snaps[s].points));
      files.files.push_back(name);
    }
  }

  write_sidecar(dir, "bloch", config, duration_seconds, files);
  return files;
}

WrittenFiles write_photodissociation(const experiments::PhotoResult& result,
                                     const config::RunConfig& config,
                                     double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  std::ostringstream csv;
  csv << csv_header(config);
  csv << "time,F_qubot,F_free\n";
  for (std::size_t i = 0; i < result.qubot.size(); ++i) {
    csv << format_number(result.qubot[i].first) << ","
        << format_number(result.qubot[i].second) << ","
        << format_number(result.free_spin[i].second) << "\n";
  }
  write_file(dir / "photodissociation.csv", csv.str());
  files.files.push_back("photodissociation.csv");

  if (config.emit_svg) {
    std::vector<svg::Series> series(2);
    series[0] = {"F qubot", "#d95f02", result.qubot};
    series[1] = {"F free", "#377eb8", result.free_spin};
    write_file(dir / "photodissociation.svg",
               svg::line_chart("singlet fidelity under photodissociation",
                               "time (1/delta)", "fidelity", series));
    files.files.push_back("photodissociation.svg");
  }

  write_sidecar(dir, "photodissociation", config, duration_seconds, files);
  return files;
}

std::string render_validate_report(
    const channels::OperatingPointReport& report) {
  auto line = [](const char* name,
                 const channels::OperatingPointFinding& f) {
    std::string s = std::string(name) + ": " + (f.satisfied ? "true" : "false");
    s += " (margin " + format_number(f.margin);
    if (f.marginal) s += ", marginal";
    s += ")\n";
    return s;
  };
  std::string out;
  out += line("protective", report.protective);
  out += line("feasible_gap", report.feasible_gap);
  out += line("forgetness_bounded", report.forgetness_bounded);
  return out;
}

WrittenFiles write_validate(const channels::OperatingPointReport& report,
                            const config::RunConfig& config,
                            double duration_seconds) {
  const auto dir = ensure_output_dir(config);
  WrittenFiles files;

  nlohmann::ordered_json j;
  auto finding = [](const channels::OperatingPointFinding& f) {
    nlohmann::ordered_json o;
    o["satisfied"] = f.satisfied;
    o["marginal"] = f.marginal;
    o["margin"] = f.margin;
    return o;
  };
  j["protective"] = finding(report.protective);
  j["feasible_gap"] = finding(report.feasible_gap);
  j["forgetness_bounded"] = finding(report.forgetness_bounded);
  write_file(dir / "validate_report.json", j.dump(2) + "\n");
  files.files.push_back("validate_report.json");

  write_sidecar(dir, "validate", config, duration_seconds, files);
  return files;
}

}  // namespace qubot::io

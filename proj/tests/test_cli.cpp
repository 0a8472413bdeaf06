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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qubot/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qubot");
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = qubot::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(static_cast<bool>(in), "missing file " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and usage paths") {
  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "usage: qubot"));

  auto bare = run_cli({});
  CHECK(bare.code == 1);
  CHECK(contains(bare.err, "usage: qubot"));

  auto unknown = run_cli({"frobnicate"});
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "unknown subcommand 'frobnicate'"));
}

TEST_CASE("validate prints the report and exits clean") {
  auto dir = fresh_dir("validate");
  auto r = run_cli({"validate", "--gamma-dephasing", "0.1", "--gamma-forget",
                    "1.0", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "protective: true (margin 0.5)"));
  CHECK(contains(r.out, "feasible_gap: true"));
  CHECK(contains(r.out, "forgetness_bounded: true (margin 0, marginal)"));
  CHECK(fs::exists(dir / "validate.json"));
}

TEST_CASE("transient scenario writes csv and sidecar") {
  auto dir = fresh_dir("transient");
  auto r = run_cli({"transient", "--t-end", "1", "--sample-dt", "0.5",
                    "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "wrote " + dir.string() + "/transient.csv"));
  REQUIRE(fs::exists(dir / "transient.csv"));
  REQUIRE(fs::exists(dir / "transient.json"));

  const std::string csv = read_file(dir / "transient.csv");
  CHECK(contains(csv, "time,C_qubot,S_AB,S_L,C_free"));
  CHECK(contains(csv, "# gamma_dephasing = 1"));
  CHECK(contains(csv, "# entropy_base = nats"));
  CHECK(contains(csv, "# recovery_rate = 1.5"));

  const auto sidecar =
      nlohmann::json::parse(read_file(dir / "transient.json"));
  CHECK(sidecar.at("scenario") == "transient");
  CHECK(sidecar.at("version").is_string());
  CHECK(sidecar.at("recovery_rate").get<double>() == doctest::Approx(1.5));
  CHECK(sidecar.at("files").is_array());
  CHECK(sidecar.at("duration_seconds").is_number());
}

TEST_CASE("identical runs produce byte-identical csv") {
  auto dir = fresh_dir("det");
  const std::vector<std::string> args = {"transient",  "--t-end", "2",
                                         "--sample-dt", "0.25",   "--out",
                                         dir.string()};
  REQUIRE(run_cli(args).code == 0);
  const std::string first = read_file(dir / "transient.csv");
  REQUIRE(run_cli(args).code == 0);
  CHECK(read_file(dir / "transient.csv") == first);
}

TEST_CASE("flags override config-file values") {
  auto dir = fresh_dir("override");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "gamma_dephasing = 2.0\n"
        << "scenario = sweep\n"
        << "[transient]\n"
        << "t_end = 1\n"
        << "sample_dt = 0.5\n";
  }
  // subcommand beats the file's scenario, the flag beats the file's rate
  auto r = run_cli({"transient", "--config", cfg.string(),
                    "--gamma-dephasing", "0.5", "--out",
                    (dir / "run").string()});
  REQUIRE(r.code == 0);
  const std::string csv = read_file(dir / "run" / "transient.csv");
  CHECK(contains(csv, "# gamma_dephasing = 0.5"));
  CHECK(contains(csv, "# scenario = transient"));
}

TEST_CASE("config and flag errors exit with code 1") {
  auto bad_value = run_cli({"transient", "--gamma-dephasing", "-1"});
  CHECK(bad_value.code == 1);
  CHECK(contains(bad_value.err, "gamma_dephasing"));

  auto missing_value = run_cli({"transient", "--t-end"});
  CHECK(missing_value.code == 1);

  auto stray = run_cli({"transient", "bogus"});
  CHECK(stray.code == 1);

  auto missing_config = run_cli({"transient", "--config", "no/such/file"});
  CHECK(missing_config.code == 2);  // unreadable file is an I/O failure

  auto unknown_key = run_cli({"transient", "--no-such-flag", "1"});
  CHECK(unknown_key.code == 1);
}

TEST_CASE("unwritable output directory exits with code 2") {
  auto dir = fresh_dir("blocked");
  fs::create_directories(dir);
  const fs::path file_in_the_way = dir / "plain_file";
  {
    std::ofstream out(file_in_the_way);
    out << "x\n";
  }
  auto r = run_cli({"validate", "--out",
                    (file_in_the_way / "nested").string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "error:"));
}

TEST_CASE("svg emission is opt-in") {
  auto dir = fresh_dir("svg");
  auto r = run_cli({"transient", "--t-end", "1", "--sample-dt", "0.5",
                    "--svg", "--out", dir.string()});
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(dir / "transient.svg"));
  const std::string svg = read_file(dir / "transient.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(contains(svg, "</svg>"));

  auto plain_dir = fresh_dir("svg_off");
  REQUIRE(run_cli({"transient", "--t-end", "1", "--sample-dt", "0.5",
                   "--out", plain_dir.string()})
              .code == 0);
  CHECK_FALSE(fs::exists(plain_dir / "transient.svg"));
}

TEST_CASE("photodissociation subcommand forces its environment") {
  auto dir = fresh_dir("photo");
  auto r = run_cli({"photodissociation", "--t-end", "1", "--sample-dt",
                    "0.5", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const std::string csv = read_file(dir / "photodissociation.csv");
  CHECK(contains(csv, "# environment = photodissociation"));
  CHECK(contains(csv, "time,F_qubot,F_free"));
}

TEST_CASE("sweep scenario emits the full grid") {
  auto dir = fresh_dir("sweep");
  auto r = run_cli({"sweep", "--gamma-dephasing-points", "3",
                    "--gamma-forget-points", "2", "--gamma-dephasing-min",
                    "0.5", "--gamma-dephasing-max", "1.5",
                    "--gamma-forget-min", "1.0", "--gamma-forget-max", "2.0",
                    "--out", dir.string()});
  REQUIRE(r.code == 0);
  const std::string csv = read_file(dir / "sweep.csv");
  CHECK(contains(csv, "gamma_dephasing,gamma_forget,C_ss,S_AB,S_L,F_ss"));
  // 3 x 2 grid -> 6 data rows
  int rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find("gamma_") != 0) ++rows;
  }
  CHECK(rows == 6);
}

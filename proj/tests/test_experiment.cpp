// Copyright 2026 The thirring Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace thirring {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path p = fs::temp_directory_path() / "thirring_tests" / (std::string(info->test_suite_name()) + "_" + info->name());
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(THIRRING_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig config_for(const std::string& command, const fs::path& out) {
  ExperimentConfig c;
  c.command = command;
  c.out = out.string();
  c.threads = 1;
  return c;
}

TEST(Experiment, GridParsing) {
  EXPECT_EQ(parse_grid("g", "1,2.5, 4"), (std::vector<double>{1, 2.5, 4}));
  EXPECT_EQ(parse_grid("g", "0:1:0.25").size(), 5u);
  EXPECT_DOUBLE_EQ(parse_grid("g", "0:22:0.5").back(), 22.0);
  EXPECT_TRUE(parse_grid("g", "").empty());
  EXPECT_THROW(parse_grid("g", "1:0:1"), ConfigError);
  EXPECT_THROW(parse_grid("g", "0:1"), ConfigError);
  EXPECT_THROW(parse_grid("g", "a,b"), ConfigError);
}

TEST(Experiment, SettingsAndErrors) {
  ExperimentConfig c;
  apply_setting(c, "mode", "shots+noise");
  apply_setting(c, "r-list", "1,3");
  apply_setting(c, "ir-cutoff", "on");
  apply_setting(c, "g2", "4");
  EXPECT_EQ(c.mode, EvalMode::NoisyShots);
  EXPECT_EQ(c.r_list, (std::vector<int>{1, 3}));
  EXPECT_TRUE(c.ir_cutoff);
  EXPECT_EQ(c.g2_grid, (std::vector<double>{4}));
  EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);
  EXPECT_THROW(apply_setting(c, "shots", "1.5"), ConfigError);
  EXPECT_THROW(apply_setting(c, "mode", "fast"), ConfigError);
  c.r_list = {1, 4};
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Experiment, ConfigEchoRoundTrips) {
  ExperimentConfig a;
  a.command = "vqe";
  a.g2_grid = {0.1, 1.0 / 3.0};
  a.mode = EvalMode::Shots;
  a.seed = 123456789012345ull;
  a.ansatze = {"GS1", "ES1"};
  a.calib = "cal.txt";
  std::istringstream is("# comment line\n" + config_echo(a));
  ExperimentConfig b;
  load_config(b, is);
  EXPECT_EQ(config_echo(a), config_echo(b));
  EXPECT_EQ(b.g2_grid, a.g2_grid);
  std::istringstream bad("n 3\n");
  EXPECT_THROW(load_config(b, bad), ConfigError);
}

TEST(Experiment, SpectrumShowsGapClosingNearTwenty) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("spectrum", dir);
  c.g2_grid = parse_grid("g2-grid", "0:22:0.5");
  const RunReport rep = cmd_spectrum(c);
  EXPECT_EQ(rep.exit_code(), kExitOk);
  const auto rows = read_csv(dir / "spectrum.csv");
  ASSERT_EQ(rows.size(), 46u);
  EXPECT_EQ(rows[0], kSpectrumHeader);
  EXPECT_NEAR(std::stod(rows[1][3]), 10.0, 1e-12);
  double crossing = -1;
  for (std::size_t i = 2; i < rows.size(); ++i)
    if (std::stod(rows[i - 1][3]) > 0 && std::stod(rows[i][3]) <= 0) crossing = std::stod(rows[i][0]);
  EXPECT_NEAR(crossing, 20.5, 0.6);
}

TEST(Experiment, EmptyGridGivesHeaderOnly) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("spectrum", dir);
  c.g2_grid.clear();
  cmd_spectrum(c);
  EXPECT_EQ(read_csv(dir / "spectrum.csv").size(), 1u);
  c.command = "critical-line";
  c.m0_grid.clear();
  cmd_critical_line(c);
  EXPECT_EQ(read_csv(dir / "critical_line.csv").size(), 1u);
}

TEST(Experiment, CriticalLineIsMonotone) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("critical-line", dir);
  c.m0_grid = {1, 5, 10, 20, 40};
  EXPECT_EQ(cmd_critical_line(c).exit_code(), kExitOk);
  const auto rows = read_csv(dir / "critical_line.csv");
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], kCriticalHeader);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GT(std::stod(rows[i][1]), std::stod(rows[i - 1][1]));
  const double ratio = std::stod(rows.back()[1]) / std::stod(rows.back()[3]);
  EXPECT_NEAR(ratio, 1.0, 0.05);
}

TEST(Experiment, ExactVqeMatchesSpectrum) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("vqe", dir);
  c.g2_grid = {1.0, 5.0};
  c.ansatze = {"GS2", "ES2"};
  cmd_vqe(c);
  const auto summary = read_csv(dir / "vqe_summary.csv");
  ASSERT_EQ(summary.size(), 5u);
  EXPECT_EQ(summary[0], kVqeSummaryHeader);
  c.command = "spectrum";
  cmd_spectrum(c);
  const auto spec = read_csv(dir / "spectrum.csv");
  EXPECT_LT(std::abs(std::stod(summary[1][4]) / std::stod(spec[1][1]) - 1.0), 1e-5);
  EXPECT_LT(std::abs(std::stod(summary[4][4]) / std::stod(spec[2][2]) - 1.0), 1e-5);
  const auto per_r = read_csv(dir / "vqe_per_r.csv");
  EXPECT_EQ(per_r.size(), 1u + 4u * 5u);
  EXPECT_EQ(per_r[0], kVqePerRHeader);
}

TEST(Experiment, VqeNeedsThreeSites) {
  ExperimentConfig c = config_for("vqe", scratch_dir());
  c.n = 2;
  EXPECT_THROW(cmd_vqe(c), ConfigError);
}

TEST(Experiment, ChiralRefusesShallowSlope) {
  ExperimentConfig c = config_for("chiral", scratch_dir());
  c.xi = 0.3;
  c.ir_cutoff = true;
  c.m0_grid = {0.5, 1, 2};
  c.slope = 0.2;
  EXPECT_THROW(cmd_chiral(c), ConfigError);
}

TEST(Experiment, ChiralGapShrinksTowardOrigin) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("chiral", dir);
  c.xi = 0.3;
  c.ir_cutoff = true;
  c.m0_grid = {0.1, 1, 4};
  cmd_chiral(c);
  const auto rows = read_csv(dir / "chiral.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], kChiralHeader);
  EXPECT_LT(std::stod(rows[1][2]), std::stod(rows[2][2]));
  EXPECT_LT(std::stod(rows[2][2]), std::stod(rows[3][2]));
  EXPECT_FALSE(rows[3][4].empty());
}

TEST(Experiment, DumpHamiltonianRoundTrips) {
  const fs::path dir = scratch_dir();
  ExperimentConfig c = config_for("dump-hamiltonian", dir);
  c.g2_grid = {3.0};
  const RunReport rep = cmd_dump_hamiltonian(c);
  std::ifstream f(dir / "hamiltonian.txt");
  const PauliSum back = read_pauli_sum(f);
  const PauliSum H = build_hamiltonian(c.lattice(3.0));
  EXPECT_EQ(back.size(), 166u);
  EXPECT_LT(testing::max_abs(to_matrix(back - H)), 1e-14);
  EXPECT_EQ(read_csv(dir / "eigenvalues.csv").size(), 65u);
  ASSERT_FALSE(rep.notes.empty());
  EXPECT_NE(rep.notes[0].find("166"), std::string::npos);
}

TEST(Experiment, CliExitCodes) {
  const fs::path dir = scratch_dir();
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(run_cli("spectrum --g2-grid 0,1" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "spectrum_manifest.txt"));
  EXPECT_EQ(run_cli("spectrum --xi 3" + out), 2);
  EXPECT_EQ(run_cli("vqe --ansatz GS9" + out), 2);
  EXPECT_EQ(run_cli("vqe --mode shots+noise --calib /nonexistent/cal.txt" + out), 2);
  EXPECT_EQ(run_cli("chiral --xi 0.3 --ir-cutoff --m0-grid 0.5,1 --slope 0.1" + out), 2);
  EXPECT_EQ(run_cli("teleport" + out), 2);
  EXPECT_EQ(run_cli("spectrum --bogus 1" + out), 2);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Experiment, ManifestReproducesStochasticRun) {
  const fs::path a = scratch_dir() / "a";
  const fs::path b = a.parent_path() / "b";
  ASSERT_EQ(run_cli("vqe --mode shots+noise --g2 5 --ansatz GS2 --shots 1024 --reps 2 --r-list 1,3 --seed 42 --out " +
                    a.string()),
            0);
  const fs::path manifest = a / "vqe_manifest.txt";
  ASSERT_TRUE(fs::exists(manifest));
  EXPECT_NE(slurp(manifest).find("placeholder"), std::string::npos);
  ASSERT_EQ(run_cli("vqe --config " + manifest.string() + " --out " + b.string()), 0);
  EXPECT_EQ(slurp(a / "vqe_summary.csv"), slurp(b / "vqe_summary.csv"));
  EXPECT_EQ(slurp(a / "vqe_per_r.csv"), slurp(b / "vqe_per_r.csv"));
  EXPECT_EQ(read_csv(a / "vqe_per_r.csv").size(), 3u);
}

TEST(Experiment, CalibrationFileIsUsed) {
  const fs::path dir = scratch_dir();
  {
    std::ofstream f(dir / "cal.txt");
    f << "# quiet device\ncnot_depol = 0\n";
  }
  ExperimentConfig c = config_for("vqe", dir);
  c.mode = EvalMode::NoisyShots;
  c.g2_grid = {1.0};
  c.ansatze = {"GS2"};
  c.shots = 4096;
  c.reps = 1;
  c.r_list = {1, 3};
  c.calib = (dir / "cal.txt").string();
  cmd_vqe(c);
  const auto rows = read_csv(dir / "vqe_summary.csv");
  ASSERT_EQ(rows.size(), 2u);
  // No noise at all: raw and corrected agree exactly.
  EXPECT_EQ(rows[1][4], rows[1][5]);
}

TEST(Experiment, PartialRunsReportExitFour) {
  RunReport rep;
  EXPECT_EQ(rep.exit_code(), kExitOk);
  rep.failures.push_back("g2=1: failed");
  EXPECT_EQ(rep.exit_code(), kExitPartial);
}

}  // namespace
}  // namespace thirring

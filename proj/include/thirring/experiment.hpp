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

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thirring/ansatz.hpp"
#include "thirring/dense.hpp"
#include "thirring/errors.hpp"
#include "thirring/lattice.hpp"
#include "thirring/noise.hpp"
#include "thirring/parallel.hpp"
#include "thirring/perturbation.hpp"
#include "thirring/pipeline.hpp"
#include "thirring/vqe.hpp"

namespace thirring {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitPartial = 4 };

struct ExperimentConfig {
  std::string command;
  int n = 3;
  double m0 = 10.0;
  std::vector<double> g2_grid{1.0};
  double xi = 0.7;
  bool ir_cutoff = false;
  std::vector<double> m0_grid{0.5, 1, 2, 4, 6, 8, 10, 15, 20};
  double slope = 2.0 / 3.0;  // chiral line m0 = slope * g2
  std::vector<std::string> ansatze{"GS2", "ES2"};
  EvalMode mode = EvalMode::Exact;
  long shots = 8192;
  int reps = 5;
  std::vector<int> r_list{1, 3, 5, 7, 9};
  std::uint64_t seed = 1;
  std::string calib;  // empty: built-in defaults
  std::string tie = "default";
  std::string out = ".";
  unsigned threads = 0;

  LatticeParams lattice(double g2) const { return {n, m0, g2, xi, ir_cutoff}; }
};

// ---- value parsing ---------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
}

inline long parse_long(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x)) throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  return long(x);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace detail

// "a,b,c" or "start:stop:step" (stop included up to rounding). An empty
// string gives an empty grid.
inline std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.empty()) return {};
  if (s.find(':') != std::string::npos) {
    const auto parts = detail::split(s, ':');
    if (parts.size() != 3) throw ConfigError("'" + key + "' range must be start:stop:step");
    const double a = detail::parse_double(key, parts[0]);
    const double b = detail::parse_double(key, parts[1]);
    const double h = detail::parse_double(key, parts[2]);
    if (!(h > 0.0) || b < a) throw ConfigError("'" + key + "' range needs start <= stop and step > 0");
    std::vector<double> out;
    const long count = long(std::floor((b - a) / h + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + double(i) * h);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : detail::split(s, ',')) out.push_back(detail::parse_double(key, p));
  return out;
}

// Applies one key = value setting. Keys match the long command-line flags.
inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  const std::string v = trim(value);
  if (key == "command") c.command = v;
  else if (key == "n") c.n = int(parse_long(key, v));
  else if (key == "m0") c.m0 = parse_double(key, v);
  else if (key == "g2") c.g2_grid = {parse_double(key, v)};
  else if (key == "g2-grid") c.g2_grid = parse_grid(key, v);
  else if (key == "xi") c.xi = parse_double(key, v);
  else if (key == "ir-cutoff") c.ir_cutoff = parse_bool(key, v);
  else if (key == "m0-grid") c.m0_grid = parse_grid(key, v);
  else if (key == "slope") c.slope = parse_double(key, v);
  else if (key == "ansatz") c.ansatze = split(v, ',');
  else if (key == "mode") c.mode = parse_eval_mode(v);
  else if (key == "shots") c.shots = parse_long(key, v);
  else if (key == "reps") c.reps = int(parse_long(key, v));
  else if (key == "r-list") {
    c.r_list.clear();
    for (const auto& p : split(v, ',')) c.r_list.push_back(int(parse_long(key, p)));
  } else if (key == "seed") {
    try {
      c.seed = std::stoull(v);
    } catch (const std::exception&) {
      throw ConfigError("'seed' expects a non-negative integer, got '" + v + "'");
    }
  } else if (key == "calib") c.calib = v;
  else if (key == "tie") c.tie = v;
  else if (key == "out") c.out = v;
  else if (key == "threads") c.threads = unsigned(parse_long(key, v));
  else throw ConfigError("unknown setting '" + key + "'");
}

// Flat "key = value" lines; '#' starts a comment.
inline void load_config(ExperimentConfig& c, std::istream& is) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(c, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

inline void load_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  load_config(c, f);
}

inline void validate(const ExperimentConfig& c) {
  if (c.n < 2 || c.n > kMaxSites) throw ConfigError("n must lie in [2, 6]");
  if (!(c.xi > 0.0) || c.xi > 1.0) throw ConfigError("xi must lie in (0, 1]");
  if (c.m0 < 0.0) throw ConfigError("m0 must be non-negative");
  for (double g : c.g2_grid)
    if (g < 0.0) throw ConfigError("g2 values must be non-negative");
  for (double m : c.m0_grid)
    if (m < 0.0) throw ConfigError("m0-grid values must be non-negative");
  if (c.shots < 1) throw ConfigError("shots must be positive");
  if (c.reps < 1) throw ConfigError("reps must be positive");
  if (!(c.slope > 0.0)) throw ConfigError("slope must be positive");
  for (const auto& a : c.ansatze) parse_ansatz_id(a);
  parse_tie_rule(c.tie);
  for (int r : c.r_list)
    if (r < 1 || r % 2 == 0) throw ConfigError("r-list entries must be odd and positive");
}

// Every setting, in a form load_config reads back.
inline std::string config_echo(const ExperimentConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "command = " << c.command << "\n"
     << "n = " << c.n << "\n"
     << "m0 = " << c.m0 << "\n"
     << "g2-grid = " << detail::join(c.g2_grid) << "\n"
     << "xi = " << c.xi << "\n"
     << "ir-cutoff = " << (c.ir_cutoff ? "true" : "false") << "\n"
     << "m0-grid = " << detail::join(c.m0_grid) << "\n"
     << "slope = " << c.slope << "\n"
     << "ansatz = " << detail::join(c.ansatze) << "\n"
     << "mode = " << to_string(c.mode) << "\n"
     << "shots = " << c.shots << "\n"
     << "reps = " << c.reps << "\n"
     << "r-list = " << detail::join(c.r_list) << "\n"
     << "seed = " << c.seed << "\n"
     << "calib = " << c.calib << "\n"
     << "tie = " << c.tie << "\n"
     << "out = " << c.out << "\n"
     << "threads = " << c.threads << "\n";
  return os.str();
}

// ---- outputs ---------------------------------------------------------------

// CSV writer with a fixed header; numbers use '.' and 17 significant digits
// so that re-runs can be compared byte for byte.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : path_(path), f_(path), width_(header.size()) {
    if (!f_) throw ConfigError("cannot write '" + path.string() + "'");
    f_.imbue(std::locale::classic());
    f_ << std::setprecision(17);
    row_strings(header);
  }

  template <class... T>
  void row(const T&... cells) {
    if (sizeof...(cells) != width_) throw ContractError("CSV row width mismatch");
    bool first = true;
    ((f_ << (first ? "" : ",") << cell(cells), first = false), ...);
    f_ << "\n";
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string(); }
  template <class N>
  static std::string cell(N v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << v;
    return os.str();
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f_ << (i ? "," : "") << cells[i];
    f_ << "\n";
  }

  std::filesystem::path path_;
  std::ofstream f_;
  std::size_t width_;
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;     // manifest comments
  std::vector<std::string> failures;  // points that could not be computed
  std::string started;

  int exit_code() const { return failures.empty() ? kExitOk : kExitPartial; }
};

// Manifest next to the CSVs. Settings are live lines so the file doubles as
// a config; everything else is a comment.
inline std::filesystem::path write_manifest(const ExperimentConfig& c, RunReport& rep) {
  const std::filesystem::path path = std::filesystem::path(c.out) / (c.command + "_manifest.txt");
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << "# thirring " << kVersion << " run manifest\n"
    << "# started " << rep.started << "\n"
    << "# finished " << utc_timestamp() << "\n";
  for (const auto& file : rep.files) f << "# output " << file.filename().string() << "\n";
  for (const auto& n : rep.notes) f << "# " << n << "\n";
  for (const auto& e : rep.failures) f << "# failed " << e << "\n";
  f << config_echo(c);
  rep.files.push_back(path);
  return path;
}

inline NoiseCalibration resolve_calibration(const ExperimentConfig& c, RunReport& rep, int qubits) {
  if (c.calib.empty()) {
    rep.notes.push_back(
        "noise: built-in placeholder calibration p01=0.03 p10=0.01 cnot_depol=0.01 on every qubit "
        "(not measured on any device)");
    return NoiseCalibration::defaults(qubits);
  }
  rep.notes.push_back("noise: calibration file " + c.calib);
  return load_calibration(c.calib, qubits);
}

inline void prepare_output(const ExperimentConfig& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.out + "': " + ec.message());
}

// ---- commands --------------------------------------------------------------

inline const std::vector<std::string> kSpectrumHeader{"g2", "E0_exact", "E1_exact", "gap_exact",
                                                      "E0_pt", "E1_pt", "gap_pt"};
inline const std::vector<std::string> kCriticalHeader{"m0", "g2_crit_exact", "g2_crit_pt", "g2_crit_large_mass"};
inline const std::vector<std::string> kVqeSummaryHeader{"g2", "ansatz", "mode", "theta_star", "raw",
                                                        "ro_corrected", "extrapolated", "stderr", "exact"};
inline const std::vector<std::string> kVqePerRHeader{"g2", "ansatz", "mode", "r", "raw", "ro_corrected"};
inline const std::vector<std::string> kChiralHeader{"m0", "g2", "gap_exact", "gap_pt", "gap_vqe"};
inline const std::vector<std::string> kEigenHeader{"index", "energy", "qf_sector"};

inline RunReport cmd_spectrum(const ExperimentConfig& c) {
  validate(c);
  prepare_output(c);
  RunReport rep;
  rep.started = utc_timestamp();
  const HamiltonianFamily fam(c.lattice(0.0));
  struct Row {
    std::optional<GapResult> exact;
    std::optional<PTReport> pt;
    std::string error;
  };
  std::vector<Row> rows(c.g2_grid.size());
  parallel_for(
      rows.size(),
      [&](std::size_t i) {
        try {
          rows[i].exact = mass_gap_detail(fam, c.g2_grid[i]);
          rows[i].pt = pt_report(c.lattice(c.g2_grid[i]));
        } catch (const Error& e) {
          rows[i].error = e.what();
        }
      },
      c.threads);
  CsvWriter csv(std::filesystem::path(c.out) / "spectrum.csv", kSpectrumHeader);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (!r.exact || !r.pt) {
      rep.failures.push_back("g2=" + std::to_string(c.g2_grid[i]) + ": " + r.error);
      std::cerr << "spectrum: g2=" << c.g2_grid[i] << " failed: " << r.error << "\n";
      continue;
    }
    csv.row(c.g2_grid[i], r.exact->E0, r.exact->E1, r.exact->gap, r.pt->E0, r.pt->E1, r.pt->gap);
  }
  rep.files.push_back(csv.path());
  return rep;
}

inline RunReport cmd_critical_line(const ExperimentConfig& c) {
  validate(c);
  prepare_output(c);
  RunReport rep;
  rep.started = utc_timestamp();
  std::vector<std::optional<double>> exact(c.m0_grid.size());
  std::vector<std::string> errors(c.m0_grid.size());
  parallel_for(
      c.m0_grid.size(),
      [&](std::size_t i) {
        LatticeParams p = c.lattice(0.0);
        p.m0 = c.m0_grid[i];
        try {
          exact[i] = critical_coupling(p, default_g2_max(p.m0));
        } catch (const NotFoundError& e) {
          errors[i] = e.what();
        }
      },
      c.threads);
  CsvWriter csv(std::filesystem::path(c.out) / "critical_line.csv", kCriticalHeader);
  for (std::size_t i = 0; i < c.m0_grid.size(); ++i) {
    LatticeParams p = c.lattice(0.0);
    p.m0 = c.m0_grid[i];
    if (!exact[i]) rep.failures.push_back("m0=" + std::to_string(p.m0) + ": " + errors[i]);
    csv.row(p.m0, exact[i], g2_crit_pt(p), g2_crit_large_mass(p.m0));
  }
  rep.files.push_back(csv.path());
  rep.notes.push_back("exact critical coupling bracketed up to g2 = 8 m0 + 64, bisection tolerance 1e-6");
  return rep;
}

struct VqePoint {
  double g2 = 0.0;
  std::string ansatz;
  double theta_star = 0.0;
  double raw = 0.0, ro_corrected = 0.0, extrapolated = 0.0, std_error = 0.0, exact = 0.0;
  std::vector<int> r_list;
  std::vector<double> raw_by_r, corrected_by_r;
  std::vector<std::uint64_t> seeds;
};

// Exact mode has no statistics: every mitigation column equals the energy.
inline VqePoint run_vqe_point(const ExperimentConfig& c, double g2, const std::string& name,
                              const NoiseCalibration& cal, std::uint64_t seed) {
  require_three_sites(c.lattice(g2));
  const LatticeParams lp = c.lattice(g2);
  const PauliSum H = build_hamiltonian(lp);
  const AnsatzSpec spec = make_ansatz(parse_ansatz_id(name));
  OptimizerConfig opt;
  opt.tie = parse_tie_rule(c.tie);
  VqePoint pt;
  pt.g2 = g2;
  pt.ansatz = name;
  pt.exact = HamiltonianFamily(lp).sector_ground(g2, spec.sector).energy;
  pt.r_list = c.r_list;
  if (c.mode == EvalMode::Exact) {
    const VqeResult v = minimize(spec, H, EvalOptions{}, opt);
    pt.theta_star = v.theta_star;
    pt.raw = pt.ro_corrected = pt.extrapolated = v.energy;
    for (int r : c.r_list) {
      const double e = exact_energy(spec, H, v.params, r);
      pt.raw_by_r.push_back(e);
      pt.corrected_by_r.push_back(e);
    }
    return pt;
  }
  MitigationConfig mc;
  mc.shots = c.shots;
  mc.repetitions = c.reps;
  mc.r_list = c.r_list;
  mc.seed = seed;
  mc.optimizer = opt;
  mc.threads = 1;
  const NoiseCalibration noise = c.mode == EvalMode::NoisyShots ? cal : NoiseCalibration::noiseless(spec.qubits);
  const MitigationResult m = mitigated_energy(spec, H, noise, mc);
  pt.theta_star = m.theta_star;
  pt.raw = m.raw;
  pt.ro_corrected = m.ro_corrected;
  pt.extrapolated = m.extrapolated;
  pt.std_error = m.std_error;
  pt.raw_by_r = m.raw_by_r;
  pt.corrected_by_r = m.corrected_by_r;
  for (const auto& r : m.repetitions) pt.seeds.push_back(r.seed);
  return pt;
}

inline RunReport cmd_vqe(const ExperimentConfig& c) {
  validate(c);
  if (c.n != 3) throw ConfigError("vqe runs need n = 3");
  if (c.mode != EvalMode::Exact && c.r_list.size() < 2) throw ConfigError("shot modes need at least two r values");
  if (c.mode != EvalMode::Exact && c.r_list.front() != 1) throw ConfigError("r-list must start at 1");
  prepare_output(c);
  RunReport rep;
  rep.started = utc_timestamp();
  const NoiseCalibration cal = resolve_calibration(c, rep, 6);
  rep.notes.push_back("theta frozen at the r = 1 minimum before re-evaluating each r");
  rep.notes.push_back("optimizer: 121-point grid + Brent (exact), 61-point grid + 21-point parabola fit (shots)");

  struct Job {
    double g2;
    std::string ansatz;
  };
  std::vector<Job> jobs;
  for (double g : c.g2_grid)
    for (const auto& a : c.ansatze) jobs.push_back({g, a});
  std::vector<std::optional<VqePoint>> points(jobs.size());
  std::vector<std::string> errors(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t i) {
        try {
          points[i] = run_vqe_point(c, jobs[i].g2, jobs[i].ansatz, cal, derive_seed(c.seed, i));
        } catch (const ComputationError& e) {
          errors[i] = e.what();
        } catch (const UnsupportedReduction& e) {
          errors[i] = e.what();
        }
      },
      c.threads);

  const std::string mode = to_string(c.mode);
  CsvWriter summary(std::filesystem::path(c.out) / "vqe_summary.csv", kVqeSummaryHeader);
  CsvWriter per_r(std::filesystem::path(c.out) / "vqe_per_r.csv", kVqePerRHeader);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!points[i]) {
      rep.failures.push_back("g2=" + std::to_string(jobs[i].g2) + " " + jobs[i].ansatz + ": " + errors[i]);
      continue;
    }
    const VqePoint& p = *points[i];
    summary.row(p.g2, p.ansatz, mode, p.theta_star, p.raw, p.ro_corrected, p.extrapolated, p.std_error, p.exact);
    for (std::size_t j = 0; j < p.r_list.size(); ++j)
      per_r.row(p.g2, p.ansatz, mode, p.r_list[j], p.raw_by_r[j], p.corrected_by_r[j]);
    if (!p.seeds.empty())
      rep.notes.push_back("seeds g2=" + std::to_string(p.g2) + " " + p.ansatz + ": " + detail::join(p.seeds));
  }
  rep.files.push_back(summary.path());
  rep.files.push_back(per_r.path());
  return rep;
}

// Largest m0 / g2_crit(m0) over the grid: the sampling line must be steeper.
inline double critical_slope(const ExperimentConfig& c) {
  double worst = 0.0;
  for (double m0 : c.m0_grid) {
    if (m0 == 0.0) continue;
    LatticeParams p{c.n, m0, 0.0, c.xi, c.ir_cutoff};
    worst = std::max(worst, m0 / critical_coupling(p, default_g2_max(m0)));
  }
  return worst;
}

inline RunReport cmd_chiral(const ExperimentConfig& c) {
  validate(c);
  for (double m0 : c.m0_grid)
    if (!(m0 > 0.0)) throw ConfigError("chiral m0-grid values must be positive");
  prepare_output(c);
  const double crit = critical_slope(c);
  if (!(c.slope > crit)) {
    std::ostringstream os;
    os << "slope " << c.slope << " does not exceed the critical-line slope " << crit
       << " on this grid; the sampling line would cross into the gapless region";
    throw ConfigError(os.str());
  }
  RunReport rep;
  rep.started = utc_timestamp();
  rep.notes.push_back("critical-line slope on grid: " + std::to_string(crit));
  const bool vqe = c.n == 3;
  if (!vqe) rep.notes.push_back("gap_vqe left empty: circuit ansaetze exist for n = 3 only");
  const NoiseCalibration cal =
      vqe && c.mode == EvalMode::NoisyShots ? resolve_calibration(c, rep, 6) : NoiseCalibration::noiseless(6);
  std::vector<std::optional<double>> exact(c.m0_grid.size()), pt(c.m0_grid.size()), vq(c.m0_grid.size());
  std::vector<std::string> errors(c.m0_grid.size());
  parallel_for(
      c.m0_grid.size(),
      [&](std::size_t i) {
        const double m0 = c.m0_grid[i];
        LatticeParams p{c.n, m0, m0 / c.slope, c.xi, c.ir_cutoff};
        try {
          exact[i] = mass_gap_exact(p);
          pt[i] = pt_report(p).gap;
          if (vqe) {
            GapConfig g;
            g.eval.mode = c.mode;
            g.eval.shots = c.shots;
            g.eval.seed = derive_seed(c.seed, i);
            g.repetitions = c.reps;
            g.optimizer.tie = parse_tie_rule(c.tie);
            g.eval.noise = cal;
            vq[i] = vqe_mass_gap(p, g).gap;
          }
        } catch (const ComputationError& e) {
          errors[i] = e.what();
        }
      },
      c.threads);
  if (c.mode == EvalMode::NoisyShots) rep.notes.push_back("gap_vqe: unmitigated readout-corrected energies");
  CsvWriter csv(std::filesystem::path(c.out) / "chiral.csv", kChiralHeader);
  for (std::size_t i = 0; i < c.m0_grid.size(); ++i) {
    if (!errors[i].empty()) rep.failures.push_back("m0=" + std::to_string(c.m0_grid[i]) + ": " + errors[i]);
    csv.row(c.m0_grid[i], c.m0_grid[i] / c.slope, exact[i], pt[i], vq[i]);
  }
  rep.files.push_back(csv.path());
  return rep;
}

// Writes the Hamiltonian of the first grid coupling as Pauli terms, and its
// spectrum with charge labels.
inline RunReport cmd_dump_hamiltonian(const ExperimentConfig& c) {
  validate(c);
  if (c.g2_grid.empty()) throw ConfigError("dump-hamiltonian needs one g2 value");
  prepare_output(c);
  RunReport rep;
  rep.started = utc_timestamp();
  const LatticeParams p = c.lattice(c.g2_grid.front());
  const PauliSum H = build_hamiltonian(p);
  const std::filesystem::path hp = std::filesystem::path(c.out) / "hamiltonian.txt";
  {
    std::ofstream f(hp);
    if (!f) throw ConfigError("cannot write '" + hp.string() + "'");
    write_pauli_sum(f, H);
  }
  rep.files.push_back(hp);
  rep.notes.push_back("terms including identity: " + std::to_string(H.size()) +
                      ", without identity: " + std::to_string(H.count_without_identity()));
  const SpectrumResult s = spectrum(p);
  CsvWriter csv(std::filesystem::path(c.out) / "eigenvalues.csv", kEigenHeader);
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) csv.row(i, s.eigenvalues[i], s.sector_labels[i]);
  rep.files.push_back(csv.path());
  return rep;
}

inline RunReport run_command(ExperimentConfig c) {
  if (c.command == "spectrum") return cmd_spectrum(c);
  if (c.command == "critical-line") return cmd_critical_line(c);
  if (c.command == "vqe") return cmd_vqe(c);
  if (c.command == "chiral") return cmd_chiral(c);
  if (c.command == "dump-hamiltonian") return cmd_dump_hamiltonian(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

inline const char* kCsvSchemaHelp =
    "CSV outputs (comma separated, header row, '.' decimals):\n"
    "  spectrum.csv       g2,E0_exact,E1_exact,gap_exact,E0_pt,E1_pt,gap_pt\n"
    "  critical_line.csv  m0,g2_crit_exact,g2_crit_pt,g2_crit_large_mass (empty exact cell: no crossing found)\n"
    "  vqe_summary.csv    g2,ansatz,mode,theta_star,raw,ro_corrected,extrapolated,stderr,exact\n"
    "  vqe_per_r.csv      g2,ansatz,mode,r,raw,ro_corrected (repetition means, one row per r)\n"
    "  chiral.csv         m0,g2,gap_exact,gap_pt,gap_vqe\n"
    "  eigenvalues.csv    index,energy,qf_sector\n"
    "Every run also writes <command>_manifest.txt, which --config accepts for a re-run.\n";

}  // namespace thirring

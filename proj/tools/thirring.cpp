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

// Command-line front end for the experiment drivers.
//
//   thirring spectrum --g2-grid 0:22:0.5 --out results/
//   thirring vqe --mode shots+noise --g2-grid 1,5,10 --ansatz GS2,ES2
//   thirring vqe --config results/vqe_manifest.txt   # bit-exact re-run

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thirring/thirring.hpp"

namespace {

struct Flag {
  const char* name;  // long flag and config key
  const char* help;
};

const Flag kValueFlags[] = {
    {"n", "lattice sites (2..6; circuits need 3)"},
    {"m0", "bare mass"},
    {"g2", "single coupling"},
    {"g2-grid", "couplings: a,b,c or start:stop:step"},
    {"xi", "Wilson parameter in (0, 1)"},
    {"m0-grid", "bare masses for critical-line and chiral"},
    {"slope", "chiral line m0 = slope * g2 (default 2/3)"},
    {"ansatz", "comma list of GS2, GS1, ES2, ES1"},
    {"mode", "exact | shots | shots+noise"},
    {"shots", "shots per measurement circuit"},
    {"reps", "repetitions with independent seeds"},
    {"r-list", "odd CNOT multiplicities, starting at 1"},
    {"seed", "master seed"},
    {"calib", "noise calibration file (default: built-in placeholder)"},
    {"tie", "default | half-angle"},
    {"out", "output directory"},
    {"threads", "worker threads (0 = all cores)"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace thirring;
  CLI::App app{"Lattice massive Thirring model: exact spectra, perturbation theory and VQE mass gaps"};
  app.footer(kCsvSchemaHelp);

  std::string command, config_path;
  app.add_option("command", command, "spectrum | critical-line | vqe | chiral | dump-hamiltonian")
      ->required()
      ->check(CLI::IsMember({"spectrum", "critical-line", "vqe", "chiral", "dump-hamiltonian"}));
  app.add_option("--config", config_path, "key = value file (a run manifest works)");

  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> given;
  for (const Flag& f : kValueFlags)
    given.emplace_back(f.name, app.add_option(std::string("--") + f.name, values[f.name], f.help));
  bool ir_cutoff = false;
  CLI::Option* ir = app.add_flag("--ir-cutoff", ir_cutoff, "add the 1/N infrared mass cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    cfg.command = command;
    for (const auto& [key, opt] : given)
      if (opt->count() > 0) apply_setting(cfg, key, values[key]);
    if (ir->count() > 0) cfg.ir_cutoff = ir_cutoff;

    RunReport rep = run_command(cfg);
    const auto manifest = write_manifest(cfg, rep);
    for (const auto& f : rep.files) std::cout << f.string() << "\n";
    if (!rep.failures.empty()) {
      std::cerr << rep.failures.size() << " point(s) failed; see " << manifest.string() << "\n";
    }
    return rep.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

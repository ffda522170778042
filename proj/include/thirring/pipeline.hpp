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

#include <cmath>
#include <cstdint>
#include <vector>

#include "thirring/ansatz.hpp"
#include "thirring/errors.hpp"
#include "thirring/mitigation.hpp"
#include "thirring/noise.hpp"
#include "thirring/parallel.hpp"
#include "thirring/sampling.hpp"
#include "thirring/vqe.hpp"

namespace thirring {

struct MitigationConfig {
  long shots = 8192;
  int repetitions = 5;
  std::vector<int> r_list{1, 3, 5, 7, 9};
  std::uint64_t seed = 1;
  OptimizerConfig optimizer;
  bool reoptimize_each_r = false;  // default keeps theta* from the r = 1 search
  unsigned threads = 0;            // 0 picks the hardware concurrency
};

struct RepetitionRecord {
  std::uint64_t seed = 0;
  double theta_star = 0.0;
  double raw = 0.0;           // uncorrected, r = 1, at theta*
  double ro_corrected = 0.0;  // readout-corrected, r = 1, at theta*
  double extrapolated = 0.0;  // intercept of the corrected energies over r
  double noiseless = 0.0;     // exact functional at theta*
  std::vector<double> raw_by_r;
  std::vector<double> corrected_by_r;
  ExtrapolationFit fit;
};

struct MitigationResult {
  double raw = 0.0;
  double ro_corrected = 0.0;
  double extrapolated = 0.0;
  double std_error = 0.0;  // of the extrapolated mean over repetitions
  double noiseless = 0.0;
  double theta_star = 0.0;
  std::vector<int> r_list;
  std::vector<double> raw_by_r;        // repetition means
  std::vector<double> corrected_by_r;  // repetition means
  std::vector<RepetitionRecord> repetitions;
};

inline void validate(const MitigationConfig& cfg) {
  if (cfg.shots < 1) throw ConfigError("shots must be positive");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be positive");
  if (cfg.r_list.size() < 2) throw ConfigError("r_list needs at least two entries");
  if (cfg.r_list.front() != 1) throw ConfigError("r_list must start at 1");
  for (int r : cfg.r_list)
    if (r < 1 || r % 2 == 0) throw ConfigError("r_list entries must be odd and positive");
}

// Per repetition: minimize the readout-corrected functional at r = 1, freeze
// theta*, evaluate it again at every r with fresh shots, fit a line through
// the corrected energies and keep the intercept.
inline MitigationResult mitigated_energy(const AnsatzSpec& spec, const PauliSum& H, const NoiseCalibration& cal,
                                         const MitigationConfig& cfg) {
  validate(cfg);
  cal.validate();
  if (int(cal.qubits.size()) != spec.qubits) throw CalibrationError("calibration qubit count mismatch");
  const MeasurementPlan plan = build_measurement_plan(spec, H);
  const std::size_t nr = cfg.r_list.size();

  std::vector<RepetitionRecord> reps(std::size_t(cfg.repetitions));
  parallel_for(
      reps.size(),
      [&](std::size_t i) {
        RepetitionRecord& rec = reps[i];
        rec.seed = derive_seed(cfg.seed, i);
        EvalOptions o;
        o.mode = EvalMode::NoisyShots;
        o.shots = cfg.shots;
        o.noise = cal;
        o.r = 1;
        o.seed = derive_seed(rec.seed, 0);
        const VqeResult v = minimize(spec, H, o, cfg.optimizer, &plan);
        rec.theta_star = v.theta_star;
        std::vector<double> rs;
        for (int r : cfg.r_list) {
          o.r = r;
          AnsatzParams p = v.params;
          if (cfg.reoptimize_each_r && r != 1) {
            o.seed = derive_seed(rec.seed, 1000 + std::uint64_t(r));
            p = minimize(spec, H, o, cfg.optimizer, &plan).params;
          }
          o.seed = derive_seed(rec.seed, std::uint64_t(r));
          const SampledEnergy e = sampled_energy(spec, plan, p, o);
          rec.raw_by_r.push_back(e.raw);
          rec.corrected_by_r.push_back(e.corrected);
          rs.push_back(double(r));
        }
        rec.raw = rec.raw_by_r.front();
        rec.ro_corrected = rec.corrected_by_r.front();
        rec.fit = zne(rs, rec.corrected_by_r);
        rec.extrapolated = rec.fit.intercept;
        rec.noiseless = exact_energy(spec, H, v.params);
      },
      cfg.threads);

  MitigationResult out;
  out.r_list = cfg.r_list;
  out.raw_by_r.assign(nr, 0.0);
  out.corrected_by_r.assign(nr, 0.0);
  const double k = double(reps.size());
  for (const auto& rec : reps) {
    out.raw += rec.raw / k;
    out.ro_corrected += rec.ro_corrected / k;
    out.extrapolated += rec.extrapolated / k;
    out.noiseless += rec.noiseless / k;
    out.theta_star += rec.theta_star / k;
    for (std::size_t j = 0; j < nr; ++j) {
      out.raw_by_r[j] += rec.raw_by_r[j] / k;
      out.corrected_by_r[j] += rec.corrected_by_r[j] / k;
    }
  }
  if (reps.size() > 1) {
    double ss = 0.0;
    for (const auto& rec : reps) ss += (rec.extrapolated - out.extrapolated) * (rec.extrapolated - out.extrapolated);
    out.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  out.repetitions = std::move(reps);
  return out;
}

}  // namespace thirring

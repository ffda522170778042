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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thirring/ansatz.hpp"
#include "thirring/circuit.hpp"
#include "thirring/errors.hpp"
#include "thirring/lattice.hpp"
#include "thirring/mitigation.hpp"
#include "thirring/noise.hpp"
#include "thirring/optimize.hpp"
#include "thirring/reduction.hpp"
#include "thirring/sampling.hpp"

namespace thirring {

enum class EvalMode { Exact, Shots, NoisyShots };

inline std::string to_string(EvalMode m) {
  switch (m) {
    case EvalMode::Exact: return "exact";
    case EvalMode::Shots: return "shots";
    case EvalMode::NoisyShots: return "shots+noise";
  }
  return "?";
}

inline EvalMode parse_eval_mode(const std::string& s) {
  if (s == "exact") return EvalMode::Exact;
  if (s == "shots") return EvalMode::Shots;
  if (s == "shots+noise" || s == "noisy") return EvalMode::NoisyShots;
  throw ConfigError("unknown mode '" + s + "' (expected exact, shots or shots+noise)");
}

struct EvalOptions {
  EvalMode mode = EvalMode::Exact;
  long shots = 8192;
  NoiseCalibration noise = NoiseCalibration::defaults(6);  // used in NoisyShots mode only
  int r = 1;                                               // CNOT multiplicity
  std::uint64_t seed = 1;
};

// One ansatz branch U_m|0>: its stabilizers, the reduced form of <H>, and
// the measurement circuits that cover every string it needs.
struct BranchPlan {
  StabilizerGroup stabilizers;
  DiagonalReduction energy;
  std::vector<MeasurementGroup> groups;
};

// Re <psi_bra| H |ket> with a computational basis ket, as
// sum_c A_c <psi_bra|c>. The magnitudes |<psi_bra|c>| come from reduced
// projector expectations measured on the bra branch.
struct CrossPlan {
  int bra = 0;
  int ket = 1;
  std::uint32_t ket_bits = 0;
  PauliSum targets;
  std::vector<std::pair<std::uint32_t, DiagonalReduction>> projectors;
};

struct MeasurementPlan {
  std::vector<BranchPlan> branches;
  std::vector<CrossPlan> crosses;
  bool sampling_supported = true;
  std::string unsupported_reason;

  // Distinct non-identity strings measured, summed over branches.
  std::size_t measured_strings() const {
    std::size_t k = 0;
    for (const auto& b : branches)
      for (const auto& g : b.groups) k += g.members.size();
    return k;
  }
  std::size_t circuits() const {
    std::size_t k = 0;
    for (const auto& b : branches) k += b.groups.size();
    return k;
  }
};

inline StabilizerGroup branch_stabilizers(const AnsatzSpec& spec, int m) {
  const auto& term = spec.terms.at(m);
  return probe_stabilizers(
      [&](const std::vector<double>& x) { return run(term.circuit({x[0], x[1], x[2]})); }, 3, spec.qubits);
}

inline MeasurementPlan build_measurement_plan(const AnsatzSpec& spec, const PauliSum& H) {
  if (H.qubit_count() != spec.qubits) throw ContractError("Hamiltonian and ansatz sizes differ");
  if (!H.is_hermitian()) throw ContractError("Hamiltonian must be Hermitian");
  MeasurementPlan plan;
  const int n = spec.qubits;
  const int terms = int(spec.terms.size());
  for (int m = 0; m < terms; ++m) {
    BranchPlan b;
    b.stabilizers = branch_stabilizers(spec, m);
    b.energy = reduce_diagonal(H, b.stabilizers);
    plan.branches.push_back(std::move(b));
  }

  for (int m = 0; m < terms; ++m) {
    for (int k = m + 1; k < terms; ++k) {
      CrossPlan c;
      if (plan.branches[k].stabilizers.is_basis_state) {
        c.bra = m;
        c.ket = k;
      } else if (plan.branches[m].stabilizers.is_basis_state) {
        c.bra = k;
        c.ket = m;
      } else {
        plan.sampling_supported = false;
        plan.unsupported_reason = "cross term between two superposition branches";
        continue;
      }
      const StabilizerGroup& bra = plan.branches[c.bra].stabilizers;
      c.ket_bits = plan.branches[c.ket].stabilizers.basis_bits;
      c.targets = reduce_cross_to_right_vacuum(H, bra, c.ket_bits);
      for (const auto& [key, a] : c.targets.terms()) {
        const std::uint32_t target = key.first;
        c.projectors.emplace_back(target, reduce_diagonal(basis_projector(target, n), bra));
      }
      plan.crosses.push_back(std::move(c));
    }
  }

  // Everything a branch needs measured, weighted by how much it matters,
  // then grouped into qubit-wise commuting circuits.
  std::vector<PauliSum> wanted(terms, PauliSum(n));
  for (int m = 0; m < terms; ++m)
    for (const auto& [key, coef] : plan.branches[m].energy.measured.terms())
      wanted[m].add_term(plan.branches[m].energy.measured.string_of(key), std::abs(coef));
  for (const auto& c : plan.crosses)
    for (const auto& [target, proj] : c.projectors)
      for (const auto& [key, coef] : proj.measured.terms())
        wanted[c.bra].add_term(proj.measured.string_of(key),
                               std::abs(coef) * std::abs(c.targets.coefficient({n, target, 0, 0})));
  for (int m = 0; m < terms; ++m)
    plan.branches[m].groups = group_measurement_bases(wanted[m].simplified(0.0));
  return plan;
}

namespace detail {

inline double real_amplitude_sign(const Statevector& bra, std::uint32_t c) {
  const cplx a = bra[c];
  if (std::abs(a.imag()) > 1e-9 * std::max(1.0, std::abs(a)))
    throw UnsupportedReduction("cross term amplitude is not real");
  return a.real() < 0.0 ? -1.0 : 1.0;
}

using Expectations = std::map<PauliSum::Key, double>;

inline double assemble(const DiagonalReduction& r, const Expectations& e) {
  double v = r.constant;
  for (const auto& [k, c] : r.measured.terms()) v += c.real() * e.at(k);
  return v;
}

// Energy from per-branch string expectations. Cross terms take their
// magnitudes from the projector estimates and their signs from the noiseless
// branch amplitudes.
inline double assemble_energy(const AnsatzSpec& spec, const MeasurementPlan& plan, const AnsatzParams& p,
                              const std::vector<Expectations>& est) {
  double e = 0.0;
  for (std::size_t m = 0; m < plan.branches.size(); ++m) {
    const double c = spec.terms[m].amplitude(p);
    e += c * c * assemble(plan.branches[m].energy, est[m]);
  }
  for (const auto& x : plan.crosses) {
    const Statevector bra = run(spec.terms[x.bra].circuit(p));
    double cross = 0.0;
    for (const auto& [target, proj] : x.projectors) {
      const double prob = std::clamp(assemble(proj, est[x.bra]), 0.0, 1.0);
      const cplx a = x.targets.coefficient({spec.qubits, target, 0, 0});
      cross += a.real() * real_amplitude_sign(bra, target) * std::sqrt(prob);
    }
    e += 2.0 * spec.terms[x.bra].amplitude(p) * spec.terms[x.ket].amplitude(p) * cross;
  }
  return e;
}

}  // namespace detail

struct SampledEnergy {
  double raw = 0.0;        // plain Z-string estimators
  double corrected = 0.0;  // readout-corrected estimators
};

// Shot-based evaluation of the reduced functional. In Shots mode sampling is
// noiseless and both fields agree; in NoisyShots mode the full calibration
// is applied and every CNOT is repeated opts.r times.
inline SampledEnergy sampled_energy(const AnsatzSpec& spec, const MeasurementPlan& plan, const AnsatzParams& p,
                                    const EvalOptions& opts) {
  if (!plan.sampling_supported) throw UnsupportedReduction(plan.unsupported_reason);
  if (opts.mode == EvalMode::Exact) throw ContractError("sampled_energy needs a shot mode");
  const NoiseCalibration* noise = opts.mode == EvalMode::NoisyShots ? &opts.noise : nullptr;
  std::vector<detail::Expectations> raw(plan.branches.size()), cor(plan.branches.size());
  for (std::size_t m = 0; m < plan.branches.size(); ++m) {
    const auto& groups = plan.branches[m].groups;
    if (groups.empty()) continue;
    const Circuit prep = expand_cnots(spec.terms[m].circuit(p), opts.r);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      Circuit c = prep;
      c.append(groups[gi].basis_change);
      const Counts counts = sample_circuit(c, opts.shots, noise, derive_seed(opts.seed, m, gi));
      for (const auto& [s, coef] : groups[gi].members) {
        const ZString z = ZString::support_of(s);
        raw[m][s.key()] = raw_z(counts, z);
        cor[m][s.key()] = noise ? ro_correct(counts, *noise, z) : raw[m][s.key()];
      }
    }
  }
  return {detail::assemble_energy(spec, plan, p, raw), detail::assemble_energy(spec, plan, p, cor)};
}

// Reduced functional with every string expectation taken from the exact
// branch state. Agrees with exact_energy when the reduction is correct.
inline double reduced_exact_energy(const AnsatzSpec& spec, const MeasurementPlan& plan, const AnsatzParams& p) {
  if (!plan.sampling_supported) throw UnsupportedReduction(plan.unsupported_reason);
  std::vector<detail::Expectations> est(plan.branches.size());
  for (std::size_t m = 0; m < plan.branches.size(); ++m) {
    const Statevector s = run(spec.terms[m].circuit(p));
    for (const auto& g : plan.branches[m].groups)
      for (const auto& [str, coef] : g.members) est[m][str.key()] = exact_expectation(s, PauliSum(str));
  }
  return detail::assemble_energy(spec, plan, p, est);
}

inline double exact_energy(const AnsatzSpec& spec, const PauliSum& H, const AnsatzParams& p, int r = 1) {
  return exact_expectation(ansatz_state(spec, p, r), H);
}

// Energy at fixed parameters in the requested mode (readout-corrected when
// noisy). A plan is built on demand when none is supplied.
inline double energy_functional(const AnsatzSpec& spec, const PauliSum& H, const AnsatzParams& p,
                                const EvalOptions& opts, const MeasurementPlan* plan = nullptr) {
  if (opts.mode == EvalMode::Exact) return exact_energy(spec, H, p, opts.r);
  if (plan) return sampled_energy(spec, *plan, p, opts).corrected;
  const MeasurementPlan own = build_measurement_plan(spec, H);
  return sampled_energy(spec, own, p, opts).corrected;
}

// Re <0|U_m^dag O U_n|0> for branch states m and n.
inline double cross_term(const AnsatzSpec& spec, int m, int n, const PauliSum& O, const AnsatzParams& p,
                         const EvalOptions& opts) {
  const int terms = int(spec.terms.size());
  if (m < 0 || n < 0 || m >= terms || n >= terms) throw ContractError("branch index out of range");
  const Statevector a = run(expand_cnots(spec.terms[m].circuit(p), opts.r));
  const Statevector b = run(expand_cnots(spec.terms[n].circuit(p), opts.r));
  if (opts.mode == EvalMode::Exact) return sandwich(a, O, b).real();

  // A single-branch view of the pair lets the regular plan do the work.
  AnsatzSpec pair = spec;
  pair.terms.clear();
  if (m == n) {
    pair.terms.push_back({[](const AnsatzParams&) { return 1.0; }, spec.terms[m].circuit});
    return sampled_energy(pair, build_measurement_plan(pair, O), p, opts).corrected;
  }
  const double s = std::sqrt(0.5);
  pair.terms.push_back({[s](const AnsatzParams&) { return s; }, spec.terms[m].circuit});
  pair.terms.push_back({[s](const AnsatzParams&) { return s; }, spec.terms[n].circuit});
  const MeasurementPlan plan = build_measurement_plan(pair, O);
  if (plan.crosses.size() != 1) throw UnsupportedReduction(plan.unsupported_reason);
  // Same seeds in both calls, so the diagonal parts cancel exactly and
  // 2 s^2 Re<m|O|n> = Re<m|O|n> remains.
  MeasurementPlan no_cross = plan;
  no_cross.crosses.clear();
  const double total = sampled_energy(pair, plan, p, opts).corrected;
  const double diag = sampled_energy(pair, no_cross, p, opts).corrected;
  return total - diag;
}

struct OptimizerConfig {
  TieRule tie = TieRule::Default;
  int grid_points = 121;   // exact mode coarse grid
  double tol = 1e-6;       // exact mode Brent tolerance on theta
  int shot_grid = 61;      // shot modes coarse grid
  int fine_points = 21;    // shot modes refinement grid
  bool simplex = false;    // polish all circuit angles after the tied search
};

struct VqeResult {
  double theta_star = 0.0;
  AnsatzParams params{};
  double energy = 0.0;
  std::vector<double> run_energies;
  EvalMode mode = EvalMode::Exact;
  int r = 1;
  bool converged = true;
  int evaluations = 0;
};

// One-parameter search along the tie rule, optionally followed by a simplex
// over every circuit angle. Shot modes reuse opts.seed at every point, so the
// objective is a fixed smooth function of theta plus one frozen noise draw.
inline VqeResult minimize(const AnsatzSpec& spec, const PauliSum& H, const EvalOptions& opts,
                          const OptimizerConfig& cfg = {}, const MeasurementPlan* plan = nullptr) {
  std::optional<MeasurementPlan> own;
  if (opts.mode != EvalMode::Exact && !plan) {
    own = build_measurement_plan(spec, H);
    plan = &*own;
  }
  auto at = [&](const AnsatzParams& p) { return energy_functional(spec, H, p, opts, plan); };
  auto along = [&](double t) { return at(spec.tie(t, cfg.tie)); };
  const auto [lo, hi] = spec.theta_domain(cfg.tie);

  VqeResult res;
  res.mode = opts.mode;
  res.r = opts.r;
  const ScalarMinimum best = opts.mode == EvalMode::Exact
                                 ? grid_then_brent(along, lo, hi, cfg.grid_points, cfg.tol)
                                 : grid_then_parabola(along, lo, hi, cfg.shot_grid, cfg.fine_points);
  res.theta_star = best.x;
  res.params = spec.tie(best.x, cfg.tie);
  res.converged = best.converged;
  res.evaluations = best.evaluations;
  res.energy = at(res.params);

  if (cfg.simplex) {
    const std::size_t k = std::size_t(spec.angle_count);
    std::vector<double> x0(res.params.begin(), res.params.begin() + k);
    auto f = [&](const std::vector<double>& x) {
      AnsatzParams p = res.params;
      for (std::size_t i = 0; i < k; ++i) p[i] = x[i];
      return at(p);
    };
    const SimplexMinimum s = nelder_mead(f, x0, 0.05, 1e-12, 4000);
    res.evaluations += s.evaluations;
    if (s.fx < res.energy) {
      for (std::size_t i = 0; i < k; ++i) res.params[i] = s.x[i];
      res.energy = s.fx;
      res.converged = res.converged && s.converged;
    }
  }
  res.run_energies = {res.energy};
  return res;
}

struct GapConfig {
  AnsatzId ground = AnsatzId::GS2;
  AnsatzId excited = AnsatzId::ES2;
  EvalOptions eval;
  OptimizerConfig optimizer;
  int repetitions = 1;
};

struct GapEstimate {
  double gap = 0.0;
  double std_error = 0.0;
  double E0 = 0.0;
  double E1 = 0.0;
  std::vector<double> gaps;  // one per repetition
  VqeResult ground;          // from the first repetition
  VqeResult excited;
};

// The circuits address the six qubits of the three-site lattice.
inline void require_three_sites(const LatticeParams& p) {
  if (p.N != 3) throw DomainError("the circuit ansaetze are built for N = 3");
}

inline GapEstimate vqe_mass_gap(const LatticeParams& lp, const GapConfig& cfg) {
  require_three_sites(lp);
  if (cfg.repetitions < 1) throw ContractError("repetitions must be positive");
  const PauliSum H = build_hamiltonian(lp);
  const AnsatzSpec gs = make_ansatz(cfg.ground), es = make_ansatz(cfg.excited);
  if (gs.sector != 0 || es.sector != 1) throw ConfigError("ground ansatz must be GS*, excited ansatz ES*");
  std::optional<MeasurementPlan> pg, pe;
  if (cfg.eval.mode != EvalMode::Exact) {
    pg = build_measurement_plan(gs, H);
    pe = build_measurement_plan(es, H);
  }
  GapEstimate out;
  std::vector<double> e0s, e1s;
  const int reps = cfg.eval.mode == EvalMode::Exact ? 1 : cfg.repetitions;
  for (int i = 0; i < reps; ++i) {
    EvalOptions o = cfg.eval;
    o.seed = derive_seed(cfg.eval.seed, std::uint64_t(i), 0);
    const VqeResult g = minimize(gs, H, o, cfg.optimizer, pg ? &*pg : nullptr);
    o.seed = derive_seed(cfg.eval.seed, std::uint64_t(i), 1);
    const VqeResult e = minimize(es, H, o, cfg.optimizer, pe ? &*pe : nullptr);
    if (i == 0) {
      out.ground = g;
      out.excited = e;
    }
    e0s.push_back(g.energy);
    e1s.push_back(e.energy);
    out.gaps.push_back(e.energy - g.energy);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
  };
  out.E0 = mean(e0s);
  out.E1 = mean(e1s);
  out.gap = mean(out.gaps);
  if (out.gaps.size() > 1) {
    double ss = 0.0;
    for (double x : out.gaps) ss += (x - out.gap) * (x - out.gap);
    out.std_error = std::sqrt(ss / double(out.gaps.size() - 1) / double(out.gaps.size()));
  }
  out.ground.run_energies = e0s;
  out.excited.run_energies = e1s;
  return out;
}

}  // namespace thirring

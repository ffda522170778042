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

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "thirring/circuit.hpp"
#include "thirring/errors.hpp"
#include "thirring/noise.hpp"

namespace thirring {

using Rng = std::mt19937_64;
using Counts = std::map<std::uint32_t, long>;

// Stateless seed derivation so that stream i of a master seed does not depend
// on how many other streams were drawn or in which order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

namespace detail {

// The fifteen non-identity two-qubit Paulis, indexed 1..15 as 4*a + b with
// a, b in {I, X, Y, Z}.
inline void apply_two_qubit_pauli(Statevector& s, int id, int qa, int qb, int n) {
  static constexpr GateKind kinds[4] = {GateKind::Barrier, GateKind::PauliX, GateKind::PauliY,
                                        GateKind::PauliZ};
  const int a = id / 4, b = id % 4;
  if (a) apply_gate(s, {kinds[a], qa}, n);
  if (b) apply_gate(s, {kinds[b], qb}, n);
}

using ErrorPattern = std::vector<std::pair<int, int>>;  // (gate index, pauli id)

inline ErrorPattern draw_pattern(const Circuit& c, double p, Rng& rng) {
  ErrorPattern pat;
  if (p <= 0.0) return pat;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(1, 15);
  const auto& gates = c.gates();
  for (int i = 0; i < static_cast<int>(gates.size()); ++i) {
    if (gates[i].kind != GateKind::CNOT) continue;
    if (u(rng) < p) pat.emplace_back(i, pick(rng));
  }
  return pat;
}

inline Statevector run_with_pattern(const Circuit& c, const ErrorPattern& pat) {
  const int n = c.qubit_count();
  Statevector s = zero_state(n);
  std::size_t next = 0;
  const auto& gates = c.gates();
  for (int i = 0; i < static_cast<int>(gates.size()); ++i) {
    apply_gate(s, gates[i], n);
    while (next < pat.size() && pat[next].first == i) {
      apply_two_qubit_pauli(s, pat[next].second, gates[i].q0, gates[i].q1, n);
      ++next;
    }
  }
  return s;
}

inline std::vector<double> cumulative_probabilities(const Statevector& s) {
  std::vector<double> cdf(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += std::norm(s[i]);
    cdf[i] = acc;
  }
  return cdf;
}

inline std::uint32_t draw_outcome(const std::vector<double>& cdf, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, cdf.back());
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
  return static_cast<std::uint32_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

inline std::uint32_t flip_readout(std::uint32_t bits, int n, const NoiseCalibration& cal, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int q = 0; q < n; ++q) {
    const std::uint32_t b = qubit_bit(q, n);
    const double p = (bits & b) ? cal.qubits[q].p01 : cal.qubits[q].p10;
    if (p > 0.0 && u(rng) < p) bits ^= b;
  }
  return bits;
}

inline void sample_into(Counts& out, const Statevector& s, long shots, const NoiseCalibration* cal,
                        Rng& rng) {
  const int n = state_qubits(s);
  const auto cdf = cumulative_probabilities(s);
  const bool flips = cal && cal->has_readout_noise();
  for (long i = 0; i < shots; ++i) {
    std::uint32_t b = draw_outcome(cdf, rng);
    if (flips) b = flip_readout(b, n, *cal, rng);
    ++out[b];
  }
}

}  // namespace detail

// Final state of one stochastic trajectory. Without noise (or with zero
// depolarizing rate) this is the exact noiseless state.
inline Statevector run(const Circuit& c, const NoiseCalibration* noise = nullptr,
                       std::uint64_t seed = 0) {
  if (!noise || noise->cnot_depol == 0.0) {
    Statevector s = zero_state(c.qubit_count());
    apply_circuit(s, c);
    return s;
  }
  noise->validate();
  const Circuit low = lower_controlled_rotations(c);
  Rng rng(seed);
  return detail::run_with_pattern(low, detail::draw_pattern(low, noise->cnot_depol, rng));
}

// Multinomial draw of measurement outcomes from a fixed state, followed by
// independent per-qubit readout flips when a calibration is given.
inline Counts sample_counts(const Statevector& s, long shots, const NoiseCalibration* noise,
                            std::uint64_t seed) {
  if (shots < 1) throw ContractError("shots must be positive");
  if (noise) noise->validate();
  Rng rng(seed);
  Counts out;
  detail::sample_into(out, s, shots, noise, rng);
  return out;
}

// Shot sampling of a circuit under the full noise model. Each shot draws its
// own depolarizing error pattern; shots sharing a pattern share one
// statevector simulation.
inline Counts sample_circuit(const Circuit& c, long shots, const NoiseCalibration* noise,
                             std::uint64_t seed) {
  if (shots < 1) throw ContractError("shots must be positive");
  if (!noise || noise->cnot_depol == 0.0) return sample_counts(run(c), shots, noise, seed);
  noise->validate();
  const Circuit low = lower_controlled_rotations(c);
  Rng rng(seed);
  std::map<detail::ErrorPattern, long> patterns;
  for (long i = 0; i < shots; ++i) ++patterns[detail::draw_pattern(low, noise->cnot_depol, rng)];
  Counts out;
  for (const auto& [pat, k] : patterns)
    detail::sample_into(out, detail::run_with_pattern(low, pat), k, noise, rng);
  return out;
}

inline long total_shots(const Counts& c) {
  long t = 0;
  for (const auto& [b, k] : c) t += k;
  return t;
}

}  // namespace thirring

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
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "thirring/errors.hpp"
#include "thirring/noise.hpp"
#include "thirring/pauli.hpp"
#include "thirring/sampling.hpp"

namespace thirring {

// Product of Z operators on the listed qubits.
struct ZString {
  int n = 0;
  std::uint32_t mask = 0;  // state-index bits, see qubit_bit

  static ZString on(int n_qubits, std::initializer_list<int> qubits) {
    ZString z{n_qubits, 0};
    for (int q : qubits) z.mask |= qubit_bit(q, n_qubits);
    return z;
  }
  // Support of a Pauli string after its qubit-wise basis change.
  static ZString support_of(const PauliString& p) { return {p.n, p.x | p.z}; }

  std::vector<int> qubits() const {
    std::vector<int> out;
    for (int q = 0; q < n; ++q)
      if (mask & qubit_bit(q, n)) out.push_back(q);
    return out;
  }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // standard error of the mean over shots
};

namespace detail {

template <class PerShot>
Estimate shot_average(const Counts& counts, PerShot value) {
  const long shots = total_shots(counts);
  if (shots < 1) throw ContractError("empty counts");
  double s1 = 0.0, s2 = 0.0;
  for (const auto& [bits, k] : counts) {
    const double v = value(bits);
    s1 += k * v;
    s2 += k * v * v;
  }
  const double mean = s1 / shots;
  const double var = shots > 1 ? std::max(0.0, (s2 - shots * mean * mean) / (shots - 1)) : 0.0;
  return {mean, std::sqrt(var / shots)};
}

}  // namespace detail

inline Estimate raw_z_estimate(const Counts& counts, const ZString& z) {
  return detail::shot_average(counts, [&](std::uint32_t b) { return (popcount(b & z.mask) & 1) ? -1.0 : 1.0; });
}

inline double raw_z(const Counts& counts, const ZString& z) { return raw_z_estimate(counts, z).mean; }

// Inverts independent per-qubit bit flips. A measured bit on qubit j has
// E[(-1)^b] = (1 - p+) z_j + p-, so each factor is shifted and rescaled;
// independence lets the product of corrected factors stay unbiased.
inline Estimate ro_correct_estimate(const Counts& counts, const NoiseCalibration& cal, const ZString& z) {
  if (int(cal.qubits.size()) < z.n) throw CalibrationError("calibration has fewer qubits than the string");
  const std::vector<int> qs = z.qubits();
  std::vector<double> pm, scale;
  for (int q : qs) {
    if (cal.p_plus(q) >= 1.0) throw CalibrationError("p01 + p10 must be below 1 on qubit " + std::to_string(q));
    pm.push_back(cal.p_minus(q));
    scale.push_back(1.0 / (1.0 - cal.p_plus(q)));
  }
  return detail::shot_average(counts, [&](std::uint32_t b) {
    double v = 1.0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      const double sgn = (b & qubit_bit(qs[j], z.n)) ? -1.0 : 1.0;
      v *= (sgn - pm[j]) * scale[j];
    }
    return v;
  });
}

inline double ro_correct(const Counts& counts, const NoiseCalibration& cal, const ZString& z) {
  return ro_correct_estimate(counts, cal, z).mean;
}

struct ExtrapolationFit {
  std::vector<double> r_values;
  std::vector<double> energies;
  double slope = 0.0;
  double intercept = 0.0;  // value at r = 0
  double residual = 0.0;   // root-mean-square deviation from the line
};

// Ordinary least squares line through (r, E).
inline ExtrapolationFit zne(const std::vector<double>& r_values, const std::vector<double>& energies) {
  if (r_values.size() != energies.size()) throw ContractError("r and energy lists differ in length");
  if (std::set<double>(r_values.begin(), r_values.end()).size() < 2)
    throw ContractError("extrapolation needs at least two distinct r values");
  const double n = double(r_values.size());
  double mr = 0.0, me = 0.0;
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    mr += r_values[i] / n;
    me += energies[i] / n;
  }
  double srr = 0.0, sre = 0.0;
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    srr += (r_values[i] - mr) * (r_values[i] - mr);
    sre += (r_values[i] - mr) * (energies[i] - me);
  }
  ExtrapolationFit fit{r_values, energies, sre / srr, 0.0, 0.0};
  fit.intercept = me - fit.slope * mr;
  double ss = 0.0;
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    const double d = energies[i] - (fit.intercept + fit.slope * r_values[i]);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace thirring

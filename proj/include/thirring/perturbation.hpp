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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thirring/circuit.hpp"
#include "thirring/errors.hpp"
#include "thirring/jordan_wigner.hpp"
#include "thirring/lattice.hpp"

namespace thirring {

struct PTReport {
  double dE0 = 0.0;
  double dE1 = 0.0;
  double dm = 0.0;
  double E0 = 0.0;
  double E1 = 0.0;
  double gap = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

// First-order energy shifts of the vacuum and of the fermion at rest.
inline PTReport pt_report(const LatticeParams& p) {
  p.validate();
  if (!(p.mass() > 0.0)) throw DomainError("perturbation theory needs a positive mass");
  const auto [e1, e2] = epsilon_sums(p);
  const double N = p.N;
  PTReport r;
  r.eps1 = e1;
  r.eps2 = e2;
  r.dE0 = p.g2 / (2.0 * N) * (N * N + e1 * e1 - e2 * e2);
  r.dm = -p.g2 / (2.0 * N) * e1;
  r.dE1 = r.dm + r.dE0;
  r.E0 = r.dE0;
  r.E1 = p.mass() + r.dE1;
  r.gap = r.E1 - r.E0;
  return r;
}

// Amplitude for creating the pair (fermion k, antifermion N-k) from the vacuum.
inline double transition_amp_ground(const LatticeParams& p, int k) {
  p.validate();
  if (k < 0 || k >= p.N) throw DomainError("momentum index out of range");
  if (k == 0) return 0.0;
  const double e1 = epsilon_sums(p).first;
  return p.g2 * e1 / (2.0 * p.N) * std::sin(2.0 * std::numbers::pi * k / p.N) / dispersion(p, k);
}

// Pair amplitude with momentum k on top of the fermion at rest.
inline double transition_amp_excited_pair(const LatticeParams& p, int k) {
  p.validate();
  if (k < 0 || k >= p.N) throw DomainError("momentum index out of range");
  const double e1 = epsilon_sums(p).first;
  return p.g2 / (2.0 * p.N) * (e1 - 1.0) * std::sin(2.0 * std::numbers::pi * k / p.N) /
         dispersion(p, k);
}

// (T, T'): the lowest-momentum pair on top of the fermion at rest, and the
// three-particle state with the antifermion at rest and a fermion pair.
inline std::pair<double, double> transition_amps_excited(const LatticeParams& p) {
  p.validate();
  const double s = std::sin(2.0 * std::numbers::pi / p.N) / dispersion(p, 1);
  return {transition_amp_excited_pair(p, 1), p.g2 / p.N * s};
}

struct PTState {
  std::string label;
  std::map<std::string, double> amplitudes;  // occupation string -> amplitude
};

namespace detail {

// prod of creation operators applied right to left to the empty register.
inline Statevector create(const std::vector<ModeRef>& ops, int N) {
  Statevector s = zero_state(2 * N);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    ModeRef m = *it;
    m.dagger = true;
    s = apply_pauli_sum(jw_mode(m, N), s);
  }
  return s;
}

inline void accumulate(Statevector& acc, const Statevector& s, double c) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * s[i];
}

inline std::map<std::string, double> to_amplitudes(const Statevector& s, int n) {
  std::map<std::string, double> out;
  for (std::uint32_t b = 0; b < s.size(); ++b)
    if (std::abs(s[b]) > 1e-15) out[bits_to_string(b, n)] = s[b].real();
  return out;
}

inline std::set<int> lowest_pair_momenta(int N) { return {1, N - 1}; }

}  // namespace detail

// Unnormalized first-order ground and fermion states with leading amplitude 1.
inline std::pair<PTState, PTState> pt_states(const LatticeParams& p) {
  p.validate_for_operators();
  const int N = p.N;
  const auto F = Species::Fermion;
  const auto A = Species::Antifermion;

  Statevector g = zero_state(2 * N);
  for (int k : detail::lowest_pair_momenta(N)) {
    const double c = -transition_amp_ground(p, k) / (2.0 * dispersion(p, k));
    detail::accumulate(g, detail::create({{A, N - k}, {F, k}}, N), c);
  }

  Statevector e = detail::create({{F, 0}}, N);
  for (int k : detail::lowest_pair_momenta(N)) {
    const double c = -transition_amp_excited_pair(p, k) / (2.0 * dispersion(p, k));
    detail::accumulate(e, detail::create({{A, N - k}, {F, k}, {F, 0}}, N), c);
  }
  const double tp = transition_amps_excited(p).second;
  detail::accumulate(e, detail::create({{F, N - 1}, {F, 1}, {A, 0}}, N),
                     -tp / (2.0 * dispersion(p, 1)));

  return {PTState{"ground", detail::to_amplitudes(g, 2 * N)},
          PTState{"excited-fermion", detail::to_amplitudes(e, 2 * N)}};
}

inline Statevector pt_state_vector(const PTState& s, int n) {
  Statevector v(std::size_t{1} << n, cplx{0.0});
  for (const auto& [bits, a] : s.amplitudes) v[bits_from_string(bits)] = a;
  return v;
}

// Leading large-mass estimate of the critical coupling.
inline double g2_crit_large_mass(double m0) {
  if (!(m0 >= 0.0)) throw DomainError("m0 must be non-negative");
  return 2.0 * m0;
}

// Root of the first-order gap, 2 N m / eps1.
inline double g2_crit_pt(const LatticeParams& p) {
  return 2.0 * p.N * p.mass() / epsilon_sums(p).first;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// (g2/2) * int_0^{2 pi} dk/(2 pi) m~(k) / sqrt(m~(k)^2 + sin^2 k) with
// m~(k) = m0 + 2 xi sin^2(k/2). The integrand is symmetric about pi, and the
// interval is cut at multiples of m0 so the adaptive rule resolves the peak
// of width ~m0 at the origin.
inline QuadratureResult continuum_delta_m_detail(double m0, double xi, double g2) {
  if (!(m0 >= 0.0)) throw DomainError("m0 must be non-negative");
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  if (g2 == 0.0) return {};
  auto f = [&](double k) {
    const double s = std::sin(0.5 * k);
    const double mt = m0 + 2.0 * xi * s * s;
    const double sk = std::sin(k);
    const double den = std::sqrt(mt * mt + sk * sk);
    return den > 0.0 ? mt / den : 1.0;
  };
  std::vector<double> cuts{0.0};
  for (double c = 4.0 * m0; c < std::numbers::pi && m0 > 0.0; c *= 8.0) cuts.push_back(c);
  cuts.push_back(std::numbers::pi);
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double sum = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e = 0.0;
    sum += GK::integrate(f, cuts[i], cuts[i + 1], 12, 1e-13, &e);
    err += e;
  }
  // (1/2pi) * 2 * int_0^pi, then times g2/2.
  const double scale = 0.5 * g2 / std::numbers::pi;
  return {scale * sum, scale * err};
}

inline double continuum_delta_m(double m0, double xi, double g2) {
  return continuum_delta_m_detail(m0, xi, g2).value;
}

// Same quantity on a finite lattice without the infrared cutoff: -dm.
inline double lattice_delta_m(double m0, double xi, double g2, int N) {
  LatticeParams p{N, m0, g2, xi, false};
  return -pt_report(p).dm;
}

}  // namespace thirring

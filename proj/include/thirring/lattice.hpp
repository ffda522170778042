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

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "thirring/errors.hpp"
#include "thirring/jordan_wigner.hpp"
#include "thirring/pauli.hpp"

namespace thirring {

inline constexpr int kMaxSites = 6;

struct LatticeParams {
  int N = 3;
  double m0 = 10.0;
  double g2 = 0.0;
  double xi = 0.7;
  bool ir_cutoff = false;

  int qubits() const { return 2 * N; }

  // Bare mass as seen by every formula, including the optional 1/N shift.
  double mass() const { return ir_cutoff ? m0 + 1.0 / N : m0; }

  void validate() const {
    if (N < 2) throw DomainError("N must be at least 2");
    if (!(xi > 0.0 && xi < 1.0)) throw DomainError("xi must lie in (0, 1)");
    if (!(g2 >= 0.0)) throw DomainError("g2 must be non-negative");
    if (!(m0 >= 0.0)) throw DomainError("m0 must be non-negative");
    if (m0 == 0.0 && !ir_cutoff) throw DomainError("m0 = 0 requires the infrared cutoff");
  }

  // Operator construction additionally needs the register to fit the
  // Pauli bit masks; mode-level quantities work for any N.
  void validate_for_operators() const {
    validate();
    if (2 * N > kMaxQubits) throw ResourceError("N too large for the Pauli representation");
  }

  LatticeParams with_g2(double g) const {
    LatticeParams p = *this;
    p.g2 = g;
    return p;
  }
};

struct ModeData {
  int k = 0;
  double m_tilde = 0.0;
  double omega = 0.0;
  std::array<cplx, 2> u{};
  std::array<cplx, 2> v{};
};

namespace detail {
inline void check_k(const LatticeParams& p, int k) {
  if (k < 0 || k >= p.N) throw DomainError("momentum index out of range");
}
inline double sin_2pik(const LatticeParams& p, int k) {
  return std::sin(2.0 * std::numbers::pi * k / p.N);
}
}  // namespace detail

inline double effective_mass(const LatticeParams& p, int k) {
  detail::check_k(p, k);
  const double s = std::sin(std::numbers::pi * k / p.N);
  return p.mass() + 2.0 * p.xi * s * s;
}

inline double dispersion(const LatticeParams& p, int k) {
  const double mt = effective_mass(p, k);
  const double s = detail::sin_2pik(p, k);
  return std::sqrt(mt * mt + s * s);
}

inline ModeData mode_data(const LatticeParams& p, int k) {
  ModeData d;
  d.k = k;
  d.m_tilde = effective_mass(p, k);
  d.omega = dispersion(p, k);
  const double s = detail::sin_2pik(p, k);
  const double a = d.omega - s, b = d.omega + s;
  if (a < 0.0 || b < 0.0) throw ComputationError("negative radicand in spinor");
  d.u = {cplx{std::sqrt(a), 0.0}, cplx{0.0, std::sqrt(b)}};
  d.v = {std::conj(d.u[0]), std::conj(d.u[1])};
  return d;
}

// (eps1, eps2) = (sum_k m~_k / w_k, sum_k sin(2 pi k / N) / w_k).
inline std::pair<double, double> epsilon_sums(const LatticeParams& p) {
  p.validate();
  double e1 = 0.0, e2 = 0.0;
  for (int k = 0; k < p.N; ++k) {
    const double w = dispersion(p, k);
    e1 += effective_mass(p, k) / w;
    e2 += detail::sin_2pik(p, k) / w;
  }
  return {e1, e2};
}

inline PauliSum build_H0(const LatticeParams& p) {
  p.validate_for_operators();
  const int n = p.qubits();
  PauliSum h(n);
  for (int k = 0; k < p.N; ++k) {
    const double w = dispersion(p, k);
    h += number_operator(2 * k, n) * cplx{w};
    h += number_operator(2 * k + 1, n) * cplx{w};
  }
  return h.simplified();
}

inline PauliSum build_Qf(const LatticeParams& p) {
  p.validate_for_operators();
  const int n = p.qubits();
  PauliSum q(n);
  for (int k = 0; k < p.N; ++k) {
    q += number_operator(2 * k, n);
    q -= number_operator(2 * k + 1, n);
  }
  return q.simplified();
}

// alpha-th spinor component of the lattice field at site x.
inline PauliSum field_component(const LatticeParams& p, int x, int alpha) {
  p.validate_for_operators();
  if (x < 0 || x >= p.N) throw DomainError("site index out of range");
  if (alpha != 0 && alpha != 1) throw DomainError("spinor index must be 0 or 1");
  PauliSum psi(p.qubits());
  for (int k = 0; k < p.N; ++k) {
    const ModeData d = mode_data(p, k);
    const double phase = 2.0 * std::numbers::pi * k * x / p.N;
    const cplx e = std::polar(1.0, phase);
    const double norm = 1.0 / std::sqrt(2.0 * d.omega * p.N);
    psi += jw_mode(Species::Fermion, k, false, p.N) * (norm * d.u[alpha] * e);
    psi += jw_mode(Species::Antifermion, k, true, p.N) * (norm * d.v[alpha] * std::conj(e));
  }
  return psi.simplified();
}

// Charge density psi^dagger psi and the spatial current -psi^dagger sigma_z psi
// at site x (gamma^0 = sigma_y, gamma^0 gamma^1 = -sigma_z).
inline std::pair<PauliSum, PauliSum> currents(const LatticeParams& p, int x) {
  const PauliSum a = field_component(p, x, 0);
  const PauliSum b = field_component(p, x, 1);
  const PauliSum na = a.adjoint() * a;
  const PauliSum nb = b.adjoint() * b;
  return {(na + nb).simplified(), (nb - na).simplified()};
}

// Interaction energy operator.
//
// On every site j0 j0 + j1 j1 = 2 j0, so the current-current density has a
// single independent quartic piece. It enters with the sign that makes the
// vacuum shift, the pair-creation amplitudes and the first-order gap shift
// come out as (g2/2N)(N^2 + eps1^2 - eps2^2), (g2 eps1/2N) sin(2 pi k/N)/w_k and
// -(g2/2N) eps1. The operator part only carries half of the vacuum shift;
// the remaining c-number is added explicitly so that nothing is normal
// ordered away.
inline PauliSum build_Hint(const LatticeParams& p) {
  p.validate_for_operators();
  const int n = p.qubits();
  PauliSum h(n);
  if (p.g2 == 0.0) return h;
  for (int x = 0; x < p.N; ++x) {
    const PauliSum j1 = currents(p, x).second;
    h += (j1 * j1) * cplx{0.5 * p.g2};
  }
  const auto [e1, e2] = epsilon_sums(p);
  const double offset = p.g2 / (4.0 * p.N) * (p.N * p.N + e1 * e1 - e2 * e2);
  h += PauliSum::identity(n, offset);
  return h.simplified();
}

inline PauliSum build_hamiltonian(const LatticeParams& p) {
  return (build_H0(p) + build_Hint(p)).simplified();
}

// Occupation-basis helpers. Bit strings are state indices with qubit 0 as
// the most significant bit.
inline int charge_of(std::uint32_t bits, int N) {
  int q = 0;
  for (int k = 0; k < N; ++k) {
    q += (bits >> (2 * N - 1 - 2 * k)) & 1u;
    q -= (bits >> (2 * N - 2 - 2 * k)) & 1u;
  }
  return q;
}

inline double free_energy_of(const LatticeParams& p, std::uint32_t bits) {
  double e = 0.0;
  const int n = p.qubits();
  for (int q = 0; q < n; ++q)
    if (bits & qubit_bit(q, n)) e += dispersion(p, q / 2);
  return e;
}

inline std::uint32_t bits_from_string(const std::string& s) {
  std::uint32_t b = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw ContractError("bad occupation string " + s);
    b = (b << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return b;
}

inline std::string bits_to_string(std::uint32_t bits, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if (bits & qubit_bit(q, n)) s[q] = '1';
  return s;
}

}  // namespace thirring

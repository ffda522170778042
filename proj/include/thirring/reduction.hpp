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
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "thirring/circuit.hpp"
#include "thirring/errors.hpp"
#include "thirring/pauli.hpp"
#include "thirring/sampling.hpp"

namespace thirring {

// S |psi> = sign |psi> for a phase-free Pauli string S.
struct Stabilizer {
  PauliString string;
  int sign = 1;
};

struct StabilizerGroup {
  int n = 0;
  std::vector<Stabilizer> elements;  // always contains the identity
  bool is_basis_state = false;
  std::uint32_t basis_bits = 0;      // meaningful when is_basis_state

  std::size_t size() const { return elements.size(); }
};

inline constexpr int kMaxProbeQubits = 8;
inline constexpr double kStabilizerTol = 1e-10;

using StatePreparer = std::function<Statevector(const std::vector<double>&)>;

// Finds every Pauli string that stabilizes the prepared state with the same
// sign at all probe points. Parameters are drawn uniformly from [0, 2 pi).
inline StabilizerGroup probe_stabilizers(const StatePreparer& prepare, int n_params, int n_qubits,
                                         int probes = 3, std::uint64_t seed = 20240521) {
  if (n_qubits > kMaxProbeQubits) throw ResourceError("stabilizer probing is capped at 8 qubits");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.141592653589793);
  std::vector<Statevector> states;
  for (int i = 0; i < probes; ++i) {
    std::vector<double> x(n_params);
    for (double& v : x) v = ang(rng);
    states.push_back(prepare(x));
  }

  StabilizerGroup g;
  g.n = n_qubits;
  const std::uint32_t dim = std::uint32_t{1} << n_qubits;
  for (std::uint32_t x = 0; x < dim; ++x) {
    for (std::uint32_t z = 0; z < dim; ++z) {
      const PauliString p(n_qubits, x, z);
      int sign = 0;
      bool ok = true;
      for (const Statevector& s : states) {
        // residual of P|psi> against +|psi> and -|psi>
        double rp = 0.0, rm = 0.0;
        for (std::uint32_t b = 0; b < dim && ok; ++b) {
          if (s[b] == cplx{0.0}) continue;
          const auto [t, amp] = p.apply_to_basis(b);
          const cplx v = amp * s[b];
          rp += std::norm(v - s[t]);
          rm += std::norm(v + s[t]);
        }
        int here = 0;
        if (std::sqrt(rp) < kStabilizerTol) here = 1;
        else if (std::sqrt(rm) < kStabilizerTol) here = -1;
        if (here == 0 || (sign != 0 && here != sign)) {
          ok = false;
          break;
        }
        sign = here;
      }
      if (ok) g.elements.push_back({p, sign});
    }
  }

  // A computational basis state is stabilized by n independent Z strings,
  // i.e. by 2^n diagonal elements.
  std::size_t diagonal = 0;
  for (const auto& e : g.elements) diagonal += e.string.is_diagonal() ? 1 : 0;
  if (diagonal == dim) {
    g.is_basis_state = true;
    for (int q = 0; q < n_qubits; ++q) {
      const PauliString zq = PauliString::single(n_qubits, q, 'Z');
      for (const auto& e : g.elements)
        if (e.string == zq && e.sign < 0) g.basis_bits |= qubit_bit(q, n_qubits);
    }
  }
  return g;
}

inline StabilizerGroup probe_stabilizers(const Circuit& c) {
  return probe_stabilizers([&](const std::vector<double>&) { return run(c); }, 0, c.qubit_count(), 1);
}

namespace detail {

// Preferred representative of an equivalence class: lowest weight, then
// fewest Z parts (so X X beats Y Y), then bit order.
inline auto canonical_order(const PauliString& p) {
  return std::make_tuple(p.weight(), popcount(p.z), p.z, p.x);
}

}  // namespace detail

// <psi|H|psi> = constant + sum_Q coef_Q <psi|Q|psi>.
struct DiagonalReduction {
  double constant = 0.0;
  PauliSum measured;

  std::size_t measured_count() const { return measured.size(); }
};

// Drops strings that anticommute with a stabilizer (zero expectation), maps
// every surviving string onto a canonical member of its coset P * G (picking
// up the stabilizer eigenvalue), and folds cosets of the identity into the
// constant.
inline DiagonalReduction reduce_diagonal(const PauliSum& h, const StabilizerGroup& g) {
  if (h.qubit_count() != g.n) throw ContractError("stabilizer group size mismatch");
  DiagonalReduction out;
  out.measured = PauliSum(g.n);
  cplx constant{0.0};
  for (const auto& [key, coef] : h.terms()) {
    const PauliString p = h.string_of(key);
    bool zero = false;
    for (const auto& e : g.elements) {
      if (!p.commutes_with(e.string)) {
        zero = true;
        break;
      }
    }
    if (zero) continue;
    PauliString best = p;
    cplx factor{1.0};
    for (const auto& e : g.elements) {
      const PauliString q = p * e.string;
      if (detail::canonical_order(q) < detail::canonical_order(best)) {
        best = q.phase_free();
        factor = q.phase_value() * double(e.sign);
      }
    }
    if (best.is_identity()) constant += coef * factor;
    else out.measured.add_term(best, coef * factor);
  }
  out.constant = constant.real();
  out.measured = out.measured.simplified();
  return out;
}

inline double evaluate_exact(const DiagonalReduction& r, const Statevector& s) {
  double v = r.constant;
  for (const auto& [k, c] : r.measured.terms())
    v += (c * sandwich(s, PauliSum(r.measured.string_of(k)), s)).real();
  return v;
}

// <psi_bra|H|b> for a computational basis ket |b>, rewritten as
// <psi_bra| sum_c A_c X^c |0...0>: every string acting on a basis state is a
// phase times a pure X string acting on the empty register. Targets c that
// the bra's diagonal stabilizers rule out are dropped.
inline PauliSum reduce_cross_to_right_vacuum(const PauliSum& h, const StabilizerGroup& bra,
                                             std::uint32_t ket_bits) {
  if (h.qubit_count() != bra.n) throw ContractError("stabilizer group size mismatch");
  std::map<std::uint32_t, cplx> amp;
  for (const auto& [key, coef] : h.terms()) {
    const auto [t, a] = h.string_of(key).apply_to_basis(ket_bits);
    amp[t] += coef * a;
  }
  PauliSum out(bra.n);
  for (const auto& [c, a] : amp) {
    bool allowed = true;
    for (const auto& e : bra.elements) {
      if (!e.string.is_diagonal()) continue;
      const int parity = (popcount(e.string.z & c) & 1) ? -1 : 1;
      if (parity != e.sign) {
        allowed = false;
        break;
      }
    }
    if (allowed) out.add_term({bra.n, c, 0, 0}, a);
  }
  return out.simplified();
}

// Pure-X string acting on the empty register: X^c |0> = |c>. A string with Y
// letters picks up one factor i per Y, e.g. Y_q |0> = i X_q |0>.
inline std::pair<PauliString, cplx> right_vacuum_form(const PauliString& p) {
  const auto [t, a] = p.apply_to_basis(0);
  return {PauliString(p.n, t, 0, 0), a};
}

// Projector |c><c| written as a sum of Z strings.
inline PauliSum basis_projector(std::uint32_t c, int n) {
  PauliSum out = PauliSum::identity(n);
  for (int q = 0; q < n; ++q) {
    PauliSum f = PauliSum::identity(n, 0.5);
    f.add_term(PauliString::single(n, q, 'Z'), (c & qubit_bit(q, n)) ? -0.5 : 0.5);
    out = out * f;
  }
  return out.simplified();
}

// Qubit-wise-commuting measurement group. The basis change maps every member
// onto the Z string supported on the member's non-identity qubits.
struct MeasurementGroup {
  Circuit basis_change;
  std::string letters;  // one of I, X, Y, Z per qubit
  std::vector<std::pair<PauliString, cplx>> members;
};

inline std::uint32_t z_support(const PauliString& p) { return p.x | p.z; }

inline bool qubit_wise_compatible(const std::string& basis, const PauliString& p) {
  for (int q = 0; q < p.n; ++q) {
    const char l = p.letter(q);
    if (l != 'I' && basis[q] != 'I' && basis[q] != l) return false;
  }
  return true;
}

// Greedy first-fit over strings sorted by descending |coefficient|.
inline std::vector<MeasurementGroup> group_measurement_bases(const PauliSum& sum) {
  const int n = sum.qubit_count();
  std::vector<std::pair<PauliString, cplx>> terms;
  for (const auto& [k, c] : sum.terms()) terms.emplace_back(sum.string_of(k), c);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
  std::vector<MeasurementGroup> groups;
  for (const auto& t : terms) {
    MeasurementGroup* home = nullptr;
    for (auto& g : groups) {
      if (qubit_wise_compatible(g.letters, t.first)) {
        home = &g;
        break;
      }
    }
    if (!home) {
      groups.push_back({Circuit(n), std::string(n, 'I'), {}});
      home = &groups.back();
    }
    for (int q = 0; q < n; ++q)
      if (t.first.letter(q) != 'I') home->letters[q] = t.first.letter(q);
    home->members.push_back(t);
  }
  for (auto& g : groups) {
    g.basis_change = Circuit(n);
    for (int q = 0; q < n; ++q) {
      if (g.letters[q] == 'X') g.basis_change.h(q);
      if (g.letters[q] == 'Y') g.basis_change.caly(q);
    }
  }
  return groups;
}

}  // namespace thirring

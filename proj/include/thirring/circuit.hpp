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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "thirring/errors.hpp"
#include "thirring/pauli.hpp"

namespace thirring {

using Statevector = std::vector<cplx>;

inline constexpr int kMaxSimQubits = 12;

enum class GateKind {
  PauliX,
  PauliY,
  PauliZ,
  Hadamard,
  RotY,
  CalY,     // exp(-i pi X / 4); rotates the Y eigenbasis onto the Z eigenbasis
  CalYDag,
  CNOT,
  CRotY,    // realized as RotY(a/2) on target, CNOT, RotY(-a/2) on target
  Barrier,
};

struct Gate {
  GateKind kind = GateKind::Barrier;
  int q0 = 0;  // target, or control for two-qubit gates
  int q1 = 0;  // target for two-qubit gates
  double angle = 0.0;

  bool two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CRotY; }
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n) : n_(n) {
    if (n < 1 || n > kMaxSimQubits) throw ResourceError("circuit qubit count out of range");
  }

  int qubit_count() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }

  Circuit& add(const Gate& g) {
    check(g.q0);
    if (g.two_qubit()) {
      check(g.q1);
      if (g.q0 == g.q1) throw ContractError("control equals target");
    }
    gates_.push_back(g);
    return *this;
  }

  Circuit& x(int q) { return add({GateKind::PauliX, q}); }
  Circuit& y(int q) { return add({GateKind::PauliY, q}); }
  Circuit& z(int q) { return add({GateKind::PauliZ, q}); }
  Circuit& h(int q) { return add({GateKind::Hadamard, q}); }
  Circuit& ry(int q, double a) { return add({GateKind::RotY, q, 0, a}); }
  Circuit& caly(int q) { return add({GateKind::CalY, q}); }
  Circuit& calydag(int q) { return add({GateKind::CalYDag, q}); }
  Circuit& cnot(int c, int t) { return add({GateKind::CNOT, c, t}); }
  Circuit& cry(int c, int t, double a) { return add({GateKind::CRotY, c, t, a}); }
  Circuit& barrier() { return add({GateKind::Barrier, 0}); }

  Circuit& append(const Circuit& o) {
    if (o.n_ != n_) throw ContractError("circuit size mismatch");
    for (const Gate& g : o.gates_) gates_.push_back(g);
    return *this;
  }

 private:
  void check(int q) const {
    if (q < 0 || q >= n_) throw ContractError("gate qubit index out of range");
  }

  int n_ = 0;
  std::vector<Gate> gates_;
};

inline Statevector zero_state(int n) {
  if (n < 1 || n > kMaxSimQubits) throw ResourceError("state qubit count out of range");
  Statevector s(std::size_t{1} << n, cplx{0.0});
  s[0] = 1.0;
  return s;
}

inline Statevector basis_state(int n, std::uint32_t bits) {
  Statevector s = zero_state(n);
  s[0] = 0.0;
  s.at(bits) = 1.0;
  return s;
}

inline int state_qubits(const Statevector& s) {
  return std::countr_zero(static_cast<std::uint64_t>(s.size()));
}

namespace detail {

inline void apply_1q(Statevector& s, int q, int n, const cplx m[2][2]) {
  const std::size_t b = qubit_bit(q, n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i & b) continue;
    const cplx a0 = s[i], a1 = s[i | b];
    s[i] = m[0][0] * a0 + m[0][1] * a1;
    s[i | b] = m[1][0] * a0 + m[1][1] * a1;
  }
}

inline void apply_cnot(Statevector& s, int c, int t, int n) {
  const std::size_t cb = qubit_bit(c, n), tb = qubit_bit(t, n);
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(s[i], s[i | tb]);
}

inline void apply_ry(Statevector& s, int q, int n, double a) {
  const double c = std::cos(a / 2), sn = std::sin(a / 2);
  const cplx m[2][2] = {{c, -sn}, {sn, c}};
  apply_1q(s, q, n, m);
}

}  // namespace detail

inline void apply_gate(Statevector& s, const Gate& g, int n) {
  constexpr double r = std::numbers::sqrt2 / 2;
  const cplx I{0.0, 1.0};
  switch (g.kind) {
    case GateKind::PauliX: {
      const cplx m[2][2] = {{0, 1}, {1, 0}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::PauliY: {
      const cplx m[2][2] = {{0, -I}, {I, 0}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::PauliZ: {
      const cplx m[2][2] = {{1, 0}, {0, -1}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::Hadamard: {
      const cplx m[2][2] = {{r, r}, {r, -r}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::RotY:
      detail::apply_ry(s, g.q0, n, g.angle);
      break;
    case GateKind::CalY: {
      const cplx m[2][2] = {{r, -I * r}, {-I * r, r}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::CalYDag: {
      const cplx m[2][2] = {{r, I * r}, {I * r, r}};
      detail::apply_1q(s, g.q0, n, m);
      break;
    }
    case GateKind::CNOT:
      detail::apply_cnot(s, g.q0, g.q1, n);
      break;
    case GateKind::CRotY:
      detail::apply_ry(s, g.q1, n, g.angle / 2);
      detail::apply_cnot(s, g.q0, g.q1, n);
      detail::apply_ry(s, g.q1, n, -g.angle / 2);
      break;
    case GateKind::Barrier:
      break;
  }
}

inline void apply_circuit(Statevector& s, const Circuit& c) {
  const int n = c.qubit_count();
  if (s.size() != (std::size_t{1} << n)) throw ContractError("state size does not match circuit");
  for (const Gate& g : c.gates()) apply_gate(s, g, n);
}

// Replaces every CRotY by its three-gate realization so that its CNOT is an
// explicit gate (needed for noise insertion and CNOT multiplication).
inline Circuit lower_controlled_rotations(const Circuit& c) {
  Circuit out(c.qubit_count());
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::CRotY) {
      out.ry(g.q1, g.angle / 2).cnot(g.q0, g.q1).ry(g.q1, -g.angle / 2);
    } else {
      out.add(g);
    }
  }
  return out;
}

inline int cnot_count(const Circuit& c) {
  int k = 0;
  for (const Gate& g : c.gates()) k += g.two_qubit() ? 1 : 0;
  return k;
}

// Replaces each CNOT by r consecutive copies. r = 1 returns the circuit
// untouched; otherwise controlled rotations are lowered first so their CNOT
// is multiplied too.
inline Circuit expand_cnots(const Circuit& c, int r) {
  if (r < 1 || r % 2 == 0) throw ContractError("CNOT multiplicity must be a positive odd integer");
  if (r == 1) return c;
  const Circuit low = lower_controlled_rotations(c);
  Circuit out(c.qubit_count());
  for (const Gate& g : low.gates()) {
    const int copies = g.kind == GateKind::CNOT ? r : 1;
    for (int i = 0; i < copies; ++i) out.add(g);
  }
  return out;
}

inline cplx inner(const Statevector& a, const Statevector& b) {
  if (a.size() != b.size()) throw ContractError("state size mismatch");
  cplx acc{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm(const Statevector& s) { return std::sqrt(std::real(inner(s, s))); }

// O|psi> for a Pauli sum.
inline Statevector apply_pauli_sum(const PauliSum& op, const Statevector& s) {
  const int n = op.qubit_count();
  if (s.size() != (std::size_t{1} << n)) throw ContractError("state size does not match operator");
  Statevector out(s.size(), cplx{0.0});
  for (const auto& [key, coef] : op.terms()) {
    const PauliString p = op.string_of(key);
    for (std::uint32_t b = 0; b < s.size(); ++b) {
      if (s[b] == cplx{0.0}) continue;
      const auto [t, amp] = p.apply_to_basis(b);
      out[t] += coef * amp * s[b];
    }
  }
  return out;
}

inline cplx sandwich(const Statevector& bra, const PauliSum& op, const Statevector& ket) {
  return inner(bra, apply_pauli_sum(op, ket));
}

// <psi|O|psi> for a Hermitian observable.
inline double exact_expectation(const Statevector& s, const PauliSum& op) {
  if (!op.is_hermitian()) throw ContractError("observable is not Hermitian");
  const cplx v = sandwich(s, op, s);
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
    throw ComputationError("expectation value has an imaginary residue");
  return v.real();
}

}  // namespace thirring

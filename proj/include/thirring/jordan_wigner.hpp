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

#include "thirring/errors.hpp"
#include "thirring/pauli.hpp"

namespace thirring {

enum class Species { Fermion, Antifermion };

// A fermionic mode operator b_k, c_k or their adjoints. Fermion modes sit on
// even qubits and antifermion modes on odd ones.
struct ModeRef {
  Species species = Species::Fermion;
  int k = 0;
  bool dagger = false;

  int qubit() const { return 2 * k + (species == Species::Antifermion ? 1 : 0); }
};

// Jordan-Wigner image of a mode operator on 2N qubits.
//
// The annihilator on qubit q is prod_{i<q} (-Z_i) (X_q + i Y_q) / 2. This
// sign choice maps |1> to |0> on qubit q, so annihilators kill the empty
// register and {a, a^dagger} = 1.
inline PauliSum jw_mode(const ModeRef& m, int N) {
  if (N < 1 || m.k < 0 || m.k >= N) throw DomainError("mode index out of range");
  const int n = 2 * N;
  const int q = m.qubit();
  std::uint32_t prefix = 0;
  for (int i = 0; i < q; ++i) prefix |= qubit_bit(i, n);
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;  // (-1)^q from the (-Z) factors
  const PauliString zs(n, 0, prefix, 0);
  const PauliString xq = zs * PauliString::single(n, q, 'X');
  const PauliString yq = zs * PauliString::single(n, q, 'Y');
  PauliSum out(n);
  out.add_term(xq, 0.5 * sign);
  out.add_term(yq, cplx{0.0, m.dagger ? -0.5 : 0.5} * sign);
  return out;
}

inline PauliSum jw_mode(Species s, int k, bool dagger, int N) {
  return jw_mode(ModeRef{s, k, dagger}, N);
}

// n = a^dagger a on qubit q, which is (1 - Z_q) / 2 regardless of the prefix.
inline PauliSum number_operator(int q, int n) {
  PauliSum out = PauliSum::identity(n, 0.5);
  out.add_term(PauliString::single(n, q, 'Z'), -0.5);
  return out;
}

}  // namespace thirring

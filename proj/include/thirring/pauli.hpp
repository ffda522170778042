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
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thirring/errors.hpp"

namespace thirring {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 30;
inline constexpr double kPruneTol = 1e-12;

inline int popcount(std::uint32_t v) { return std::popcount(v); }

// i^k for k taken mod 4.
inline cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Bit position of qubit q inside a state index. Qubit 0 is the most
// significant bit so that |n0 n1 ... n_{n-1}> reads left to right.
inline std::uint32_t qubit_bit(int q, int n) {
  return std::uint32_t{1} << (n - 1 - q);
}

// A tensor product of Pauli letters times a phase i^phase.
//
// The letters are held as two masks in state-index space: bit (n-1-q) of x
// (resp. z) is set when qubit q carries an X-part (resp. Z-part). With this
// layout the phase-free string equals i^{|x&z|} X^x Z^z, which makes both
// multiplication and the action on a basis state a handful of bit operations.
struct PauliString {
  int n = 0;
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  int phase = 0;  // power of i, kept in [0, 4)

  PauliString() = default;
  PauliString(int n_qubits, std::uint32_t xm, std::uint32_t zm, int ph = 0)
      : n(n_qubits), x(xm), z(zm), phase(((ph % 4) + 4) % 4) {}

  static PauliString identity(int n_qubits) { return {n_qubits, 0, 0, 0}; }

  // Parses letters such as "XIZY"; character i is qubit i.
  static PauliString from_letters(const std::string& letters) {
    const int n = static_cast<int>(letters.size());
    if (n == 0 || n > kMaxQubits) throw ContractError("bad Pauli string length");
    PauliString p(n, 0, 0, 0);
    for (int q = 0; q < n; ++q) {
      const std::uint32_t b = qubit_bit(q, n);
      switch (letters[q]) {
        case 'I': break;
        case 'X': p.x |= b; break;
        case 'Z': p.z |= b; break;
        case 'Y': p.x |= b; p.z |= b; break;
        default: throw ContractError("bad Pauli letter '" + std::string(1, letters[q]) + "'");
      }
    }
    return p;
  }

  // Single-letter string on qubit q.
  static PauliString single(int n_qubits, int q, char letter) {
    std::string s(n_qubits, 'I');
    s[q] = letter;
    return from_letters(s);
  }

  char letter(int q) const {
    const std::uint32_t b = qubit_bit(q, n);
    const bool hx = x & b, hz = z & b;
    return hx ? (hz ? 'Y' : 'X') : (hz ? 'Z' : 'I');
  }

  std::string letters() const {
    std::string s(n, 'I');
    for (int q = 0; q < n; ++q) s[q] = letter(q);
    return s;
  }

  int weight() const { return popcount(x | z); }
  bool is_identity() const { return (x | z) == 0; }
  bool is_diagonal() const { return x == 0; }
  PauliString phase_free() const { return {n, x, z, 0}; }
  cplx phase_value() const { return ipow(phase); }

  bool commutes_with(const PauliString& o) const {
    return ((popcount(x & o.z) + popcount(z & o.x)) & 1) == 0;
  }

  // Action on the basis state |b>: returns the target index and amplitude.
  std::pair<std::uint32_t, cplx> apply_to_basis(std::uint32_t b) const {
    const int k = phase + popcount(x & z) + 2 * popcount(z & b);
    return {b ^ x, ipow(k)};
  }

  std::pair<std::uint32_t, std::uint32_t> key() const { return {x, z}; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n == b.n && a.x == b.x && a.z == b.z && a.phase == b.phase;
  }
};

inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw ContractError("Pauli string size mismatch");
  const std::uint32_t x3 = a.x ^ b.x, z3 = a.z ^ b.z;
  const int k = a.phase + b.phase + popcount(a.x & a.z) + popcount(b.x & b.z) +
                2 * popcount(a.z & b.x) - popcount(x3 & z3);
  return {a.n, x3, z3, k};
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

// Sum of phase-free Pauli strings with complex coefficients.
class PauliSum {
 public:
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  using Map = std::map<Key, cplx>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw ContractError("qubit count out of range");
  }
  PauliSum(const PauliString& p, cplx coef = 1.0) : PauliSum(p.n) { add_term(p, coef); }

  static PauliSum identity(int n_qubits, cplx coef = 1.0) {
    return PauliSum(PauliString::identity(n_qubits), coef);
  }

  int qubit_count() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  // The string's own phase is folded into the coefficient.
  void add_term(const PauliString& p, cplx coef) {
    check_size(p.n);
    terms_[p.key()] += coef * p.phase_value();
  }

  cplx coefficient(const PauliString& p) const {
    auto it = terms_.find(p.key());
    return it == terms_.end() ? cplx{0.0} : it->second * p.phase_value();
  }

  PauliString string_of(const Key& k) const { return {n_, k.first, k.second, 0}; }

  PauliSum& operator+=(const PauliSum& o) {
    if (o.n_ == 0) return *this;
    if (n_ == 0) n_ = o.n_;
    check_size(o.n_);
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    return *this;
  }
  PauliSum& operator-=(const PauliSum& o) { return *this += o * cplx{-1.0}; }
  PauliSum& operator*=(cplx s) {
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_) throw ContractError("Pauli sum size mismatch");
    PauliSum out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
      const PauliString pa = a.string_of(ka);
      for (const auto& [kb, cb] : b.terms_) {
        const PauliString pc = multiply(pa, b.string_of(kb));
        out.terms_[pc.key()] += ca * cb * pc.phase_value();
      }
    }
    return out;
  }

  // Merges duplicates (already merged by the map) and drops coefficients
  // whose magnitude is below tol.
  PauliSum simplified(double tol = kPruneTol) const {
    PauliSum out(*this);
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
      if (std::abs(it->second) < tol) it = out.terms_.erase(it);
      else ++it;
    }
    return out;
  }

  PauliSum adjoint() const {
    PauliSum out(*this);
    for (auto& [k, c] : out.terms_) c = std::conj(c);
    return out;
  }

  bool is_hermitian(double tol = 1e-12) const {
    for (const auto& [k, c] : terms_)
      if (std::abs(c.imag()) > tol) return false;
    return true;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  cplx identity_coefficient() const {
    auto it = terms_.find({0u, 0u});
    return it == terms_.end() ? cplx{0.0} : it->second;
  }

  std::size_t count_without_identity() const {
    return size() - (terms_.count({0u, 0u}) ? 1 : 0);
  }

 private:
  void check_size(int n) const {
    if (n != n_) throw ContractError("Pauli sum size mismatch");
  }

  int n_ = 0;
  Map terms_;
};

inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return (a * b - b * a).simplified();
}

inline PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return (a * b + b * a).simplified();
}

// Text form used by dump-hamiltonian: "re+imi LETTERS", one term per line.
inline void write_pauli_sum(std::ostream& os, const PauliSum& s) {
  std::ostringstream line;
  for (const auto& [k, c] : s.terms()) {
    line.str("");
    line << std::setprecision(17) << c.real() << std::showpos << c.imag() << std::noshowpos
         << "i " << s.string_of(k).letters() << '\n';
    os << line.str();
  }
}

inline PauliSum read_pauli_sum(std::istream& is) {
  PauliSum out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    char i_char = 0;
    std::string letters;
    if (!(ls >> re >> im >> i_char >> letters) || i_char != 'i')
      throw ContractError("malformed Pauli sum line: " + line);
    const PauliString p = PauliString::from_letters(letters);
    if (first) {
      out = PauliSum(p.n);
      first = false;
    }
    out.add_term(p, {re, im});
  }
  return out;
}

}  // namespace thirring

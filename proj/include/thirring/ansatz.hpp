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
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "thirring/circuit.hpp"
#include "thirring/errors.hpp"
#include "thirring/sampling.hpp"

namespace thirring {

enum class AnsatzId { GS2, GS1, ES2, ES1 };

// (theta, phi, chi). Ansaetze that use fewer angles ignore the rest.
using AnsatzParams = std::array<double, 3>;

// How the three circuit angles follow the single optimized angle theta.
//   Default:   GS2 phi = pi - 2 theta; GS1 phi = theta; ES2 phi = theta,
//              chi = theta / 2; ES1 phi = chi = theta.
//   HalfAngle: GS2 as above; the others use phi = chi = theta / 2.
// The default ties make every one-parameter family pass through a state
// with equal pair amplitudes, which the half-angle ties cannot reach.
enum class TieRule { Default, HalfAngle };

struct AnsatzTerm {
  std::function<double(const AnsatzParams&)> amplitude;
  std::function<Circuit(const AnsatzParams&)> circuit;
};

struct AnsatzSpec {
  AnsatzId id = AnsatzId::GS2;
  std::string name;
  int qubits = 6;
  int sector = 0;  // fermion charge of every branch state
  std::vector<AnsatzTerm> terms;
  int angle_count = 1;  // how many of (theta, phi, chi) the circuits use

  AnsatzParams tie(double theta, TieRule rule = TieRule::Default) const;
  std::pair<double, double> theta_domain(TieRule rule = TieRule::Default) const;
};

namespace detail {

inline Circuit gs1_circuit(double theta, double phi) {
  Circuit c(6);
  c.ry(2, theta).cry(2, 3, phi).cnot(3, 4).x(2).cnot(2, 5);
  return c;
}

}  // namespace detail

inline AnsatzParams AnsatzSpec::tie(double theta, TieRule rule) const {
  if (id == AnsatzId::GS2) return {theta, std::numbers::pi - 2.0 * theta, 0.0};
  if (rule == TieRule::HalfAngle) return {theta, 0.5 * theta, 0.5 * theta};
  switch (id) {
    case AnsatzId::GS1: return {theta, theta, 0.0};
    case AnsatzId::ES2: return {theta, theta, 0.5 * theta};
    default: return {theta, theta, theta};
  }
}

inline std::pair<double, double> AnsatzSpec::theta_domain(TieRule rule) const {
  if (id == AnsatzId::GS2 || rule == TieRule::HalfAngle) return {0.0, std::numbers::pi};
  return {0.0, 2.0 * std::numbers::pi};
}

// sin(theta) RY_4(phi) CNOT_{4->3} |0>  +  cos(theta) X_2 X_5 |0>
inline AnsatzSpec make_gs2() {
  AnsatzSpec s{AnsatzId::GS2, "GS2", 6, 0, {}, 2};
  s.terms.push_back({[](const AnsatzParams& p) { return std::sin(p[0]); },
                     [](const AnsatzParams& p) {
                       Circuit c(6);
                       c.ry(4, p[1]).cnot(4, 3);
                       return c;
                     }});
  s.terms.push_back({[](const AnsatzParams& p) { return std::cos(p[0]); },
                     [](const AnsatzParams&) {
                       Circuit c(6);
                       c.x(2).x(5);
                       return c;
                     }});
  return s;
}

inline AnsatzSpec make_gs1() {
  AnsatzSpec s{AnsatzId::GS1, "GS1", 6, 0, {}, 2};
  s.terms.push_back({[](const AnsatzParams&) { return 1.0; },
                     [](const AnsatzParams& p) { return detail::gs1_circuit(p[0], p[1]); }});
  return s;
}

// sin(chi) X_0 GS1(theta, phi) |0>  +  cos(chi) X_1 X_2 X_4 |0>
inline AnsatzSpec make_es2() {
  AnsatzSpec s{AnsatzId::ES2, "ES2", 6, 1, {}, 3};
  s.terms.push_back({[](const AnsatzParams& p) { return std::sin(p[2]); },
                     [](const AnsatzParams& p) {
                       Circuit c = detail::gs1_circuit(p[0], p[1]);
                       c.x(0);
                       return c;
                     }});
  s.terms.push_back({[](const AnsatzParams& p) { return std::cos(p[2]); },
                     [](const AnsatzParams&) {
                       Circuit c(6);
                       c.x(1).x(2).x(4);
                       return c;
                     }});
  return s;
}

inline AnsatzSpec make_es1() {
  AnsatzSpec s{AnsatzId::ES1, "ES1", 6, 1, {}, 3};
  s.terms.push_back({[](const AnsatzParams&) { return 1.0; },
                     [](const AnsatzParams& p) {
                       Circuit c(6);
                       c.x(0).ry(5, p[0]).cry(5, 1, p[2]).cnot(1, 0).cnot(1, 5).cnot(5, 2);
                       c.cry(2, 3, p[1]).x(5).cnot(1, 5).x(2).cnot(3, 4).cnot(0, 4).x(4);
                       return c;
                     }});
  return s;
}

inline AnsatzSpec make_ansatz(AnsatzId id) {
  switch (id) {
    case AnsatzId::GS2: return make_gs2();
    case AnsatzId::GS1: return make_gs1();
    case AnsatzId::ES2: return make_es2();
    case AnsatzId::ES1: return make_es1();
  }
  throw ContractError("unknown ansatz id");
}

inline std::vector<AnsatzSpec> ansatz_catalog() {
  return {make_gs2(), make_gs1(), make_es2(), make_es1()};
}

inline AnsatzId parse_ansatz_id(const std::string& name) {
  if (name == "GS2") return AnsatzId::GS2;
  if (name == "GS1") return AnsatzId::GS1;
  if (name == "ES2") return AnsatzId::ES2;
  if (name == "ES1") return AnsatzId::ES1;
  throw ConfigError("unknown ansatz '" + name + "' (expected GS2, GS1, ES2 or ES1)");
}

inline TieRule parse_tie_rule(const std::string& name) {
  if (name == "default") return TieRule::Default;
  if (name == "half-angle") return TieRule::HalfAngle;
  throw ConfigError("unknown tie rule '" + name + "' (expected default or half-angle)");
}

inline std::string to_string(TieRule r) { return r == TieRule::Default ? "default" : "half-angle"; }

inline int ansatz_cnot_count(const AnsatzSpec& s) {
  int total = 0;
  for (const auto& t : s.terms) total += cnot_count(t.circuit({0.3, 0.7, 1.1}));
  return total;
}

// Normalized trial state sum_m c_m U_m |0>, with every CNOT repeated r times.
inline Statevector ansatz_state(const AnsatzSpec& s, const AnsatzParams& p, int r = 1) {
  Statevector out(std::size_t{1} << s.qubits, cplx{0.0});
  for (const auto& t : s.terms) {
    const double c = t.amplitude(p);
    const Statevector v = run(expand_cnots(t.circuit(p), r));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
  }
  return out;
}

}  // namespace thirring

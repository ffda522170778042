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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "test_util.hpp"

namespace thirring {
namespace {

using testing::max_abs;

Eigen::MatrixXcd circuit_matrix(const Circuit& c) {
  const int n = c.qubit_count();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Statevector s = basis_state(n, static_cast<std::uint32_t>(b));
    apply_circuit(s, c);
    m.col(b) = to_eigen(s);
  }
  return m;
}

// exp(-i a P)|psi> for a phase-free Pauli string P.
Statevector exp_pauli(const PauliString& p, double a, const Statevector& s) {
  const Statevector ps = apply_pauli_sum(PauliSum(p), s);
  Statevector out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::cos(a) * s[i] - cplx(0, std::sin(a)) * ps[i];
  return out;
}

double max_diff(const Statevector& a, const Statevector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Circuit, PauliXFlipsQubit) {
  Circuit c(1);
  c.x(0);
  EXPECT_LT(max_diff(run(c), basis_state(1, 1)), 1e-15);
}

TEST(Circuit, RotYConvention) {
  const double t = 0.83;
  Circuit c(1);
  c.ry(0, t);
  const Statevector s = run(c);
  EXPECT_NEAR(s[0].real(), std::cos(t / 2), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sin(t / 2), 1e-15);
  const Eigen::MatrixXcd expect = std::cos(t / 2) * Eigen::MatrixXcd::Identity(2, 2) -
                                  cplx(0, std::sin(t / 2)) * testing::kron_letters("Y");
  EXPECT_LT(max_abs(circuit_matrix(c) - expect), 1e-14);
}

TEST(Circuit, CalYRotatesZOntoY) {
  Circuit c(1);
  c.caly(0);
  const Eigen::MatrixXcd u = circuit_matrix(c);
  EXPECT_LT(max_abs(u.adjoint() * testing::kron_letters("Z") * u - testing::kron_letters("Y")), 1e-14);
  Circuit d(1);
  d.caly(0).calydag(0);
  EXPECT_LT(max_abs(circuit_matrix(d) - Eigen::MatrixXcd::Identity(2, 2)), 1e-15);
  Circuit h(1);
  h.h(0);
  const Eigen::MatrixXcd hm = circuit_matrix(h);
  EXPECT_LT(max_abs(hm.adjoint() * testing::kron_letters("Z") * hm - testing::kron_letters("X")), 1e-14);
}

TEST(Circuit, SingleCnotPairCircuitIsPauliExponential) {
  for (double phi : {0.0, 0.4, 1.9, 3.0}) {
    Circuit c(6);
    c.ry(4, phi).cnot(4, 3);
    const Statevector expect = exp_pauli(PauliString::from_letters("IIIXYI"), phi / 2, zero_state(6));
    EXPECT_LT(max_diff(run(c), expect), 1e-14) << phi;
  }
}

TEST(Circuit, ControlledRotationIsCnotSandwich) {
  const double a = 1.234;
  Circuit c(2);
  c.cry(0, 1, a);
  Circuit ref(2);
  ref.ry(1, a / 2).cnot(0, 1).ry(1, -a / 2);
  EXPECT_LT(max_abs(circuit_matrix(c) - circuit_matrix(ref)), 1e-15);
  // Control off: identity. Control on: RotY(-a) X = X RotY(a) on the target.
  const Eigen::MatrixXcd m = circuit_matrix(c);
  EXPECT_LT(max_abs(m.block(0, 0, 2, 2) - Eigen::MatrixXcd::Identity(2, 2)), 1e-15);
  Circuit on(1);
  on.x(0).ry(0, -a);
  EXPECT_LT(max_abs(m.block(2, 2, 2, 2) - circuit_matrix(on)), 1e-15);
  Statevector s = basis_state(2, 2);
  apply_circuit(s, c);
  EXPECT_NEAR(s[2].real(), std::sin(a / 2), 1e-15);
  EXPECT_NEAR(s[3].real(), std::cos(a / 2), 1e-15);
  EXPECT_EQ(cnot_count(c), 1);
}

TEST(Circuit, ExpandCnotsPreservesNoiselessAction) {
  Circuit c(4);
  c.ry(0, 0.3).cry(0, 1, 0.7).cnot(1, 2).h(3).cnot(3, 0);
  EXPECT_EQ(expand_cnots(c, 1).gates().size(), c.gates().size());
  for (int r : {3, 5, 9}) {
    const Circuit e = expand_cnots(c, r);
    EXPECT_EQ(cnot_count(e), 3 * r);
    EXPECT_LT(max_diff(run(e), run(c)), 1e-12);
  }
  EXPECT_THROW(expand_cnots(c, 2), ContractError);
  EXPECT_THROW(expand_cnots(c, 0), ContractError);
}

TEST(Circuit, NormIsPreserved) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0, 6.3);
  std::uniform_int_distribution<int> q(0, 5);
  Circuit c(6);
  for (int i = 0; i < 60; ++i) {
    const int a = q(rng);
    int b = q(rng);
    if (b == a) b = (a + 1) % 6;
    switch (i % 5) {
      case 0: c.ry(a, ang(rng)); break;
      case 1: c.cnot(a, b); break;
      case 2: c.caly(a); break;
      case 3: c.h(a); break;
      default: c.cry(a, b, ang(rng)); break;
    }
  }
  EXPECT_NEAR(norm(run(c)), 1.0, 1e-12);
}

TEST(Circuit, RejectsBadIndices) {
  Circuit c(3);
  EXPECT_THROW(c.x(3), ContractError);
  EXPECT_THROW(c.cnot(1, 1), ContractError);
  EXPECT_THROW(Circuit(13), ResourceError);
}

TEST(Expectation, AgreesWithDenseQuadraticForm) {
  LatticeParams p{2, 1.1, 3.0, 0.4, false};
  const PauliSum h = build_hamiltonian(p);
  Circuit c(4);
  c.ry(0, 0.3).ry(1, 1.1).cnot(0, 2).ry(3, 2.2).cnot(3, 1);
  const Statevector s = run(c);
  const Eigen::VectorXcd v = to_eigen(s);
  EXPECT_NEAR(exact_expectation(s, h), (v.adjoint() * to_matrix(h) * v)(0).real(), 1e-10);
  EXPECT_NEAR(exact_expectation(zero_state(4), build_H0(p)), 0.0, 1e-14);
  PauliSum bad(4);
  bad.add_term(PauliString::from_letters("XIII"), cplx(0, 1));
  EXPECT_THROW(exact_expectation(s, bad), ContractError);
}

TEST(Sampling, DeterministicAndExhaustive) {
  EXPECT_EQ(sample_counts(zero_state(2), 100, nullptr, 1).at(0), 100);
  Circuit c(3);
  c.ry(0, 1.0).cnot(0, 1).ry(2, 2.0);
  const Statevector s = run(c);
  EXPECT_EQ(sample_counts(s, 1000, nullptr, 5), sample_counts(s, 1000, nullptr, 5));
  EXPECT_EQ(total_shots(sample_counts(s, 1234, nullptr, 5)), 1234);
  EXPECT_THROW(sample_counts(s, 0, nullptr, 5), ContractError);
}

double z_estimate(const Counts& c, int q, int n) {
  double acc = 0.0;
  for (const auto& [b, k] : c) acc += k * ((b & qubit_bit(q, n)) ? -1.0 : 1.0);
  return acc / total_shots(c);
}

TEST(Sampling, SingleQubitEstimateWithinThreeSigma) {
  const double t = 1.1;
  Circuit c(1);
  c.ry(0, t);
  const Statevector s = run(c);
  const double z = std::cos(t);
  const long shots = 4000;
  const double sigma = std::sqrt((1 - z * z) / shots);
  int inside = 0;
  for (int seed = 0; seed < 200; ++seed)
    inside += std::abs(z_estimate(sample_counts(s, shots, nullptr, seed), 0, 1) - z) < 3 * sigma;
  EXPECT_GE(inside, 198);
}

TEST(Sampling, ReadoutFlipsShrinkExpectation) {
  const double t = 0.7, p = 0.05;
  Circuit c(1);
  c.ry(0, t);
  NoiseCalibration cal = NoiseCalibration::noiseless(1);
  cal.qubits[0] = {p, p};
  const double z = std::cos(t);
  const long shots = 1 << 18;
  const double est = z_estimate(sample_counts(run(c), shots, &cal, 3), 0, 1);
  EXPECT_NEAR(est, (1 - 2 * p) * z, 4.0 / std::sqrt(double(shots)));
}

TEST(Sampling, TrivialNoiseMatchesNoiselessPath) {
  Circuit c(4);
  c.ry(0, 1.0).cnot(0, 1).cry(1, 2, 0.6).cnot(2, 3);
  const NoiseCalibration zero = NoiseCalibration::noiseless(4);
  EXPECT_EQ(sample_circuit(c, 3000, &zero, 99), sample_circuit(c, 3000, nullptr, 99));
  EXPECT_EQ(run(c, &zero, 4), run(c));
}

TEST(Sampling, NoisyTrajectoriesAreReproducible) {
  Circuit c(4);
  c.ry(0, 1.0).cnot(0, 1).cnot(1, 2).cnot(2, 3);
  const NoiseCalibration cal = NoiseCalibration::defaults(4);
  EXPECT_EQ(sample_circuit(c, 5000, &cal, 42), sample_circuit(c, 5000, &cal, 42));
  EXPECT_NE(sample_circuit(c, 5000, &cal, 42), sample_circuit(c, 5000, &cal, 43));
  NoiseCalibration heavy = NoiseCalibration::noiseless(4);
  heavy.cnot_depol = 0.5;
  EXPECT_EQ(run(c, &heavy, 7), run(c, &heavy, 7));
}

TEST(Sampling, DepolarizingNoiseBiasesTowardMixing) {
  // GHZ-like state: the parity Z0 Z3 is +1 noiselessly and must be pulled
  // toward zero by depolarizing events.
  Circuit c(4);
  c.h(0).cnot(0, 1).cnot(1, 2).cnot(2, 3);
  NoiseCalibration cal = NoiseCalibration::noiseless(4);
  cal.cnot_depol = 0.1;
  const Counts counts = sample_circuit(c, 20000, &cal, 11);
  double parity = 0.0;
  for (const auto& [b, k] : counts) parity += k * ((popcount(b & 0b1001u) % 2) ? -1.0 : 1.0);
  parity /= 20000;
  EXPECT_LT(parity, 0.9);
  EXPECT_GT(parity, 0.5);
}

TEST(Calibration, ParseAndValidate) {
  std::stringstream ss("# device\nqubits[0].p01 = 0.03\nqubits[0].p10=0.01\ncnot_depol = 0.02\n");
  const NoiseCalibration cal = parse_calibration(ss, 2);
  EXPECT_DOUBLE_EQ(cal.qubits[0].p01, 0.03);
  EXPECT_DOUBLE_EQ(cal.qubits[0].p10, 0.01);
  EXPECT_DOUBLE_EQ(cal.qubits[1].p01, 0.0);
  EXPECT_DOUBLE_EQ(cal.cnot_depol, 0.02);
  EXPECT_DOUBLE_EQ(cal.p_plus(0), 0.04);
  EXPECT_DOUBLE_EQ(cal.p_minus(0), 0.02);
  std::stringstream out;
  write_calibration(out, cal);
  EXPECT_EQ(parse_calibration(out, 2).qubits[0].p10, 0.01);

  std::stringstream bad("qubits[5].p01 = 0.1\n");
  EXPECT_THROW(parse_calibration(bad, 2), CalibrationError);
  std::stringstream big("qubits[0].p01 = 0.6\nqubits[0].p10 = 0.5\n");
  EXPECT_THROW(parse_calibration(big, 1), CalibrationError);
  std::stringstream junk("foo = 1\n");
  EXPECT_THROW(parse_calibration(junk, 1), CalibrationError);
}

}  // namespace
}  // namespace thirring

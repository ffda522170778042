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

#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "thirring/errors.hpp"

namespace thirring {

struct QubitReadout {
  double p01 = 0.0;  // probability of reading 0 when the qubit is 1
  double p10 = 0.0;  // probability of reading 1 when the qubit is 0
};

struct NoiseCalibration {
  std::vector<QubitReadout> qubits;
  double cnot_depol = 0.0;

  static NoiseCalibration noiseless(int n) { return {std::vector<QubitReadout>(n), 0.0}; }

  // Representative magnitudes for a superconducting device; no particular
  // machine is modeled.
  static NoiseCalibration defaults(int n) {
    return {std::vector<QubitReadout>(n, QubitReadout{0.03, 0.01}), 0.01};
  }

  double p_plus(int q) const { return qubits.at(q).p01 + qubits.at(q).p10; }
  double p_minus(int q) const { return qubits.at(q).p01 - qubits.at(q).p10; }

  bool has_readout_noise() const {
    for (const auto& r : qubits)
      if (r.p01 != 0.0 || r.p10 != 0.0) return true;
    return false;
  }
  bool is_trivial() const { return cnot_depol == 0.0 && !has_readout_noise(); }

  void validate() const {
    auto bad = [](double p) { return !(p >= 0.0 && p < 1.0); };
    if (bad(cnot_depol)) throw CalibrationError("cnot_depol must lie in [0, 1)");
    for (std::size_t q = 0; q < qubits.size(); ++q) {
      if (bad(qubits[q].p01) || bad(qubits[q].p10))
        throw CalibrationError("readout probability out of range on qubit " + std::to_string(q));
      if (p_plus(static_cast<int>(q)) >= 1.0)
        throw CalibrationError("p01 + p10 must be below 1 on qubit " + std::to_string(q));
    }
  }
};

// Reads "qubits[i].p01 = v", "qubits[i].p10 = v" and "cnot_depol = v" lines.
// Qubits without an entry keep a perfect readout.
inline NoiseCalibration parse_calibration(std::istream& is, int n) {
  NoiseCalibration cal = NoiseCalibration::noiseless(n);
  static const std::regex qline(R"(^\s*qubits\[(\d+)\]\.(p01|p10)\s*=\s*(\S+)\s*$)");
  static const std::regex dline(R"(^\s*cnot_depol\s*=\s*(\S+)\s*$)");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    try {
      if (std::regex_match(line, m, qline)) {
        const int q = std::stoi(m[1]);
        if (q < 0 || q >= n) throw CalibrationError("qubit index out of range");
        (m[2] == "p01" ? cal.qubits[q].p01 : cal.qubits[q].p10) = std::stod(m[3]);
      } else if (std::regex_match(line, m, dline)) {
        cal.cnot_depol = std::stod(m[1]);
      } else {
        throw CalibrationError("unrecognized entry");
      }
    } catch (const std::logic_error&) {
      throw CalibrationError("bad number on calibration line " + std::to_string(lineno));
    } catch (const CalibrationError& e) {
      throw CalibrationError(std::string(e.what()) + " on calibration line " + std::to_string(lineno));
    }
  }
  cal.validate();
  return cal;
}

inline NoiseCalibration load_calibration(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open calibration file " + path);
  return parse_calibration(f, n);
}

inline void write_calibration(std::ostream& os, const NoiseCalibration& cal) {
  os << std::setprecision(17);
  for (std::size_t q = 0; q < cal.qubits.size(); ++q) {
    os << "qubits[" << q << "].p01 = " << cal.qubits[q].p01 << '\n';
    os << "qubits[" << q << "].p10 = " << cal.qubits[q].p10 << '\n';
  }
  os << "cnot_depol = " << cal.cnot_depol << '\n';
}

}  // namespace thirring

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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "thirring/errors.hpp"
#include "thirring/lattice.hpp"
#include "thirring/pauli.hpp"

namespace thirring {

inline constexpr int kMaxDenseQubits = 12;

inline Eigen::MatrixXcd to_matrix(const PauliSum& s) {
  const int n = s.qubit_count();
  if (n < 1 || n > kMaxDenseQubits) throw ResourceError("dense matrices are capped at 12 qubits");
  const std::uint32_t dim = std::uint32_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, coef] : s.terms()) {
    const PauliString p = s.string_of(key);
    for (std::uint32_t b = 0; b < dim; ++b) {
      const auto [t, amp] = p.apply_to_basis(b);
      m(t, b) += coef * amp;
    }
  }
  return m;
}

inline Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<cplx> from_eigen(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

struct SpectrumResult {
  std::vector<double> eigenvalues;          // ascending
  std::vector<int> sector_labels;           // fermion charge of each eigenvalue
  std::optional<Eigen::MatrixXcd> eigenvectors;  // column i belongs to eigenvalue i
};

struct SectorGround {
  double energy = 0.0;
  Eigen::VectorXcd vector;
};

// H(g2) = H0 + g2 * V with the charge of every basis state. Building the two
// matrices once makes coupling sweeps cheap.
class HamiltonianFamily {
 public:
  explicit HamiltonianFamily(const LatticeParams& p) : params_(p) {
    p.validate();
    if (p.qubits() > kMaxDenseQubits) throw ResourceError("dense solver supports N <= 6");
    h0_ = to_matrix(build_H0(p));
    v_ = to_matrix(build_Hint(p.with_g2(1.0)));
    const std::uint32_t dim = std::uint32_t{1} << p.qubits();
    charges_.resize(dim);
    for (std::uint32_t b = 0; b < dim; ++b) charges_[b] = charge_of(b, p.N);
  }

  const LatticeParams& params() const { return params_; }
  Eigen::MatrixXcd matrix(double g2) const { return h0_ + g2 * v_; }
  const std::vector<int>& charges() const { return charges_; }

  std::vector<int> sector_indices(int q) const {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(charges_.size()); ++i)
      if (charges_[i] == q) idx.push_back(i);
    return idx;
  }

  // Lowest eigenpair inside the given charge sector, embedded in the full space.
  SectorGround sector_ground(double g2, int q) const {
    const std::vector<int> idx = sector_indices(q);
    if (idx.empty()) throw DomainError("empty charge sector");
    const Eigen::MatrixXcd h = matrix(g2);
    const Eigen::Index d = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd block(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) block(i, j) = h(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    if (es.info() != Eigen::Success) throw ComputationError("eigensolver failed");
    SectorGround out;
    out.energy = es.eigenvalues()(0);
    out.vector = Eigen::VectorXcd::Zero(h.rows());
    for (Eigen::Index i = 0; i < d; ++i) out.vector(idx[i]) = es.eigenvectors()(i, 0);
    return out;
  }

  SpectrumResult spectrum(double g2, bool with_vectors = false) const {
    const Eigen::MatrixXcd h = matrix(g2);
    std::map<int, std::vector<int>> sectors;
    for (int i = 0; i < static_cast<int>(charges_.size()); ++i) sectors[charges_[i]].push_back(i);
    struct Level {
      double e;
      int q;
      Eigen::VectorXcd v;
    };
    std::vector<Level> levels;
    levels.reserve(charges_.size());
    for (const auto& [q, idx] : sectors) {
      const Eigen::Index d = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXcd block(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) block(i, j) = h(idx[i], idx[j]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          block, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw ComputationError("eigensolver failed");
      for (Eigen::Index k = 0; k < d; ++k) {
        Level l{es.eigenvalues()(k), q, {}};
        if (with_vectors) {
          l.v = Eigen::VectorXcd::Zero(h.rows());
          for (Eigen::Index i = 0; i < d; ++i) l.v(idx[i]) = es.eigenvectors()(i, k);
        }
        levels.push_back(std::move(l));
      }
    }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const Level& a, const Level& b) { return a.e < b.e; });
    SpectrumResult r;
    for (const auto& l : levels) {
      r.eigenvalues.push_back(l.e);
      r.sector_labels.push_back(l.q);
    }
    if (with_vectors) {
      Eigen::MatrixXcd vecs(h.rows(), static_cast<Eigen::Index>(levels.size()));
      for (std::size_t k = 0; k < levels.size(); ++k) vecs.col(static_cast<Eigen::Index>(k)) = levels[k].v;
      r.eigenvectors = std::move(vecs);
    }
    return r;
  }

 private:
  LatticeParams params_;
  Eigen::MatrixXcd h0_, v_;
  std::vector<int> charges_;
};

inline SpectrumResult spectrum(const LatticeParams& p, bool with_vectors = false) {
  return HamiltonianFamily(p).spectrum(p.g2, with_vectors);
}

struct GapResult {
  double E0 = 0.0;        // lowest level with zero charge
  double E1 = 0.0;        // lowest level with charge +1
  double E1_minus = 0.0;  // lowest level with charge -1
  double gap = 0.0;
};

inline GapResult mass_gap_detail(const HamiltonianFamily& fam, double g2) {
  GapResult r;
  r.E0 = fam.sector_ground(g2, 0).energy;
  r.E1 = fam.sector_ground(g2, +1).energy;
  r.E1_minus = fam.sector_ground(g2, -1).energy;
  r.gap = r.E1 - r.E0;
  return r;
}

inline double mass_gap_exact(const LatticeParams& p) {
  return mass_gap_detail(HamiltonianFamily(p), p.g2).gap;
}

// Coupling at which the exact gap closes. The bracket grows by doubling from
// g2 = 1 and is then bisected until |gap| < tol.
inline double critical_coupling(const HamiltonianFamily& fam, double g2_max, double tol = 1e-6) {
  auto gap = [&](double g) { return mass_gap_detail(fam, g).gap; };
  if (!(gap(0.0) > 0.0)) throw DomainError("free gap must be positive");
  double lo = 0.0, hi = std::min(1.0, g2_max);
  double ghi = gap(hi);
  while (ghi > 0.0) {
    if (hi >= g2_max) throw NotFoundError("gap does not close below g2_max");
    lo = hi;
    hi = std::min(2.0 * hi, g2_max);
    ghi = gap(hi);
  }
  if (std::abs(ghi) < tol) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if (std::abs(gm) < tol || hi - lo < 1e-14 * std::max(1.0, hi)) return mid;
    (gm > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double critical_coupling(const LatticeParams& p, double g2_max) {
  return critical_coupling(HamiltonianFamily(p), g2_max);
}

struct CriticalPoint {
  double m0 = 0.0;
  std::optional<double> g2_crit;  // empty when no sign change was found
};

inline double default_g2_max(double m0) { return 8.0 * m0 + 64.0; }

inline std::vector<CriticalPoint> critical_line(const std::vector<double>& m0_grid,
                                                const LatticeParams& base) {
  if (!std::is_sorted(m0_grid.begin(), m0_grid.end()))
    throw ContractError("m0 grid must be ascending");
  std::vector<CriticalPoint> out;
  for (double m0 : m0_grid) {
    LatticeParams p = base;
    p.m0 = m0;
    CriticalPoint cp{m0, std::nullopt};
    try {
      cp.g2_crit = critical_coupling(p, default_g2_max(m0));
    } catch (const NotFoundError&) {
    } catch (const DomainError&) {
    }
    out.push_back(cp);
  }
  return out;
}

}  // namespace thirring

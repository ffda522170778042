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
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "thirring/errors.hpp"

namespace thirring {

using ScalarFunction = std::function<double(double)>;

struct ScalarMinimum {
  double x = 0.0;
  double fx = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

struct GridScan {
  std::vector<double> xs, fs;
  std::size_t best = 0;
};

inline GridScan scan(const ScalarFunction& f, double a, double b, int points) {
  if (points < 3) throw ContractError("grid needs at least three points");
  if (!(b > a)) throw ContractError("empty search interval");
  GridScan s;
  for (int i = 0; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    s.xs.push_back(x);
    s.fs.push_back(f(x));
    if (!std::isfinite(s.fs.back())) throw ComputationError("objective returned a non-finite value");
    if (s.fs.back() < s.fs[s.best]) s.best = s.xs.size() - 1;
  }
  return s;
}

}  // namespace detail

// Coarse grid followed by Brent's method inside the bracketing cell pair.
// Meant for noiseless objectives.
inline ScalarMinimum grid_then_brent(const ScalarFunction& f, double a, double b, int points = 121,
                                     double tol = 1e-6) {
  const detail::GridScan s = detail::scan(f, a, b, points);
  const std::size_t i = s.best;
  const double lo = s.xs[i == 0 ? 0 : i - 1];
  const double hi = s.xs[std::min(i + 1, s.xs.size() - 1)];
  // Brent's tolerance is given in bits; 1e-6 absolute on an O(1) interval
  // is about 20 bits, we ask for a few more to be safe.
  const int bits = std::clamp(int(std::ceil(-std::log2(tol))) + 4, 8, 52);
  std::uintmax_t iters = 200;
  const auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
  ScalarMinimum m{x, fx, points + int(iters), iters < 200};
  if (s.fs[i] < m.fx) {
    m.x = s.xs[i];
    m.fx = s.fs[i];
  }
  return m;
}

// Coarse grid, then a fine grid over the bracketing cells, then a
// least-squares parabola through the fine grid. Statistical noise makes
// bracketing methods unreliable, so the fit averages over many points.
// Falls back to the best fine-grid point when the fit is not convex or its
// vertex leaves the bracket; converged reports which branch was taken.
inline ScalarMinimum grid_then_parabola(const ScalarFunction& f, double a, double b, int points = 61,
                                        int fine_points = 21) {
  const detail::GridScan s = detail::scan(f, a, b, points);
  const std::size_t i = s.best;
  const double lo = s.xs[i == 0 ? 0 : i - 1];
  const double hi = s.xs[std::min(i + 1, s.xs.size() - 1)];
  const detail::GridScan fine = detail::scan(f, lo, hi, fine_points);

  Eigen::MatrixXd A(fine_points, 3);
  Eigen::VectorXd y(fine_points);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int k = 0; k < fine_points; ++k) {
    const double u = (fine.xs[k] - mid) / half;
    A(k, 0) = 1.0;
    A(k, 1) = u;
    A(k, 2) = u * u;
    y(k) = fine.fs[k];
  }
  const Eigen::Vector3d c = A.colPivHouseholderQr().solve(y);
  ScalarMinimum m{fine.xs[fine.best], fine.fs[fine.best], points + fine_points, false};
  if (c(2) > 0.0) {
    const double u = -c(1) / (2.0 * c(2));
    if (std::abs(u) <= 1.0) {
      m.x = mid + u * half;
      m.fx = c(0) + c(1) * u + c(2) * u * u;
      m.converged = true;
    }
  }
  return m;
}

struct SimplexMinimum {
  std::vector<double> x;
  double fx = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  bool converged = false;
};

// Nelder-Mead with the standard reflection, expansion, contraction and
// shrink coefficients (1, 2, 1/2, 1/2).
inline SimplexMinimum nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                  std::vector<double> x0, double step = 0.1, double tol = 1e-9,
                                  int max_evals = 2000) {
  const std::size_t n = x0.size();
  if (n == 0) throw ContractError("nelder_mead needs at least one parameter");
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) pts[k + 1][k] += step;
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t k = 0; k <= n; ++k) vals[k] = eval(pts[k]);

  auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = c[k] + t * (w[k] - c[k]);
    return r;
  };

  bool converged = false;
  while (evals < max_evals) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t k = 0; k <= n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= tol * (std::abs(vals[best]) + tol)) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[k][d] / double(n);

    const auto xr = combine(centroid, pts[worst], -1.0);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const auto xe = combine(centroid, pts[worst], -2.0);
      const double fe = eval(xe);
      if (fe < fr) pts[worst] = xe, vals[worst] = fe;
      else pts[worst] = xr, vals[worst] = fr;
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const auto xc = combine(centroid, pts[worst], 0.5);
      const double fc = eval(xc);
      if (fc < vals[worst]) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          pts[k] = combine(pts[best], pts[k], 0.5);
          vals[k] = eval(pts[k]);
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[std::size_t(it - vals.begin())], *it, evals, converged};
}

}  // namespace thirring

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

// Mass gap of the three-site lattice at bare mass 10: exact diagonalization
// next to first-order perturbation theory, then the coupling where the exact
// gap closes.

#include <cstdio>

#include "thirring/thirring.hpp"

int main() {
  using namespace thirring;
  const LatticeParams base{3, 10.0, 0.0, 0.7, false};
  const HamiltonianFamily family(base);

  std::printf("%6s %12s %12s %12s\n", "g2", "gap exact", "gap PT", "rel diff");
  for (double g2 : {0.0, 2.5, 5.0, 10.0, 15.0, 20.0}) {
    const double exact = mass_gap_detail(family, g2).gap;
    const double pt = pt_report(base.with_g2(g2)).gap;
    std::printf("%6.1f %12.6f %12.6f %12.2e\n", g2, exact, pt, std::abs(pt - exact) / std::abs(exact));
  }

  const double g2c = critical_coupling(family, default_g2_max(base.m0));
  std::printf("\nexact critical coupling  %.6f\n", g2c);
  std::printf("first-order estimate     %.6f\n", g2_crit_pt(base));
  std::printf("large-mass estimate      %.6f\n", g2_crit_large_mass(base.m0));
  return 0;
}

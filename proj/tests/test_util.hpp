// Copyright 2026 The expcomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures and independent oracles for the test suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "expcomp/core.hpp"
#include "expcomp/loss.hpp"
#include "expcomp/sampling.hpp"

namespace expcomp::testing {

inline LabeledSet binary() { return LabeledSet({"-1", "1"}); }

inline Transition bsc(double p) { return Transition::binary_symmetric(p); }

// Exhaustive search over deterministic rules of sum_theta prior(theta) *
// sum_z e(z|theta) L(theta, rule(z)). Independent of the reversal path.
inline double brute_force_min_bayes_risk(const LossMatrix& loss, const Transition& e,
                                         const Distribution& prior) {
  const std::size_t nz = e.target().size();
  const std::size_t na = loss.actions().size();
  std::vector<std::size_t> rule(nz, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    double r = 0.0;
    for (std::size_t t = 0; t < prior.size(); ++t)
      for (std::size_t z = 0; z < nz; ++z) r += prior[t] * e(z, t) * loss(t, rule[z]);
    best = std::min(best, r);
    std::size_t z = 0;
    while (z < nz && ++rule[z] == na) rule[z++] = 0;
    if (z == nz) break;
  }
  return best;
}

// Grid search over 2x2 column-stochastic F at the given step of
// sum_j prior_j * V(F e(j), e2(j)), V = half l1.
inline double grid_directed_deficiency(const Transition& e, const Transition& e2,
                                       const Distribution& prior, double step = 0.01) {
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      const double f00 = a * step, f01 = b * step;
      const double f[2][2] = {{f00, f01}, {1.0 - f00, 1.0 - f01}};
      double total = 0.0;
      for (std::size_t j = 0; j < 2; ++j) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
          const double fe = f[i][0] * e(0, j) + f[i][1] * e(1, j);
          l1 += std::abs(fe - e2(i, j));
        }
        total += prior[j] * 0.5 * l1;
      }
      best = std::min(best, total);
    }
  }
  return best;
}

// A loss whose every action is Bayes for some prior: the profiles are
// Bayes columns of a random base loss at random distributions.
inline LossMatrix random_proper_loss(sampling::Rng& rng, const LabeledSet& unknowns,
                                     std::size_t num_actions) {
  const LossMatrix base = sampling::random_loss(
      rng, unknowns, LabeledSet::numbered("b", num_actions + 3));
  Matrix m(unknowns.size(), num_actions);
  for (std::size_t a = 0; a < num_actions; ++a) {
    const Distribution q = sampling::random_distribution(rng, unknowns);
    const auto col = loss_from_entropy(base, q);
    for (std::size_t t = 0; t < unknowns.size(); ++t) m(t, a) = col[t];
  }
  return LossMatrix(unknowns, LabeledSet::numbered("a", num_actions), std::move(m));
}

}  // namespace expcomp::testing

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

#include "expcomp/sampling.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace expcomp::sampling {
namespace {

std::vector<double> dirichlet(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = exp1(rng) + 1e-12;
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Distribution random_distribution(Rng& rng, const LabeledSet& space) {
  return Distribution(space, dirichlet(rng, space.size()));
}

Transition random_transition(Rng& rng, const LabeledSet& source,
                             const LabeledSet& target) {
  Matrix m(target.size(), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    const std::vector<double> col = dirichlet(rng, target.size());
    for (std::size_t i = 0; i < target.size(); ++i) m(i, j) = col[i];
  }
  return Transition(source, target, std::move(m));
}

LossMatrix random_loss(Rng& rng, const LabeledSet& unknowns,
                       const LabeledSet& actions, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(unknowns.size(), actions.size());
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    for (std::size_t a = 0; a < actions.size(); ++a) m(i, a) = u(rng);
  return LossMatrix(unknowns, actions, std::move(m));
}

}  // namespace expcomp::sampling

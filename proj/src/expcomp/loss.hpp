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

// Loss matrices and the calculus of their entropies (Bayes risks):
// Bayes actions, super-gradients, the super prediction set and canonical
// coordinates.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expcomp/core.hpp"
#include "expcomp/matrix.hpp"

namespace expcomp {

// Absolute slack within which an action counts as Bayes.
inline constexpr double kActivityTol = 1e-9;

// Real |unknowns| x |actions| matrix; column a is the loss profile of a.
class LossMatrix {
 public:
  LossMatrix(LabeledSet unknowns, LabeledSet actions, Matrix values);

  // L(theta, a) = [theta != a] with actions labeled like the unknowns.
  static LossMatrix zero_one(const LabeledSet& unknowns);
  // -log Q(theta) over the interior grid of distributions with coordinates
  // in multiples of 1/resolution.
  static LossMatrix log_loss_grid(const LabeledSet& unknowns,
                                  std::size_t resolution = 64);

  const LabeledSet& unknowns() const { return unknowns_; }
  const LabeledSet& actions() const { return actions_; }
  const Matrix& values() const { return values_; }
  double operator()(std::size_t theta, std::size_t action) const {
    return values_(theta, action);
  }
  std::vector<double> profile(std::size_t action) const {
    return values_.column(action);
  }
  // max |L(theta, a)|
  double sup_norm() const;

 private:
  LabeledSet unknowns_;
  LabeledSet actions_;
  Matrix values_;
};

// Zero-sum coordinates v with psi(v) attached: v + psi * 1 is a super-gradient.
struct CanonicalPoint {
  std::vector<double> v;
  double psi = 0.0;
};

// <mu, L_a> for every action.
std::vector<double> expected_losses(const LossMatrix& loss,
                                    std::span<const double> weights);

// min_a <mu, L_a>.
double entropy(const LossMatrix& loss, const UnnormalizedMeasure& mu);

// Indices of actions within `tol` of the minimal expected loss, ascending.
std::vector<std::size_t> bayes_actions(const LossMatrix& loss,
                                       const Distribution& p,
                                       double tol = kActivityTol);
// Lowest-index Bayes action for arbitrary nonnegative weights.
std::size_t bayes_action(const LossMatrix& loss, std::span<const double> weights);

// v - mean(v).
std::vector<double> project_zero_sum(std::span<const double> v);

// min over the simplex of <P, zeta> - entropy(P), with a minimizer.
struct SimplexGap {
  double value = 0.0;
  std::vector<double> minimizer;
};
SimplexGap min_simplex_gap(const LossMatrix& loss, std::span<const double> zeta);

bool in_super_prediction_set(const LossMatrix& loss, std::span<const double> zeta);

bool is_supergradient(const LossMatrix& loss, std::span<const double> v,
                      const UnnormalizedMeasure& mu);

// Smallest gamma placing v + gamma * 1 in the super prediction set. Requires
// sum(v) = 0.
double psi(const LossMatrix& loss, std::span<const double> v);

CanonicalPoint canonical_point(const LossMatrix& loss, std::span<const double> v);

// v(theta) + psi(v).
double canonical_loss(const LossMatrix& loss, std::string_view theta,
                      std::span<const double> v);

// Loss profile of the lowest-index Bayes action at q; a proper scoring rule
// when read as a function of q.
std::vector<double> loss_from_entropy(const LossMatrix& loss, const Distribution& q);

// Checks <mu, L_a> = entropy(mu) for a Bayes a at mu, and that the same
// profile still certifies the entropy at 0.5 mu and 2 mu.
bool euler_check(const LossMatrix& loss, const UnnormalizedMeasure& mu);

// Replaces each profile by its canonical counterpart proj(L_a) + psi * 1.
// Admissible actions are unchanged; dominated ones are pulled down onto the
// lower boundary of the super prediction set.
LossMatrix canonicalize(const LossMatrix& loss);

}  // namespace expcomp

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

// Comparison of experiments: divisibility, sufficiency and Le Cam
// deficiency computed by linear programming, plus empirical checks of the
// randomization bound, the deficiency metric, and data processing for
// arbitrary risk functionals.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "expcomp/core.hpp"
#include "expcomp/lp.hpp"

namespace expcomp {

inline constexpr double kDivisibilityTol = 1e-7;

struct DeficiencyResult {
  // Prior-averaged variational distance, V = half the l1 distance.
  double value = 0.0;
  Transition witness;  // optimal post-processing, outcomes -> outcomes'
  lp::Status lp_status = lp::Status::kOptimal;
};

// min over Markov f of E_pi V(f(e(theta)), e2(theta)).
DeficiencyResult directed_deficiency(const Transition& e, const Transition& e2,
                                     const Distribution& prior);

// max of both directed deficiencies.
double deficiency(const Transition& e, const Transition& e2, const Distribution& prior);

struct Divisibility {
  bool divides = false;
  double deficiency = 0.0;  // directed, under the uniform prior
  std::optional<Transition> witness;
};

// Whether e2 = f o e for some Markov f, decided under the uniform prior.
Divisibility divides(const Transition& e, const Transition& e2,
                     double tol = kDivisibilityTol);

// Whether post-processing e by f loses nothing: deficiency(e, f o e) <= 1e-7.
bool is_sufficient(const Transition& e, const Transition& f, const Distribution& prior);

struct RandomizationReport {
  double epsilon = 0.0;     // directed deficiency e -> e2
  double deficiency = 0.0;  // symmetric
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // R(e) <= R(e2) + epsilon * |L|_inf + 1e-7
  std::size_t violations = 0;
  double max_violation = 0.0;
  // R(e) <= R(e2) + epsilon * (max L - min L) + 1e-7
  std::size_t oscillation_violations = 0;
  // max |R(e) - R(e2)| / |L|_inf over the samples
  double max_normalized_gap = 0.0;
  bool gap_within_deficiency = false;

  bool passed() const { return violations == 0 && gap_within_deficiency; }
};

// Samples `trials` losses with i.i.d. entries on [-1, 1] (2 to 4 actions)
// and compares minimum Bayes risks of e and e2 under the prior.
RandomizationReport randomization_check(const Transition& e, const Transition& e2,
                                        const Distribution& prior, std::size_t trials,
                                        std::uint64_t seed);

struct TriangleCheck {
  std::size_t first = 0, middle = 0, last = 0;
  double direct = 0.0;  // xi(first, last)
  double via = 0.0;     // xi(first, middle) + xi(middle, last)
  bool holds = false;
};

struct MetricReport {
  Matrix directed;  // directed(i, j) = xi(e_i, e_j)
  std::vector<TriangleCheck> triangles;
  bool self_distance_zero = false;
  bool symmetric = false;
  bool triangle_holds = false;

  bool passed() const { return self_distance_zero && symmetric && triangle_holds; }
};

MetricReport metric_check(std::span<const Transition> experiments,
                          const Distribution& prior);

// A real-valued functional of strategies theta -> action.
using StrategyFunctional = std::function<double(const Transition&)>;

struct DpiValues {
  double value_e = 0.0;
  double value_e2 = 0.0;
};

// Minimizes rho over the strategies reachable from e and from e2 = witness o e.
// e's candidates are its deterministic rules together with d' o witness for
// every deterministic rule d' of e2, so value_e <= value_e2 exactly.
DpiValues generalized_dpi(const StrategyFunctional& rho, const Transition& e,
                          const Transition& e2, const LabeledSet& actions,
                          const Transition& witness, std::size_t cap = 4096);

}  // namespace expcomp

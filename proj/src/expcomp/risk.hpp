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

// Risks of experiment/decision-rule pairs: profiles, Bayes and max risks,
// optimal rules through the Bayes reversal, minimax rules by linear
// programming, the canonical bias-variance split, and admissibility.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "expcomp/core.hpp"
#include "expcomp/loss.hpp"

namespace expcomp {

inline constexpr double kReversalCutoff = 1e-12;
inline constexpr double kAdmissibilityTol = 1e-7;
inline constexpr std::size_t kRuleEnumerationCap = 4096;

struct RiskProfile {
  LabeledSet unknowns;
  std::vector<double> values;
};

// Posterior of an experiment under a prior. Columns of `posterior` outside
// `support` are set to the prior itself; nothing is divided by a zero
// marginal.
struct BayesReversal {
  Distribution marginal;
  Transition posterior;
  std::vector<bool> support;
};

struct OptimalRule {
  double value = 0.0;
  Transition rule;
};

struct MinimaxSolution {
  double value = 0.0;
  Transition rule;
  Distribution least_favorable_prior;
};

struct BiasVariance {
  double bias = 0.0;
  double variance = 0.0;
};

struct RuleAssessment {
  std::vector<std::size_t> actions;  // chosen action index per outcome
  std::vector<double> profile;
  bool admissible = false;
  double domination_slack = 0.0;
  // Present when the rule is dominated.
  std::optional<Transition> dominated_by;
  std::optional<Distribution> supporting_prior;
};

struct CompleteClassReport {
  std::vector<RuleAssessment> rules;
  // Every admissible rule has a supporting prior.
  bool passed = false;
};

RiskProfile risk_profile(const LossMatrix& loss, const Transition& experiment,
                         const Transition& rule);

double bayes_risk(const LossMatrix& loss, const Transition& experiment,
                  const Transition& rule, const Distribution& prior);

double max_risk(const LossMatrix& loss, const Transition& experiment,
                const Transition& rule);

BayesReversal reverse(const Transition& experiment, const Distribution& prior,
                      double cutoff = kReversalCutoff);

// Deterministic map sending each outcome to its posterior under the prior;
// outcomes with equal posteriors share a label "post<k>". Outcomes outside the
// reversal support each keep a label of their own.
Transition posterior_statistic(const Transition& experiment, const Distribution& prior,
                               double cutoff = kReversalCutoff);

// Deterministic Bayes rule and its risk. Outcomes outside the support of the
// marginal get action 0.
OptimalRule min_bayes_risk(const LossMatrix& loss, const Transition& experiment,
                           const Distribution& prior);

MinimaxSolution minimax_risk(const LossMatrix& loss, const Transition& experiment);

// Requires a deterministic rule; ArgumentError otherwise.
BiasVariance bias_variance(const LossMatrix& loss, const Transition& experiment,
                           const Transition& rule, std::string_view theta);

// The Markov rule undercutting `rule`'s risk profile by the largest total
// slack; slack <= kAdmissibilityTol means `rule` is admissible.
struct Domination {
  double slack = 0.0;
  Transition improved;
};
Domination dominate(const LossMatrix& loss, const Transition& experiment,
                    const Transition& rule);

bool is_admissible(const LossMatrix& loss, const Transition& experiment,
                   const Transition& rule);

CompleteClassReport complete_class_check(const LossMatrix& loss,
                                         const Transition& experiment,
                                         std::size_t cap = kRuleEnumerationCap);

// 0/1 rule mapping outcome z to actions[z].
Transition deterministic_rule(const LabeledSet& outcomes, const LabeledSet& actions,
                              std::span<const std::size_t> choice);

// Every deterministic rule from `outcomes` to `actions`, first outcome most
// significant. ArgumentError when there are more than `cap`.
std::vector<std::vector<std::size_t>> enumerate_rules(std::size_t num_outcomes,
                                                      std::size_t num_actions,
                                                      std::size_t cap);

}  // namespace expcomp

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

#include "expcomp/risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "expcomp/errors.hpp"
#include "expcomp/lp.hpp"

namespace expcomp {
namespace {

// Minimizes s >= |pi_t - 1/nt| over the first nt variables.
void pull_towards_uniform(lp::ProgramBuilder& b, std::size_t nt, std::size_t s) {
  b.set_objective(s, 1.0);
  const double centre = 1.0 / static_cast<double>(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<double> above(b.num_variables(), 0.0), below(b.num_variables(), 0.0);
    above[t] = 1.0;
    above[s] = -1.0;
    below[t] = -1.0;
    below[s] = -1.0;
    b.add_ub(std::move(above), centre);
    b.add_ub(std::move(below), -centre);
  }
}

void check_experiment(const LossMatrix& loss, const Transition& experiment) {
  if (!(experiment.source() == loss.unknowns())) {
    throw ShapeError("experiment source does not match the loss unknowns");
  }
}

void check_rule(const LossMatrix& loss, const Transition& experiment,
                const Transition& rule) {
  check_experiment(loss, experiment);
  if (!(rule.source() == experiment.target())) {
    throw ShapeError("rule source does not match the experiment outcomes");
  }
  if (!(rule.target() == loss.actions())) {
    throw ShapeError("rule target does not match the loss actions");
  }
}

// Per-theta risk of the rule given as dense weights d[z * |A| + a].
std::vector<double> risk_row(const LossMatrix& loss, const Transition& experiment,
                             std::size_t theta) {
  const std::size_t na = loss.actions().size();
  std::vector<double> row(experiment.target().size() * na, 0.0);
  for (std::size_t z = 0; z < experiment.target().size(); ++z) {
    const double ez = experiment(z, theta);
    for (std::size_t a = 0; a < na; ++a) row[z * na + a] = ez * loss(theta, a);
  }
  return row;
}

// Markov rule variables d(a|z) laid out z-major, plus `extra` trailing
// variables. Adds the simplex constraints for every outcome.
lp::ProgramBuilder rule_program(std::size_t outcomes, std::size_t actions,
                                std::size_t extra) {
  lp::ProgramBuilder b(outcomes * actions + extra);
  for (std::size_t z = 0; z < outcomes; ++z) {
    std::vector<double> row(outcomes * actions + extra, 0.0);
    for (std::size_t a = 0; a < actions; ++a) row[z * actions + a] = 1.0;
    b.add_eq(std::move(row), 1.0);
  }
  return b;
}

Transition rule_from_primal(const LabeledSet& outcomes, const LabeledSet& actions,
                            std::span<const double> x) {
  Matrix m(actions.size(), outcomes.size());
  for (std::size_t z = 0; z < outcomes.size(); ++z) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      m(a, z) = x[z * actions.size() + a];
    }
  }
  return Transition(outcomes, actions, std::move(m), lp::kFeasibilityTol);
}

}  // namespace

RiskProfile risk_profile(const LossMatrix& loss, const Transition& experiment,
                         const Transition& rule) {
  check_rule(loss, experiment, rule);
  const Transition strategy = compose(rule, experiment);
  RiskProfile out{loss.unknowns(), std::vector<double>(loss.unknowns().size(), 0.0)};
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    double s = 0.0;
    for (std::size_t a = 0; a < loss.actions().size(); ++a) {
      s += strategy(a, t) * loss(t, a);
    }
    out.values[t] = s;
  }
  return out;
}

double bayes_risk(const LossMatrix& loss, const Transition& experiment,
                  const Transition& rule, const Distribution& prior) {
  if (!(prior.space() == loss.unknowns())) {
    throw ShapeError("prior space does not match the loss unknowns");
  }
  return expect(prior, risk_profile(loss, experiment, rule).values);
}

double max_risk(const LossMatrix& loss, const Transition& experiment,
                const Transition& rule) {
  const auto p = risk_profile(loss, experiment, rule);
  return *std::max_element(p.values.begin(), p.values.end());
}

BayesReversal reverse(const Transition& experiment, const Distribution& prior,
                      double cutoff) {
  if (!(prior.space() == experiment.source())) {
    throw ShapeError("prior space does not match the experiment source");
  }
  const std::size_t nt = experiment.source().size();
  const std::size_t nz = experiment.target().size();
  std::vector<double> marginal = multiply(experiment.matrix(), prior.weights());
  Matrix posterior(nt, nz);
  std::vector<bool> support(nz, false);
  for (std::size_t z = 0; z < nz; ++z) {
    if (marginal[z] > cutoff) {
      support[z] = true;
      for (std::size_t t = 0; t < nt; ++t) {
        posterior(t, z) = experiment(z, t) * prior[t] / marginal[z];
      }
    } else {
      for (std::size_t t = 0; t < nt; ++t) posterior(t, z) = prior[t];
    }
  }
  return {Distribution(experiment.target(), std::move(marginal)),
          Transition(experiment.target(), experiment.source(), std::move(posterior)),
          std::move(support)};
}

Transition posterior_statistic(const Transition& experiment, const Distribution& prior,
                               double cutoff) {
  const BayesReversal rev = reverse(experiment, prior, cutoff);
  const std::size_t nt = experiment.source().size();
  const std::size_t nz = experiment.target().size();
  std::vector<std::vector<double>> seen;
  std::vector<std::size_t> cls(nz);
  std::vector<std::string> labels;
  for (std::size_t z = 0; z < nz; ++z) {
    const std::vector<double> post = rev.posterior.matrix().column(z);
    std::size_t k = seen.size();
    if (rev.support[z]) {
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i].empty()) continue;
        double gap = 0.0;
        for (std::size_t t = 0; t < nt; ++t) gap = std::max(gap, std::abs(seen[i][t] - post[t]));
        if (gap <= kStochasticTol) {
          k = i;
          break;
        }
      }
    }
    if (k == seen.size()) {
      // Outcomes the prior never produces stay apart from everything else.
      seen.push_back(rev.support[z] ? post : std::vector<double>{});
      labels.push_back("post" + std::to_string(k));
    }
    cls[z] = k;
  }
  Matrix m(labels.size(), nz);
  for (std::size_t z = 0; z < nz; ++z) m(cls[z], z) = 1.0;
  return Transition(experiment.target(), LabeledSet(std::move(labels)), std::move(m));
}

OptimalRule min_bayes_risk(const LossMatrix& loss, const Transition& experiment,
                           const Distribution& prior) {
  check_experiment(loss, experiment);
  const BayesReversal rev = reverse(experiment, prior);
  const std::size_t nz = experiment.target().size();
  std::vector<std::size_t> choice(nz, 0);
  double value = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    if (!rev.support[z]) continue;
    const std::vector<double> post = rev.posterior.matrix().column(z);
    const std::vector<double> e = expected_losses(loss, post);
    const auto best = std::min_element(e.begin(), e.end());
    choice[z] = static_cast<std::size_t>(best - e.begin());
    value += rev.marginal[z] * *best;
  }
  return {value, deterministic_rule(experiment.target(), loss.actions(), choice)};
}

MinimaxSolution minimax_risk(const LossMatrix& loss, const Transition& experiment) {
  check_experiment(loss, experiment);
  const std::size_t nt = loss.unknowns().size();
  const std::size_t nz = experiment.target().size();
  const std::size_t na = loss.actions().size();
  const std::size_t t_var = nz * na;

  lp::ProgramBuilder b = rule_program(nz, na, 1);
  b.set_objective(t_var, 1.0);
  b.set_free(t_var);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<double> row = risk_row(loss, experiment, t);
    row.push_back(-1.0);
    b.add_ub(std::move(row), 0.0);
  }
  const lp::LPResult r = lp::solve(b.build());
  if (!r.optimal()) {
    throw SolverError("minimax program ended " + std::string(lp::to_string(r.status)));
  }

  // Duals of the theta rows are <= 0 and sum to -1 by dual feasibility of t.
  std::vector<double> prior(nt);
  double total = 0.0;
  for (std::size_t t = 0; t < nt; ++t) {
    prior[t] = std::max(0.0, -r.ub_duals[t]);
    total += prior[t];
  }
  if (total <= 0.0) throw SolverError("minimax duals are degenerate");
  for (double& p : prior) p /= total;

  // The optimal prior is often not unique; settle on the one nearest uniform.
  // Variables: pi (nt), y (nz, free), s.
  const std::size_t n = nt + nz + 1;
  lp::ProgramBuilder c(n);
  for (std::size_t z = 0; z < nz; ++z) c.set_free(nt + z);
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t a = 0; a < na; ++a) {
      std::vector<double> row(n, 0.0);
      row[nt + z] = 1.0;
      for (std::size_t t = 0; t < nt; ++t) row[t] = -experiment(z, t) * loss(t, a);
      c.add_ub(std::move(row), 0.0);
    }
  }
  std::vector<double> simplex(n, 0.0);
  for (std::size_t t = 0; t < nt; ++t) simplex[t] = 1.0;
  c.add_eq(std::move(simplex), 1.0);
  std::vector<double> floor(n, 0.0);
  for (std::size_t z = 0; z < nz; ++z) floor[nt + z] = -1.0;
  c.add_ub(std::move(floor), -(r.value - kActivityTol));
  pull_towards_uniform(c, nt, n - 1);
  const lp::LPResult central = lp::solve(c.build());
  if (central.optimal()) {
    total = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      prior[t] = std::max(0.0, central.primal[t]);
      total += prior[t];
    }
    for (double& p : prior) p /= total;
  }

  return {r.value, rule_from_primal(experiment.target(), loss.actions(), r.primal),
          Distribution(loss.unknowns(), std::move(prior), lp::kFeasibilityTol)};
}

BiasVariance bias_variance(const LossMatrix& loss, const Transition& experiment,
                           const Transition& rule, std::string_view theta) {
  check_rule(loss, experiment, rule);
  const std::size_t t = loss.unknowns().index_of(theta);
  const std::size_t nz = experiment.target().size();
  const std::size_t nt = loss.unknowns().size();

  std::vector<std::size_t> choice(nz);
  for (std::size_t z = 0; z < nz; ++z) {
    std::size_t picked = loss.actions().size();
    for (std::size_t a = 0; a < loss.actions().size(); ++a) {
      if (rule(a, z) >= 1.0 - kStochasticTol) picked = a;
    }
    if (picked == loss.actions().size()) {
      throw ArgumentError("bias-variance needs a deterministic rule; outcome '" +
                          experiment.target().label(z) + "' is randomized");
    }
    choice[z] = picked;
  }

  std::vector<double> mean_action(nt, 0.0);
  double expected_psi = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    const double w = experiment(z, t);
    if (w == 0.0) continue;
    const std::vector<double> v = project_zero_sum(loss.profile(choice[z]));
    for (std::size_t i = 0; i < nt; ++i) mean_action[i] += w * v[i];
    expected_psi += w * psi(loss, v);
  }
  // Re-center against rounding so psi accepts it.
  mean_action = project_zero_sum(mean_action);
  const double psi_mean = psi(loss, mean_action);
  return {mean_action[t] + psi_mean, expected_psi - psi_mean};
}

Domination dominate(const LossMatrix& loss, const Transition& experiment,
                    const Transition& rule) {
  const RiskProfile current = risk_profile(loss, experiment, rule);
  const std::size_t nt = loss.unknowns().size();
  const std::size_t nz = experiment.target().size();
  const std::size_t na = loss.actions().size();
  const std::size_t first_slack = nz * na;

  lp::ProgramBuilder b = rule_program(nz, na, nt);
  for (std::size_t t = 0; t < nt; ++t) {
    b.set_objective(first_slack + t, -1.0);
    std::vector<double> row = risk_row(loss, experiment, t);
    row.resize(nz * na + nt, 0.0);
    row[first_slack + t] = 1.0;
    b.add_ub(std::move(row), current.values[t]);
  }
  const lp::LPResult r = lp::solve(b.build());
  if (!r.optimal()) {
    throw SolverError("admissibility program ended " +
                      std::string(lp::to_string(r.status)));
  }
  return {-r.value, rule_from_primal(experiment.target(), loss.actions(), r.primal)};
}

bool is_admissible(const LossMatrix& loss, const Transition& experiment,
                   const Transition& rule) {
  return dominate(loss, experiment, rule).slack <= kAdmissibilityTol;
}

CompleteClassReport complete_class_check(const LossMatrix& loss,
                                         const Transition& experiment,
                                         std::size_t cap) {
  check_experiment(loss, experiment);
  const std::size_t nt = loss.unknowns().size();
  const auto choices =
      enumerate_rules(experiment.target().size(), loss.actions().size(), cap);

  CompleteClassReport report;
  std::vector<std::vector<double>> profiles;
  for (const auto& choice : choices) {
    const Transition rule =
        deterministic_rule(experiment.target(), loss.actions(), choice);
    RuleAssessment ra;
    ra.actions = choice;
    ra.profile = risk_profile(loss, experiment, rule).values;
    Domination dom = dominate(loss, experiment, rule);
    ra.domination_slack = dom.slack;
    ra.admissible = dom.slack <= kAdmissibilityTol;
    if (!ra.admissible) ra.dominated_by = std::move(dom.improved);
    profiles.push_back(ra.profile);
    report.rules.push_back(std::move(ra));
  }

  // A supporting prior pi satisfies <pi, r_d - r_d'> <= 0 for every d'.
  for (std::size_t i = 0; i < report.rules.size(); ++i) {
    // Among supporting priors, the one nearest uniform.
    lp::ProgramBuilder b(nt + 1);
    std::vector<double> simplex(nt + 1, 1.0);
    simplex[nt] = 0.0;
    b.add_eq(std::move(simplex), 1.0);
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      if (j == i) continue;
      std::vector<double> row(nt + 1, 0.0);
      for (std::size_t t = 0; t < nt; ++t) row[t] = profiles[i][t] - profiles[j][t];
      b.add_ub(std::move(row), kStochasticTol);
    }
    pull_towards_uniform(b, nt, nt);
    const lp::LPResult r = lp::solve(b.build());
    if (r.optimal()) {
      std::vector<double> prior(r.primal.begin(), r.primal.begin() + nt);
      report.rules[i].supporting_prior =
          Distribution(loss.unknowns(), std::move(prior), lp::kFeasibilityTol);
    }
  }

  report.passed = std::all_of(report.rules.begin(), report.rules.end(),
                              [](const RuleAssessment& ra) {
                                return !ra.admissible || ra.supporting_prior;
                              });
  return report;
}

Transition deterministic_rule(const LabeledSet& outcomes, const LabeledSet& actions,
                              std::span<const std::size_t> choice) {
  if (choice.size() != outcomes.size()) {
    throw ShapeError("rule needs one action per outcome");
  }
  Matrix m(actions.size(), outcomes.size());
  for (std::size_t z = 0; z < outcomes.size(); ++z) {
    if (choice[z] >= actions.size()) throw ArgumentError("action index out of range");
    m(choice[z], z) = 1.0;
  }
  return Transition(outcomes, actions, std::move(m));
}

std::vector<std::vector<std::size_t>> enumerate_rules(std::size_t num_outcomes,
                                                      std::size_t num_actions,
                                                      std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t z = 0; z < num_outcomes; ++z) {
    if (count > cap / num_actions) {
      throw ArgumentError("more than " + std::to_string(cap) +
                          " deterministic rules to enumerate");
    }
    count *= num_actions;
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(count);
  std::vector<std::size_t> digits(num_outcomes, 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(digits);
    for (std::size_t z = num_outcomes; z-- > 0;) {
      if (++digits[z] < num_actions) break;
      digits[z] = 0;
    }
  }
  return out;
}

}  // namespace expcomp

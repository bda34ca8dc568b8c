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

// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "expcomp/compare.hpp"
#include "expcomp/divergence.hpp"
#include "expcomp/loss.hpp"
#include "expcomp/risk.hpp"
#include "expcomp/sampling.hpp"
#include "test_util.hpp"

namespace expcomp {
namespace {

using testing::binary;
using testing::bsc;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

LabeledSet unknowns(sampling::Rng& rng, std::size_t lo, std::size_t hi) {
  return LabeledSet::numbered("t", sampling::uniform_index(rng, lo, hi));
}

Outcome deficiency_vs_grid() {
  sampling::Rng rng(101);
  const auto uniform = Distribution::uniform(binary());
  const auto omega = LabeledSet::numbered("z", 2);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto e = sampling::random_transition(rng, binary(), omega);
    const auto e2 = sampling::random_transition(rng, binary(), omega);
    const double lp = directed_deficiency(e, e2, uniform).value;
    worst = std::max(worst, std::abs(lp - testing::grid_directed_deficiency(e, e2, uniform)));
  }
  return {worst <= 1e-2, fmt("max |LP - grid| = %.3g over 20 pairs (tol 1e-2)", worst)};
}

Outcome divisibility_fixture() {
  const auto d = divides(bsc(0.1), bsc(0.3));
  double err = 1.0;
  if (d.witness) err = compose(*d.witness, bsc(0.1)).matrix().max_abs_diff(bsc(0.3).matrix());
  const auto back = divides(bsc(0.3), bsc(0.1));
  const bool pass = d.divides && err <= 1e-6 && !back.divides && back.deficiency >= 0.05;
  return {pass, fmt("forward divides, |F e - e'| = %.3g; backward deficiency = %.6g", err,
                    back.deficiency)};
}

Outcome terminal_vs_identity() {
  const auto uniform = Distribution::uniform(binary());
  const double lp =
      directed_deficiency(Transition::terminal(binary()), Transition::identity(binary()), uniform)
          .value;
  // f o terminal is a constant distribution q; scan q on a 0.01 grid.
  double grid = 1.0;
  for (int k = 0; k <= 100; ++k) {
    const double q = k / 100.0;
    const double v0 = 0.5 * (std::abs(q - 1.0) + std::abs(1.0 - q - 0.0));
    const double v1 = 0.5 * (std::abs(q - 0.0) + std::abs(1.0 - q - 1.0));
    grid = std::min(grid, 0.5 * v0 + 0.5 * v1);
  }
  return {std::abs(lp - 0.5) <= 1e-6 && std::abs(grid - 0.5) <= 1e-6,
          fmt("LP = %.12g, grid oracle = %.12g", lp, grid)};
}

Outcome randomization_theorem() {
  sampling::Rng rng(104);
  std::size_t violations = 0, gap_failures = 0, osc_violations = 0;
  double worst_excess = 0.0, worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto theta = unknowns(rng, 2, 4);
    const auto e = sampling::random_transition(
        rng, theta, LabeledSet::numbered("z", sampling::uniform_index(rng, 1, 4)));
    const auto e2 = sampling::random_transition(
        rng, theta, LabeledSet::numbered("y", sampling::uniform_index(rng, 1, 4)));
    const auto prior = sampling::random_distribution(rng, theta);
    const auto rep = randomization_check(e, e2, prior, 50, 1000 + i);
    violations += rep.violations;
    osc_violations += rep.oscillation_violations;
    worst_excess = std::max(worst_excess, rep.max_violation);
    if (!rep.gap_within_deficiency) ++gap_failures;
    if (rep.deficiency > 0) worst_ratio = std::max(worst_ratio, rep.max_normalized_gap / rep.deficiency);
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%zu of 10000 losses break R(e) <= R(e') + xi*|L|inf (worst excess %.3g); "
                "%zu of 200 instances have gap/|L|inf > Xi (worst gap/Xi %.3g); "
                "oscillation form xi*(max L - min L): %zu breaks",
                violations, worst_excess, gap_failures, worst_ratio, osc_violations);
  return {violations == 0 && gap_failures == 0, buf};
}

Outcome minimax_equals_bayes() {
  sampling::Rng rng(105);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto theta = unknowns(rng, 2, 4);
    const auto e = sampling::random_transition(
        rng, theta, LabeledSet::numbered("z", sampling::uniform_index(rng, 1, 4)));
    const auto loss = sampling::random_loss(
        rng, theta, LabeledSet::numbered("a", sampling::uniform_index(rng, 2, 4)));
    const auto s = minimax_risk(loss, e);
    worst = std::max(worst,
                     std::abs(s.value - min_bayes_risk(loss, e, s.least_favorable_prior).value));
  }
  return {worst <= 1e-6, fmt("max |minimax - Bayes at prior| = %.3g (tol 1e-6)", worst)};
}

Outcome bias_variance_identity() {
  sampling::Rng rng(106);
  double worst = 0.0, lowest = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto theta = unknowns(rng, 2, 4);
    const auto omega = LabeledSet::numbered("z", sampling::uniform_index(rng, 1, 4));
    const std::size_t na = sampling::uniform_index(rng, 2, 4);
    const auto loss = testing::random_proper_loss(rng, theta, na);
    const auto e = sampling::random_transition(rng, theta, omega);
    std::vector<std::size_t> choice(omega.size());
    for (auto& c : choice) c = sampling::uniform_index(rng, 0, na - 1);
    const auto d = deterministic_rule(omega, loss.actions(), choice);
    const std::size_t t = sampling::uniform_index(rng, 0, theta.size() - 1);
    const auto bv = bias_variance(loss, e, d, theta.label(t));
    worst = std::max(worst, std::abs(bv.bias + bv.variance - risk_profile(loss, e, d).values[t]));
    lowest = std::min(lowest, bv.variance);
  }
  return {worst <= 1e-7 && lowest >= -1e-9,
          fmt("max |bias + variance - risk| = %.3g, min variance = %.3g", worst, lowest)};
}

Outcome euler_homogeneity() {
  sampling::Rng rng(107);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  double worst_pair = 0.0, worst_rel = 0.0;
  bool all = true;
  for (int i = 0; i < 200; ++i) {
    const auto theta = unknowns(rng, 2, 5);
    const auto loss = sampling::random_loss(
        rng, theta, LabeledSet::numbered("a", sampling::uniform_index(rng, 1, 5)));
    const auto mu = UnnormalizedMeasure(sampling::random_distribution(rng, theta))
                        .scaled(scale(rng));
    const double h = entropy(loss, mu);
    const auto col = loss.profile(bayes_action(loss, mu.weights()));
    double pair = 0.0;
    for (std::size_t t = 0; t < theta.size(); ++t) pair += mu.weights()[t] * col[t];
    worst_pair = std::max(worst_pair, std::abs(pair - h));
    const double h2 = entropy(loss, mu.scaled(2.0));
    worst_rel = std::max(worst_rel, std::abs(h2 - 2.0 * h) / std::max(std::abs(2.0 * h), 1e-300));
    all = all && euler_check(loss, mu);
  }
  return {worst_pair <= 1e-9 && worst_rel <= 1e-12 && all,
          fmt("max |<mu, L_a> - Lbar(mu)| = %.3g, max relative homogeneity error = %.3g",
              worst_pair, worst_rel)};
}

Outcome classical_values() {
  const auto uniform = Distribution::uniform(binary());
  const auto zero_one = LossMatrix::zero_one(binary());
  const double r = min_bayes_risk(zero_one, bsc(0.1), uniform).value;
  const double brute = testing::brute_force_min_bayes_risk(zero_one, bsc(0.1), uniform);
  const double mi = mutual_information(bsc(0.1), uniform);
  sampling::Rng rng(108);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto theta = unknowns(rng, 2, 5);
    const auto loss = sampling::random_loss(
        rng, theta, LabeledSet::numbered("a", sampling::uniform_index(rng, 1, 5)));
    const auto prior = sampling::random_distribution(rng, theta);
    worst = std::max(worst, std::abs(min_bayes_risk(loss, Transition::terminal(theta), prior).value -
                                     entropy(loss, prior)));
  }
  const bool pass = r == brute && std::abs(r - 0.1) <= 1e-15 && std::abs(mi - 0.368064) <= 1e-4 &&
                    worst <= 1e-12;
  return {pass, fmt("min Bayes risk = %.17g, I = %.9g nats, max |R(terminal) - Lbar| = %.3g", r,
                    mi, worst)};
}

Outcome metric_property() {
  sampling::Rng rng(109);
  std::size_t failures = 0;
  double worst_self = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto theta = unknowns(rng, 2, 4);
    std::vector<Transition> es;
    for (int k = 0; k < 3; ++k) {
      es.push_back(sampling::random_transition(
          rng, theta, LabeledSet::numbered("z", sampling::uniform_index(rng, 1, 4))));
    }
    const auto rep = metric_check(es, sampling::random_distribution(rng, theta));
    if (!rep.passed()) ++failures;
    for (std::size_t k = 0; k < 3; ++k)
      worst_self = std::max(worst_self,
                            deficiency(es[k], es[k], Distribution::uniform(theta)));
  }
  return {failures == 0 && worst_self <= 1e-7,
          fmt("%g of 10 triples fail; max Xi(e, e) = %.3g", static_cast<double>(failures),
              worst_self)};
}

Outcome dpi_suites() {
  std::string detail;
  bool pass = true;
  const std::vector<std::pair<DpiKind, PhiSpec>> kinds{
      {DpiKind::kVariational, PhiSpec::kl()},
      {DpiKind::kPhi, PhiSpec::kl()},
      {DpiKind::kMutualInformation, PhiSpec::kl()},
      {DpiKind::kRiskGap, PhiSpec::kl()}};
  for (const auto& [kind, phi] : kinds) {
    const auto rep = dpi_check(kind, 500, 110, phi);
    pass = pass && rep.violations == 0;
    if (!detail.empty()) detail += ", ";
    detail += std::string(kind == DpiKind::kPhi ? "kl" : to_string(kind)) + " " +
              std::to_string(rep.violations);
  }
  return {pass, "violations per 500 trials: " + detail};
}

Outcome complete_class() {
  sampling::Rng rng(111);
  const auto theta = LabeledSet::numbered("t", 2);
  const auto omega = LabeledSet::numbered("z", 2);
  const auto actions = LabeledSet::numbered("a", 2);
  std::size_t admissible = 0, supported = 0, unsupported = 0, confirmed = 0;
  for (int i = 0; i < 10; ++i) {
    const auto e = sampling::random_transition(rng, theta, omega);
    const auto loss = sampling::random_loss(rng, theta, actions);
    const auto rep = complete_class_check(loss, e);
    for (const auto& r : rep.rules) {
      if (r.admissible) {
        ++admissible;
        if (r.supporting_prior) ++supported;
      }
      if (r.supporting_prior) continue;
      ++unsupported;
      if (r.admissible || !r.dominated_by) continue;
      // Check the domination independently of the solver's slack.
      const auto better = risk_profile(loss, e, *r.dominated_by).values;
      bool weakly = true, strictly = false;
      for (std::size_t t = 0; t < better.size(); ++t) {
        weakly = weakly && better[t] <= r.profile[t] + 1e-9;
        strictly = strictly || better[t] < r.profile[t] - 1e-9;
      }
      if (weakly && strictly) ++confirmed;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu admissible rules supported; %zu/%zu unsupported rules confirmed dominated",
                supported, admissible, confirmed, unsupported);
  return {supported == admissible && confirmed == unsupported, buf};
}

Outcome reversal_sufficiency() {
  sampling::Rng rng(112);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto theta = unknowns(rng, 2, 4);
    const auto e = sampling::random_transition(
        rng, theta, LabeledSet::numbered("z", sampling::uniform_index(rng, 1, 4)));
    const auto prior = sampling::random_distribution(rng, theta);
    const auto loss = sampling::random_loss(
        rng, theta, LabeledSet::numbered("a", sampling::uniform_index(rng, 2, 4)));
    const auto through = compose(posterior_statistic(e, prior), e);
    worst = std::max(worst, std::abs(min_bayes_risk(loss, through, prior).value -
                                     min_bayes_risk(loss, e, prior).value));
  }
  return {worst <= 1e-7, fmt("max |R(posterior o e) - R(e)| = %.3g (tol 1e-7)", worst)};
}

}  // namespace
}  // namespace expcomp

int main() {
  using namespace expcomp;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"deficiency LP vs grid search", deficiency_vs_grid},
      {"divisibility of binary symmetric channels", divisibility_fixture},
      {"terminal vs identity deficiency", terminal_vs_identity},
      {"randomization bound", randomization_theorem},
      {"minimax equals Bayes risk at least favorable prior", minimax_equals_bayes},
      {"bias-variance decomposition", bias_variance_identity},
      {"Euler identity and homogeneity", euler_homogeneity},
      {"classical values", classical_values},
      {"deficiency metric", metric_property},
      {"data processing suites", dpi_suites},
      {"complete class", complete_class},
      {"sufficiency of the posterior", reversal_sufficiency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

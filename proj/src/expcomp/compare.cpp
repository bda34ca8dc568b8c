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

#include "expcomp/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "expcomp/errors.hpp"
#include "expcomp/loss.hpp"
#include "expcomp/risk.hpp"
#include "expcomp/sampling.hpp"

namespace expcomp {
namespace {

void check_same_source(const Transition& e, const Transition& e2) {
  if (!(e.source() == e2.source())) {
    throw ShapeError("experiments must share the same unknowns");
  }
}

}  // namespace

DeficiencyResult directed_deficiency(const Transition& e, const Transition& e2,
                                     const Distribution& prior) {
  check_same_source(e, e2);
  if (!(prior.space() == e.source())) {
    throw ShapeError("prior space does not match the experiments' unknowns");
  }
  const std::size_t nt = e.source().size();
  const std::size_t n1 = e.target().size();
  const std::size_t n2 = e2.target().size();
  const std::size_t nf = n2 * n1;
  const std::size_t nvars = nf + n2 * nt;
  auto f_var = [n1](std::size_t i, std::size_t k) { return i * n1 + k; };
  auto m_var = [nf, nt](std::size_t i, std::size_t j) { return nf + i * nt + j; };

  // Variables F_ik (column-stochastic, outcomes -> outcomes') and M_ij with
  //   -M_ij <= pi_j E2_ij - pi_j [F E]_ij <= M_ij.
  lp::ProgramBuilder b(nvars);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < nt; ++j) b.set_objective(m_var(i, j), 1.0);

  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const double pj = prior[j];
      std::vector<double> upper(nvars, 0.0);
      std::vector<double> lower(nvars, 0.0);
      for (std::size_t k = 0; k < n1; ++k) {
        upper[f_var(i, k)] = -pj * e(k, j);
        lower[f_var(i, k)] = pj * e(k, j);
      }
      upper[m_var(i, j)] = -1.0;
      lower[m_var(i, j)] = -1.0;
      b.add_ub(std::move(upper), -pj * e2(i, j));
      b.add_ub(std::move(lower), pj * e2(i, j));
    }
  }
  for (std::size_t k = 0; k < n1; ++k) {
    std::vector<double> row(nvars, 0.0);
    for (std::size_t i = 0; i < n2; ++i) row[f_var(i, k)] = 1.0;
    b.add_eq(std::move(row), 1.0);
  }

  const lp::LPResult r = lp::solve(b.build());
  if (!r.optimal()) {
    throw SolverError("deficiency program ended " + std::string(lp::to_string(r.status)));
  }
  Matrix f(n2, n1);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t k = 0; k < n1; ++k) f(i, k) = r.primal[f_var(i, k)];
  // The program's objective is the prior-weighted l1 gap; V carries a half.
  return {std::max(0.0, 0.5 * r.value),
          Transition(e.target(), e2.target(), std::move(f), lp::kFeasibilityTol),
          r.status};
}

double deficiency(const Transition& e, const Transition& e2, const Distribution& prior) {
  return std::max(directed_deficiency(e, e2, prior).value,
                  directed_deficiency(e2, e, prior).value);
}

Divisibility divides(const Transition& e, const Transition& e2, double tol) {
  DeficiencyResult r = directed_deficiency(e, e2, Distribution::uniform(e.source()));
  Divisibility out;
  out.deficiency = r.value;
  out.divides = r.value <= tol;
  if (out.divides) out.witness = std::move(r.witness);
  return out;
}

bool is_sufficient(const Transition& e, const Transition& f, const Distribution& prior) {
  return deficiency(e, compose(f, e), prior) <= kDivisibilityTol;
}

RandomizationReport randomization_check(const Transition& e, const Transition& e2,
                                        const Distribution& prior, std::size_t trials,
                                        std::uint64_t seed) {
  check_same_source(e, e2);
  RandomizationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.epsilon = directed_deficiency(e, e2, prior).value;
  rep.deficiency = std::max(rep.epsilon, directed_deficiency(e2, e, prior).value);

  sampling::Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const LabeledSet actions =
        LabeledSet::numbered("a", sampling::uniform_index(rng, 2, 4));
    const LossMatrix loss = sampling::random_loss(rng, e.source(), actions);
    const double norm = loss.sup_norm();
    if (norm == 0.0) continue;
    const auto [lo, hi] = std::minmax_element(loss.values().data().begin(),
                                              loss.values().data().end());
    const double risk_e = min_bayes_risk(loss, e, prior).value;
    const double risk_e2 = min_bayes_risk(loss, e2, prior).value;

    const double excess = risk_e - risk_e2 - rep.epsilon * norm;
    if (excess > lp::kFeasibilityTol) {
      ++rep.violations;
      rep.max_violation = std::max(rep.max_violation, excess);
    }
    if (risk_e - risk_e2 - rep.epsilon * (*hi - *lo) > lp::kFeasibilityTol) {
      ++rep.oscillation_violations;
    }
    rep.max_normalized_gap =
        std::max(rep.max_normalized_gap, std::abs(risk_e - risk_e2) / norm);
  }
  rep.gap_within_deficiency =
      rep.max_normalized_gap <= rep.deficiency + lp::kFeasibilityTol;
  return rep;
}

MetricReport metric_check(std::span<const Transition> experiments,
                          const Distribution& prior) {
  const std::size_t n = experiments.size();
  if (n == 0) throw ArgumentError("metric check needs at least one experiment");
  MetricReport rep;
  rep.directed = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rep.directed(i, j) = directed_deficiency(experiments[i], experiments[j], prior).value;

  rep.self_distance_zero = true;
  rep.symmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.directed(i, i) > kDivisibilityTol) rep.self_distance_zero = false;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::max(rep.directed(i, j), rep.directed(j, i));
      const double b = std::max(rep.directed(j, i), rep.directed(i, j));
      if (a != b) rep.symmetric = false;
    }
  }
  rep.triangle_holds = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        TriangleCheck t{i, j, k, rep.directed(i, k),
                        rep.directed(i, j) + rep.directed(j, k), false};
        t.holds = t.direct <= t.via + kDivisibilityTol;
        if (!t.holds) rep.triangle_holds = false;
        rep.triangles.push_back(t);
      }
  return rep;
}

DpiValues generalized_dpi(const StrategyFunctional& rho, const Transition& e,
                          const Transition& e2, const LabeledSet& actions,
                          const Transition& witness, std::size_t cap) {
  check_same_source(e, e2);
  if (!(witness.source() == e.target()) || !(witness.target() == e2.target())) {
    throw ArgumentError("witness must map the outcomes of e to those of e2");
  }
  if (compose(witness, e).matrix().max_abs_diff(e2.matrix()) > kDivisibilityTol) {
    throw ArgumentError("witness does not factor e2 through e");
  }
  const auto rules_e = enumerate_rules(e.target().size(), actions.size(), cap);
  const auto rules_e2 = enumerate_rules(e2.target().size(), actions.size(), cap);

  DpiValues out{std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
  for (const auto& choice : rules_e) {
    const Transition d = deterministic_rule(e.target(), actions, choice);
    out.value_e = std::min(out.value_e, rho(compose(d, e)));
  }
  for (const auto& choice : rules_e2) {
    const Transition d2 = deterministic_rule(e2.target(), actions, choice);
    const double v2 = rho(compose(d2, e2));
    out.value_e2 = std::min(out.value_e2, v2);
    out.value_e = std::min(out.value_e, rho(compose(compose(d2, witness), e)));
  }
  return out;
}

}  // namespace expcomp

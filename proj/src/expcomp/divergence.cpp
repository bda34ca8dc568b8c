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

#include "expcomp/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "expcomp/errors.hpp"
#include "expcomp/risk.hpp"
#include "expcomp/sampling.hpp"

namespace expcomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_space(const Distribution& p, const Distribution& q) {
  if (!(p.space() == q.space())) throw ShapeError("distributions live on different spaces");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

PhiSpec PhiSpec::total_variation() {
  return PhiSpec("total_variation", [](double x) { return std::abs(x - 1.0); }, 1.0);
}

PhiSpec PhiSpec::kl() { return PhiSpec("kl", xlogx, kInf); }

PhiSpec PhiSpec::chi2() {
  return PhiSpec("chi2", [](double x) { return (x - 1.0) * (x - 1.0); }, kInf);
}

PhiSpec PhiSpec::custom(std::string name, std::function<double(double)> phi,
                        double slope_at_infinity) {
  if (phi(1.0) != 0.0) throw ArgumentError("phi(1) must be 0");
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.125 * i);
  for (double x : grid) {
    for (double y : grid) {
      const double mid = phi(0.5 * (x + y));
      if (!(mid <= 0.5 * (phi(x) + phi(y)) + 1e-9)) {
        throw ArgumentError("phi is not midpoint convex on the sample grid");
      }
    }
  }
  return PhiSpec(std::move(name), std::move(phi), slope_at_infinity);
}

PhiSpec PhiSpec::by_name(std::string_view name) {
  if (name == "total_variation" || name == "tv" || name == "variational") {
    return total_variation();
  }
  if (name == "kl") return kl();
  if (name == "chi2") return chi2();
  throw ArgumentError("unknown phi-divergence '" + std::string(name) + "'");
}

double variational(const Distribution& p, const Distribution& q) {
  check_same_space(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double phi_divergence(const PhiSpec& phi, const Distribution& p, const Distribution& q) {
  check_same_space(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      s += p[i] * phi(q[i] / p[i]);
    } else if (q[i] > 0.0) {
      if (std::isinf(phi.slope_at_infinity())) return kInf;
      s += q[i] * phi.slope_at_infinity();
    }
  }
  return s;
}

double shannon_entropy(const Distribution& p) {
  double h = 0.0;
  for (double w : p.weights()) h -= xlogx(w);
  return std::max(0.0, h);
}

double mutual_information(const Transition& experiment, const Distribution& prior) {
  const BayesReversal rev = reverse(experiment, prior);
  double conditional = 0.0;
  for (std::size_t z = 0; z < rev.support.size(); ++z) {
    if (!rev.support[z]) continue;
    conditional += rev.marginal[z] * shannon_entropy(rev.posterior.column(z));
  }
  return shannon_entropy(prior) - conditional;
}

double risk_gap(const LossMatrix& loss, const Transition& experiment,
                const Distribution& prior) {
  return entropy(loss, prior) - min_bayes_risk(loss, experiment, prior).value;
}

std::string_view to_string(DpiKind kind) {
  switch (kind) {
    case DpiKind::kVariational:
      return "variational";
    case DpiKind::kPhi:
      return "phi";
    case DpiKind::kMutualInformation:
      return "mutual_information";
    case DpiKind::kRiskGap:
      return "risk_gap";
  }
  return "unknown";
}

DpiKind parse_dpi_kind(std::string_view name) {
  if (name == "variational") return DpiKind::kVariational;
  if (name == "phi" || name == "kl") return DpiKind::kPhi;
  if (name == "mutual_information" || name == "mutual-info") {
    return DpiKind::kMutualInformation;
  }
  if (name == "risk_gap" || name == "risk-gap") return DpiKind::kRiskGap;
  throw ArgumentError("unknown dpi kind '" + std::string(name) + "'");
}

DpiReport dpi_check(DpiKind kind, std::size_t trials, std::uint64_t seed,
                    const PhiSpec& phi) {
  if (trials == 0) throw ArgumentError("dpi check needs at least one trial");
  DpiReport rep;
  rep.kind = kind;
  rep.trials = trials;
  rep.seed = seed;
  if (kind == DpiKind::kPhi) rep.phi_name = phi.name();

  sampling::Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const LabeledSet outcomes =
        LabeledSet::numbered("z", sampling::uniform_index(rng, 2, 5));
    const LabeledSet processed =
        LabeledSet::numbered("y", sampling::uniform_index(rng, 1, 5));
    double before = 0.0;
    double after = 0.0;
    if (kind == DpiKind::kVariational || kind == DpiKind::kPhi) {
      const Distribution p = sampling::random_distribution(rng, outcomes);
      const Distribution q = sampling::random_distribution(rng, outcomes);
      const Transition f = sampling::random_transition(rng, outcomes, processed);
      if (kind == DpiKind::kVariational) {
        before = variational(p, q);
        after = variational(push(f, p), push(f, q));
      } else {
        before = phi_divergence(phi, p, q);
        after = phi_divergence(phi, push(f, p), push(f, q));
      }
    } else {
      const LabeledSet unknowns =
          LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
      const Transition e = sampling::random_transition(rng, unknowns, outcomes);
      const Distribution prior = sampling::random_distribution(rng, unknowns);
      const Transition f = sampling::random_transition(rng, outcomes, processed);
      const Transition fe = compose(f, e);
      if (kind == DpiKind::kMutualInformation) {
        before = mutual_information(e, prior);
        after = mutual_information(fe, prior);
      } else {
        const LabeledSet actions =
            LabeledSet::numbered("a", sampling::uniform_index(rng, 2, 4));
        const LossMatrix loss = sampling::random_loss(rng, unknowns, actions);
        before = risk_gap(loss, e, prior);
        after = risk_gap(loss, fe, prior);
      }
    }
    const double increase = after - before;
    if (increase > kDpiSlack) ++rep.violations;
    rep.max_violation = std::max(rep.max_violation, increase);
  }
  return rep;
}

}  // namespace expcomp

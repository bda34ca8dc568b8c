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

#include "expcomp/loss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "expcomp/errors.hpp"
#include "expcomp/lp.hpp"

namespace expcomp {
namespace {

constexpr std::size_t kMaxGridActions = 250000;

void check_size(const LossMatrix& loss, std::size_t n, const char* what) {
  if (n != loss.unknowns().size()) {
    throw ShapeError(std::string(what) + " has " + std::to_string(n) +
                     " entries, loss has " +
                     std::to_string(loss.unknowns().size()) + " unknowns");
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LossMatrix::LossMatrix(LabeledSet unknowns, LabeledSet actions, Matrix values)
    : unknowns_(std::move(unknowns)),
      actions_(std::move(actions)),
      values_(std::move(values)) {
  if (values_.rows() != unknowns_.size() || values_.cols() != actions_.size()) {
    throw ShapeError("loss matrix must be |unknowns| x |actions|");
  }
  for (double x : values_.data()) {
    if (!std::isfinite(x)) throw ArgumentError("loss matrix has a non-finite entry");
  }
}

LossMatrix LossMatrix::zero_one(const LabeledSet& unknowns) {
  Matrix m(unknowns.size(), unknowns.size(), 1.0);
  for (std::size_t i = 0; i < unknowns.size(); ++i) m(i, i) = 0.0;
  return LossMatrix(unknowns, unknowns, std::move(m));
}

LossMatrix LossMatrix::log_loss_grid(const LabeledSet& unknowns,
                                     std::size_t resolution) {
  const std::size_t k = unknowns.size();
  if (resolution < k) {
    throw ArgumentError("grid resolution must be at least the number of unknowns");
  }
  std::vector<std::vector<std::size_t>> points;
  std::vector<std::size_t> current(k);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t pos,
                                                           std::size_t remaining) {
    if (points.size() > kMaxGridActions) {
      throw ArgumentError("log-loss grid too large; lower the resolution");
    }
    if (pos + 1 == k) {
      current[pos] = remaining;
      points.push_back(current);
      return;
    }
    // Leave at least one unit for each remaining coordinate.
    for (std::size_t c = 1; c + (k - pos - 1) <= remaining; ++c) {
      current[pos] = c;
      fill(pos + 1, remaining - c);
    }
  };
  fill(0, resolution);

  Matrix m(k, points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t t = 0; t < k; ++t) {
      m(t, a) = -std::log(static_cast<double>(points[a][t]) /
                          static_cast<double>(resolution));
    }
  }
  return LossMatrix(unknowns, LabeledSet::numbered("q", points.size()), std::move(m));
}

double LossMatrix::sup_norm() const {
  double s = 0.0;
  for (double x : values_.data()) s = std::max(s, std::abs(x));
  return s;
}

std::vector<double> expected_losses(const LossMatrix& loss,
                                    std::span<const double> weights) {
  check_size(loss, weights.size(), "weight vector");
  std::vector<double> out(loss.actions().size(), 0.0);
  for (std::size_t t = 0; t < weights.size(); ++t) {
    const double w = weights[t];
    if (w == 0.0) continue;
    for (std::size_t a = 0; a < out.size(); ++a) out[a] += w * loss(t, a);
  }
  return out;
}

double entropy(const LossMatrix& loss, const UnnormalizedMeasure& mu) {
  if (!(mu.space() == loss.unknowns())) {
    throw ShapeError("measure space does not match the loss unknowns");
  }
  const auto e = expected_losses(loss, mu.weights());
  return *std::min_element(e.begin(), e.end());
}

std::vector<std::size_t> bayes_actions(const LossMatrix& loss,
                                       const Distribution& p, double tol) {
  if (!(p.space() == loss.unknowns())) {
    throw ShapeError("distribution space does not match the loss unknowns");
  }
  const auto e = expected_losses(loss, p.weights());
  const double best = *std::min_element(e.begin(), e.end());
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (e[a] <= best + tol) out.push_back(a);
  }
  return out;
}

std::size_t bayes_action(const LossMatrix& loss, std::span<const double> weights) {
  const auto e = expected_losses(loss, weights);
  return static_cast<std::size_t>(std::min_element(e.begin(), e.end()) - e.begin());
}

std::vector<double> project_zero_sum(std::span<const double> v) {
  const double mean =
      std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x -= mean;
  return out;
}

SimplexGap min_simplex_gap(const LossMatrix& loss, std::span<const double> zeta) {
  const std::size_t n = loss.unknowns().size();
  check_size(loss, zeta.size(), "loss vector");
  // Variables: P_0..P_{n-1} >= 0, then the epigraph variable t (free).
  lp::ProgramBuilder b(n + 1);
  for (std::size_t i = 0; i < n; ++i) b.set_objective(i, zeta[i]);
  b.set_objective(n, -1.0);
  b.set_free(n);
  for (std::size_t a = 0; a < loss.actions().size(); ++a) {
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = -loss(i, a);
    row[n] = 1.0;
    b.add_ub(std::move(row), 0.0);
  }
  std::vector<double> simplex(n + 1, 1.0);
  simplex[n] = 0.0;
  b.add_eq(std::move(simplex), 1.0);

  const lp::LPResult r = lp::solve(b.build());
  if (!r.optimal()) {
    throw SolverError("simplex gap program ended " + std::string(lp::to_string(r.status)));
  }
  return {r.value, {r.primal.begin(), r.primal.begin() + static_cast<std::ptrdiff_t>(n)}};
}

bool in_super_prediction_set(const LossMatrix& loss, std::span<const double> zeta) {
  return min_simplex_gap(loss, zeta).value >= -lp::kFeasibilityTol;
}

bool is_supergradient(const LossMatrix& loss, std::span<const double> v,
                      const UnnormalizedMeasure& mu) {
  check_size(loss, v.size(), "candidate super-gradient");
  if (!(mu.space() == loss.unknowns())) {
    throw ShapeError("measure space does not match the loss unknowns");
  }
  if (std::abs(dot(mu.weights(), v) - entropy(loss, mu)) > lp::kFeasibilityTol) {
    return false;
  }
  return in_super_prediction_set(loss, v);
}

double psi(const LossMatrix& loss, std::span<const double> v) {
  check_size(loss, v.size(), "canonical coordinate");
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(sum) > kStochasticTol) {
    throw ArgumentError("canonical coordinates must sum to zero");
  }
  return -min_simplex_gap(loss, v).value;
}

CanonicalPoint canonical_point(const LossMatrix& loss, std::span<const double> v) {
  return {{v.begin(), v.end()}, psi(loss, v)};
}

double canonical_loss(const LossMatrix& loss, std::string_view theta,
                      std::span<const double> v) {
  const std::size_t t = loss.unknowns().index_of(theta);
  const double gamma = psi(loss, v);
  return v[t] + gamma;
}

std::vector<double> loss_from_entropy(const LossMatrix& loss, const Distribution& q) {
  if (!(q.space() == loss.unknowns())) {
    throw ShapeError("distribution space does not match the loss unknowns");
  }
  return loss.profile(bayes_action(loss, q.weights()));
}

bool euler_check(const LossMatrix& loss, const UnnormalizedMeasure& mu) {
  if (!(mu.space() == loss.unknowns())) {
    throw ShapeError("measure space does not match the loss unknowns");
  }
  const std::vector<double> profile = loss.profile(bayes_action(loss, mu.weights()));
  for (double lambda : {1.0, 0.5, 2.0}) {
    const UnnormalizedMeasure scaled = mu.scaled(lambda);
    const double h = entropy(loss, scaled);
    const double pairing = dot(scaled.weights(), profile);
    if (std::abs(pairing - h) > 1e-9 * std::max(1.0, std::abs(h))) return false;
  }
  return true;
}

LossMatrix canonicalize(const LossMatrix& loss) {
  Matrix m(loss.unknowns().size(), loss.actions().size());
  for (std::size_t a = 0; a < loss.actions().size(); ++a) {
    const std::vector<double> v = project_zero_sum(loss.profile(a));
    const double gamma = psi(loss, v);
    for (std::size_t t = 0; t < v.size(); ++t) m(t, a) = v[t] + gamma;
  }
  return LossMatrix(loss.unknowns(), loss.actions(), std::move(m));
}

}  // namespace expcomp

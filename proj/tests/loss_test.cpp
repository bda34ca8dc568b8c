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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "expcomp/errors.hpp"
#include "expcomp/loss.hpp"
#include "expcomp/sampling.hpp"
#include "test_util.hpp"

namespace expcomp {
namespace {

using testing::binary;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LossMatrix zero_one() { return LossMatrix::zero_one(binary()); }

TEST_CASE("entropy of the 0-1 loss is the smaller mass") {
  for (double p : {0.0, 0.1, 0.3, 0.5, 0.8, 1.0}) {
    CHECK(entropy(zero_one(), Distribution(binary(), {p, 1.0 - p})) ==
          doctest::Approx(std::min(p, 1.0 - p)));
  }
  CHECK_THROWS_AS(entropy(zero_one(), Distribution::uniform(LabeledSet({"x"}))), ShapeError);
}

TEST_CASE("log-loss grid entropy at uniform is ln 2") {
  const auto grid = LossMatrix::log_loss_grid(binary());
  CHECK(std::abs(entropy(grid, Distribution::uniform(binary())) - std::log(2.0)) <= 1e-3);
  // Off-grid points stay close.
  const Distribution p(binary(), {0.3, 0.7});
  const double h = -(0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  CHECK(entropy(grid, p) >= h - 1e-12);
  CHECK(entropy(grid, p) - h <= 1e-2);
}

TEST_CASE("entropy is homogeneous and concave") {
  sampling::Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto theta = LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
    const auto loss = sampling::random_loss(
        rng, theta, LabeledSet::numbered("a", sampling::uniform_index(rng, 1, 5)));
    const auto p = sampling::random_distribution(rng, theta);
    const auto q = sampling::random_distribution(rng, theta);
    const double lambda = 0.1 + 5.0 * u(rng);
    const double h = entropy(loss, p);
    const double scaled = entropy(loss, UnnormalizedMeasure(p).scaled(lambda));
    CHECK(std::abs(scaled - lambda * h) <= 1e-12 * std::max(1.0, std::abs(lambda * h)));

    const double w = u(rng);
    std::vector<double> mix(theta.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = w * p[i] + (1.0 - w) * q[i];
    CHECK(entropy(loss, Distribution(theta, mix)) >=
          w * h + (1.0 - w) * entropy(loss, q) - 1e-9);
  }
}

TEST_CASE("bayes actions") {
  const auto a = bayes_actions(zero_one(), Distribution(binary(), {0.9, 0.1}));
  CHECK(a == std::vector<std::size_t>{0});
  CHECK(zero_one().actions().label(a[0]) == "-1");
  CHECK(bayes_actions(zero_one(), Distribution::uniform(binary())) ==
        std::vector<std::size_t>{0, 1});
  const LossMatrix constant(binary(), LabeledSet::numbered("a", 3), Matrix(2, 3, 0.4));
  CHECK(bayes_actions(constant, Distribution(binary(), {0.2, 0.8})).size() == 3);
}

TEST_CASE("super-gradient membership") {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = LabeledSet::numbered("t", 3);
    const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 4));
    const auto p = sampling::random_distribution(rng, theta);
    const auto bayes = bayes_actions(loss, p);
    CHECK(is_supergradient(loss, loss.profile(bayes.front()), p));
    const auto losses = expected_losses(loss, p.weights());
    for (std::size_t a = 0; a < 4; ++a) {
      if (losses[a] > entropy(loss, p) + 1e-6) CHECK_FALSE(is_supergradient(loss, loss.profile(a), p));
    }
  }
  const std::vector<double> zero{0.0, 0.0};
  for (double p : {0.2, 0.5, 0.7}) {
    CHECK_FALSE(is_supergradient(zero_one(), zero, Distribution(binary(), {p, 1.0 - p})));
  }
}

TEST_CASE("super prediction set") {
  sampling::Rng rng(6);
  const auto theta = LabeledSet::numbered("t", 3);
  const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 4));
  for (std::size_t a = 0; a < 4; ++a) {
    auto col = loss.profile(a);
    CHECK(in_super_prediction_set(loss, col));
    for (double& x : col) x += 0.3;
    CHECK(in_super_prediction_set(loss, col));
  }
  const std::vector<double> low{0.2, 0.2};
  CHECK_FALSE(in_super_prediction_set(zero_one(), low));
  const auto gap = min_simplex_gap(zero_one(), low);
  CHECK(gap.value == doctest::Approx(-0.3));
}

TEST_CASE("psi") {
  const std::vector<double> v{-0.5, 0.5};
  CHECK(psi(zero_one(), v) == doctest::Approx(0.5));
  const std::vector<double> zero{0.0, 0.0};
  CHECK(psi(zero_one(), zero) == doctest::Approx(0.5));  // max of min(p, 1-p)
  const std::vector<double> unbalanced{0.1, 0.2};
  CHECK_THROWS_AS(psi(zero_one(), unbalanced), ArgumentError);

  sampling::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = LabeledSet::numbered("t", 3);
    const auto loss = testing::random_proper_loss(rng, theta, 4);
    for (std::size_t a = 0; a < 4; ++a) {
      const auto col = loss.profile(a);
      const double mean = (col[0] + col[1] + col[2]) / 3.0;
      const auto pv = project_zero_sum(col);
      CHECK(std::abs(psi(loss, pv) - mean) <= 1e-7);
      CHECK(psi(loss, pv) == psi(loss, pv));
    }
  }
}

TEST_CASE("psi is convex") {
  sampling::Rng rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto theta = LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
    const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 4));
    const auto v1 = project_zero_sum(loss.profile(bayes_action(
        loss, sampling::random_distribution(rng, theta).weights())));
    const auto v2 = project_zero_sum(loss.profile(bayes_action(
        loss, sampling::random_distribution(rng, theta).weights())));
    const double w = u(rng);
    std::vector<double> mix(v1.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = w * v1[i] + (1.0 - w) * v2[i];
    mix = project_zero_sum(mix);
    CHECK(psi(loss, mix) <= w * psi(loss, v1) + (1.0 - w) * psi(loss, v2) + 1e-9);
  }
}

TEST_CASE("canonical loss reconstructs admissible columns") {
  const std::vector<double> v{-0.5, 0.5};
  CHECK(canonical_loss(zero_one(), "-1", v) == doctest::Approx(0.0));
  CHECK(canonical_loss(zero_one(), "1", v) == doctest::Approx(1.0));
  const std::vector<double> zero{0.0, 0.0};
  CHECK(canonical_loss(zero_one(), "-1", zero) == canonical_loss(zero_one(), "1", zero));
  CHECK_THROWS_AS(canonical_loss(zero_one(), "0", v), LabelError);

  sampling::Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto theta = LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
    const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 5));
    for (std::size_t a = 0; a < 5; ++a) {
      const auto col = loss.profile(a);
      // Only columns that are Bayes for some prior.
      if (min_simplex_gap(loss, col).value > 1e-9) continue;
      const auto pv = project_zero_sum(col);
      for (std::size_t t = 0; t < theta.size(); ++t) {
        CHECK(std::abs(canonical_loss(loss, theta.label(t), pv) - col[t]) <= 1e-7);
      }
    }
  }
}

TEST_CASE("canonicalize keeps proper losses") {
  sampling::Rng rng(12);
  const auto theta = LabeledSet::numbered("t", 3);
  const auto loss = testing::random_proper_loss(rng, theta, 4);
  CHECK(canonicalize(loss).values().max_abs_diff(loss.values()) <= 1e-7);
  const auto raw = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 6));
  const auto canon = canonicalize(raw);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = sampling::random_distribution(rng, theta);
    CHECK(std::abs(entropy(canon, p) - entropy(raw, p)) <= 1e-7);
  }
}

TEST_CASE("loss from entropy is proper") {
  CHECK(loss_from_entropy(zero_one(), Distribution(binary(), {0.9, 0.1})) ==
        std::vector<double>{0.0, 1.0});
  sampling::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto theta = LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
    const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 5));
    const auto p = sampling::random_distribution(rng, theta);
    const auto q = sampling::random_distribution(rng, theta);
    const auto vp = loss_from_entropy(loss, p);
    const auto vq = loss_from_entropy(loss, q);
    CHECK(dot(p.weights(), vp) <= dot(p.weights(), vq) + 1e-12);
    CHECK(dot(q.weights(), vq) <= dot(q.weights(), vp) + 1e-12);
  }
}

TEST_CASE("log-loss grid is strictly proper away from ties") {
  const auto grid = LossMatrix::log_loss_grid(binary(), 32);
  const Distribution p(binary(), {0.25, 0.75});
  const Distribution q(binary(), {0.75, 0.25});
  CHECK(dot(p.weights(), loss_from_entropy(grid, p)) <
        dot(p.weights(), loss_from_entropy(grid, q)));
}

TEST_CASE("euler check") {
  sampling::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto theta = LabeledSet::numbered("t", sampling::uniform_index(rng, 2, 4));
    const auto loss = sampling::random_loss(rng, theta, LabeledSet::numbered("a", 4));
    const auto p = sampling::random_distribution(rng, theta);
    CHECK(euler_check(loss, UnnormalizedMeasure(p).scaled(3.0)));
    CHECK(euler_check(loss, p));
  }
  const auto loss = zero_one();
  CHECK(euler_check(loss, UnnormalizedMeasure(Distribution::uniform(binary())).scaled(0.0)));
}

}  // namespace
}  // namespace expcomp

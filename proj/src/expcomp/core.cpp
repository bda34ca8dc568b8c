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

#include "expcomp/core.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "expcomp/errors.hpp"

namespace expcomp {
namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

// Validates and clamps a probability vector in place. `what` names the
// vector in error messages.
void normalize_stochastic(std::span<double> w, double tol,
                          const std::string& what) {
  double sum = 0.0;
  for (double x : w) {
    if (!std::isfinite(x)) throw ArgumentError(what + " has a non-finite entry");
    if (x < -tol) {
      throw ArgumentError(what + " has negative entry " + format_number(x));
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw ArgumentError(what + " sums to " + format_number(sum));
  }
  bool clamped = false;
  for (double& x : w) {
    if (x < 0.0) {
      x = 0.0;
      clamped = true;
    }
  }
  if (clamped) {
    double s = 0.0;
    for (double x : w) s += x;
    for (double& x : w) x /= s;
  }
}

}  // namespace

LabeledSet::LabeledSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw ArgumentError("labeled set must be nonempty");
  auto index = std::make_shared<std::map<std::string, std::size_t, std::less<>>>();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index->emplace(labels_[i], i).second) {
      throw ArgumentError("duplicate label '" + labels_[i] + "'");
    }
  }
  index_ = std::move(index);
}

LabeledSet LabeledSet::point() { return LabeledSet({std::string(kPointLabel)}); }

LabeledSet LabeledSet::numbered(std::string_view prefix, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(prefix) + std::to_string(i));
  }
  return LabeledSet(std::move(labels));
}

LabeledSet LabeledSet::product(std::span<const LabeledSet> sets) {
  if (sets.empty()) throw ArgumentError("product of zero sets");
  std::vector<std::string> labels = sets.front().labels();
  for (std::size_t s = 1; s < sets.size(); ++s) {
    std::vector<std::string> next;
    next.reserve(labels.size() * sets[s].size());
    for (const auto& prefix : labels) {
      for (const auto& l : sets[s].labels()) {
        next.push_back(prefix + std::string(kProductSeparator) + l);
      }
    }
    labels = std::move(next);
  }
  return LabeledSet(std::move(labels));
}

bool LabeledSet::contains(std::string_view label) const {
  return index_->find(label) != index_->end();
}

std::size_t LabeledSet::index_of(std::string_view label) const {
  auto it = index_->find(label);
  if (it == index_->end()) {
    throw LabelError("unknown label '" + std::string(label) + "'");
  }
  return it->second;
}

Distribution::Distribution(LabeledSet space, std::vector<double> weights,
                           double tol)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size()) {
    throw ShapeError("distribution has " + std::to_string(weights_.size()) +
                     " weights for " + std::to_string(space_.size()) +
                     " labels");
  }
  normalize_stochastic(weights_, tol, "distribution");
}

Distribution Distribution::uniform(const LabeledSet& space) {
  return Distribution(
      space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

UnnormalizedMeasure::UnnormalizedMeasure(LabeledSet space,
                                         std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size()) {
    throw ShapeError("measure size does not match its space");
  }
  for (double x : weights_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw ArgumentError("measure weights must be finite and nonnegative");
    }
  }
}

UnnormalizedMeasure UnnormalizedMeasure::scaled(double factor) const {
  std::vector<double> w(weights_.begin(), weights_.end());
  for (double& x : w) x *= factor;
  return UnnormalizedMeasure(space_, std::move(w));
}

Transition::Transition(LabeledSet source, LabeledSet target, Matrix matrix,
                       double tol)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.size() || matrix_.cols() != source_.size()) {
    throw ShapeError("transition matrix is " + std::to_string(matrix_.rows()) +
                     "x" + std::to_string(matrix_.cols()) + ", expected " +
                     std::to_string(target_.size()) + "x" +
                     std::to_string(source_.size()));
  }
  std::vector<double> col(matrix_.rows());
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    for (std::size_t i = 0; i < matrix_.rows(); ++i) col[i] = matrix_(i, j);
    normalize_stochastic(col, tol, "column '" + source_.label(j) + "'");
    for (std::size_t i = 0; i < matrix_.rows(); ++i) matrix_(i, j) = col[i];
  }
}

Transition Transition::identity(const LabeledSet& set) {
  return Transition(set, set, Matrix::identity(set.size()));
}

Transition Transition::terminal(const LabeledSet& set) {
  return Transition(set, LabeledSet::point(), Matrix(1, set.size(), 1.0));
}

Transition Transition::binary_symmetric(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("crossover probability must lie in [0, 1]");
  }
  LabeledSet bits({"-1", "1"});
  return Transition(bits, bits, Matrix(2, 2, {1.0 - p, p, p, 1.0 - p}));
}

Distribution Transition::column(std::size_t source_index) const {
  return Distribution(target_, matrix_.column(source_index));
}

Distribution point_mass(const LabeledSet& space, std::string_view label) {
  std::vector<double> w(space.size(), 0.0);
  w[space.index_of(label)] = 1.0;
  return Distribution(space, std::move(w));
}

double expect(const Distribution& d, std::span<const double> f) {
  if (f.size() != d.size()) {
    throw ShapeError("function has " + std::to_string(f.size()) +
                     " values for a space of " + std::to_string(d.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += d[i] * f[i];
  return s;
}

Distribution push(const Transition& t, const Distribution& d) {
  if (!(d.space() == t.source())) {
    throw ShapeError("distribution space does not match transition source");
  }
  return Distribution(t.target(), multiply(t.matrix(), d.weights()));
}

Transition compose(const Transition& g, const Transition& f) {
  if (!(f.target() == g.source())) {
    throw ShapeError("cannot compose: inner target does not match outer source");
  }
  return Transition(f.source(), g.target(), multiply(g.matrix(), f.matrix()));
}

Transition product(std::span<const Transition> fs) {
  if (fs.empty()) throw ArgumentError("product of an empty list");
  std::vector<LabeledSet> sources;
  std::vector<LabeledSet> targets;
  Matrix m = fs.front().matrix();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    sources.push_back(fs[i].source());
    targets.push_back(fs[i].target());
    if (i > 0) m = kronecker(m, fs[i].matrix());
  }
  return Transition(LabeledSet::product(sources), LabeledSet::product(targets),
                    std::move(m));
}

Transition replicate(const Transition& f, std::size_t n) {
  if (n == 0) throw ArgumentError("replication count must be positive");
  std::vector<LabeledSet> targets(n, f.target());
  LabeledSet target = LabeledSet::product(targets);
  Matrix m(target.size(), f.source().size());
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    Matrix col(f.target().size(), 1, f.matrix().column(x));
    Matrix power = col;
    for (std::size_t k = 1; k < n; ++k) power = kronecker(power, col);
    for (std::size_t y = 0; y < target.size(); ++y) m(y, x) = power(y, 0);
  }
  return Transition(f.source(), std::move(target), std::move(m));
}

Transition from_function(const LabeledSet& source, const LabeledSet& target,
                         const std::function<std::string(const std::string&)>& phi) {
  Matrix m(target.size(), source.size());
  for (std::size_t x = 0; x < source.size(); ++x) {
    m(target.index_of(phi(source.label(x))), x) = 1.0;
  }
  return Transition(source, target, std::move(m));
}

}  // namespace expcomp

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

// Labeled finite sets, distributions and Markov transitions.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expcomp/matrix.hpp"

namespace expcomp {

// Stochasticity tolerance used when ingesting weights and matrices.
inline constexpr double kStochasticTol = 1e-9;

// Separator joining component labels of a product set.
inline constexpr std::string_view kProductSeparator = "⊗";

// Label of the canonical one-element set.
inline constexpr std::string_view kPointLabel = "•";

// Nonempty ordered list of distinct labels.
class LabeledSet {
 public:
  explicit LabeledSet(std::vector<std::string> labels);

  // The one-element set {•}.
  static LabeledSet point();
  // Labels prefix0 .. prefix(n-1).
  static LabeledSet numbered(std::string_view prefix, std::size_t n);
  // Cartesian product, first component most significant.
  static LabeledSet product(std::span<const LabeledSet> sets);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(std::string_view label) const;
  // Throws LabelError when absent.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const LabeledSet& a, const LabeledSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::shared_ptr<const std::map<std::string, std::size_t, std::less<>>> index_;
};

// Probability vector over a labeled set.
class Distribution {
 public:
  // Entries in [-tol, 0) are clamped to zero and the vector renormalized;
  // anything worse is an ArgumentError.
  Distribution(LabeledSet space, std::vector<double> weights,
               double tol = kStochasticTol);

  static Distribution uniform(const LabeledSet& space);

  const LabeledSet& space() const { return space_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  double at(std::string_view label) const {
    return weights_[space_.index_of(label)];
  }

 private:
  LabeledSet space_;
  std::vector<double> weights_;
};

// Nonnegative weights that need not sum to one.
class UnnormalizedMeasure {
 public:
  UnnormalizedMeasure(LabeledSet space, std::vector<double> weights);
  UnnormalizedMeasure(const Distribution& d)  // NOLINT: implicit by design
      : UnnormalizedMeasure(d.space(), {d.weights().begin(), d.weights().end()}) {}

  const LabeledSet& space() const { return space_; }
  std::span<const double> weights() const { return weights_; }
  UnnormalizedMeasure scaled(double factor) const;

 private:
  LabeledSet space_;
  std::vector<double> weights_;
};

// Column-stochastic |target| x |source| matrix; column j is the distribution
// of outcomes given source label j.
class Transition {
 public:
  Transition(LabeledSet source, LabeledSet target, Matrix matrix,
             double tol = kStochasticTol);

  static Transition identity(const LabeledSet& set);
  // The transition to the one-element set that discards everything.
  static Transition terminal(const LabeledSet& set);
  // Binary symmetric channel on {-1, 1} with crossover probability p.
  static Transition binary_symmetric(double p);

  const LabeledSet& source() const { return source_; }
  const LabeledSet& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  double operator()(std::size_t target_index, std::size_t source_index) const {
    return matrix_(target_index, source_index);
  }
  Distribution column(std::size_t source_index) const;

 private:
  LabeledSet source_;
  LabeledSet target_;
  Matrix matrix_;
};

Distribution point_mass(const LabeledSet& space, std::string_view label);

double expect(const Distribution& d, std::span<const double> f);

Distribution push(const Transition& t, const Distribution& d);

// g after f.
Transition compose(const Transition& g, const Transition& f);

Transition product(std::span<const Transition> fs);

// Same source; target is the n-fold product of f's target.
Transition replicate(const Transition& f, std::size_t n);

// Deterministic transition induced by a label map.
Transition from_function(const LabeledSet& source, const LabeledSet& target,
                         const std::function<std::string(const std::string&)>& phi);

}  // namespace expcomp

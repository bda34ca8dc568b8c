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

// Variational distance, phi-divergences, Shannon entropy and mutual
// information, the Bayes-risk gap, and randomized data-processing checks.
// Logarithms are natural.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "expcomp/core.hpp"
#include "expcomp/loss.hpp"

namespace expcomp {

// Convex phi on [0, inf) with phi(1) = 0. Besides phi itself a PhiSpec carries
// the limit slope lim_{x->inf} phi(x)/x, which prices mass of Q where P
// vanishes (infinite for kl and chi2).
class PhiSpec {
 public:
  static PhiSpec total_variation();  // |x - 1|
  static PhiSpec kl();               // x log x
  static PhiSpec chi2();             // (x - 1)^2
  // Validates phi(1) = 0 and midpoint convexity on a sample grid.
  static PhiSpec custom(std::string name, std::function<double(double)> phi,
                        double slope_at_infinity);
  // "total_variation" (alias "tv", "variational"), "kl", "chi2".
  static PhiSpec by_name(std::string_view name);

  const std::string& name() const { return name_; }
  double operator()(double x) const { return phi_(x); }
  double slope_at_infinity() const { return slope_; }

 private:
  PhiSpec(std::string name, std::function<double(double)> phi, double slope)
      : name_(std::move(name)), phi_(std::move(phi)), slope_(slope) {}

  std::string name_;
  std::function<double(double)> phi_;
  double slope_;
};

// Half the l1 distance.
double variational(const Distribution& p, const Distribution& q);

// sum_{P>0} P phi(Q/P) + sum_{P=0} Q * slope_at_infinity; may be +inf.
double phi_divergence(const PhiSpec& phi, const Distribution& p, const Distribution& q);

double shannon_entropy(const Distribution& p);

double mutual_information(const Transition& experiment, const Distribution& prior);

// entropy(prior) - min Bayes risk of the experiment.
double risk_gap(const LossMatrix& loss, const Transition& experiment,
                const Distribution& prior);

enum class DpiKind { kVariational, kPhi, kMutualInformation, kRiskGap };

std::string_view to_string(DpiKind kind);
// "variational", "phi" (alias "kl"), "mutual_information" ("mutual-info"),
// "risk_gap" ("risk-gap"). ArgumentError otherwise.
DpiKind parse_dpi_kind(std::string_view name);

struct DpiReport {
  DpiKind kind = DpiKind::kVariational;
  std::string phi_name;  // set for kPhi
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  // largest increase seen under processing
};

inline constexpr double kDpiSlack = 1e-9;

// Draws random inputs and a random post-processing each trial and checks
// that processing never increases the measure beyond kDpiSlack.
DpiReport dpi_check(DpiKind kind, std::size_t trials, std::uint64_t seed,
                    const PhiSpec& phi = PhiSpec::kl());

}  // namespace expcomp

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

// Seeded generators for random distributions, transitions and losses used
// by the verification routines.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "expcomp/core.hpp"
#include "expcomp/loss.hpp"

namespace expcomp::sampling {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // [lo, hi]

// Flat Dirichlet draw; every weight is strictly positive.
Distribution random_distribution(Rng& rng, const LabeledSet& space);

Transition random_transition(Rng& rng, const LabeledSet& source,
                             const LabeledSet& target);

// Entries i.i.d. uniform on [lo, hi].
LossMatrix random_loss(Rng& rng, const LabeledSet& unknowns,
                       const LabeledSet& actions, double lo = -1.0, double hi = 1.0);

}  // namespace expcomp::sampling

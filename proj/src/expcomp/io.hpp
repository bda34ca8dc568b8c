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

// JSON file formats.
//
//   experiment: {"theta": [..], "outcomes": [..], "matrix": rows per outcome}
//   loss:       {"theta": [..], "actions": [..],  "matrix": rows per theta}
//   prior:      {"theta": [..], "weights": [..]}
//   rule:       {"outcomes": [..], "actions": [..], "matrix": rows per action}
//
// Matrices are row-major nested lists in the label order of the file.

#pragma once

#include <string>
#include <string_view>

#include "expcomp/core.hpp"
#include "expcomp/loss.hpp"

namespace expcomp::io {

enum class FileKind { kExperiment, kLoss, kPrior, kRule };

std::string_view to_string(FileKind kind);

// Infers the kind from the keys present. ParseError when ambiguous.
FileKind detect_kind(std::string_view text);

Transition parse_experiment(std::string_view text, double tol = kStochasticTol);
LossMatrix parse_loss(std::string_view text);
Distribution parse_prior(std::string_view text, double tol = kStochasticTol);
Transition parse_rule(std::string_view text, double tol = kStochasticTol);

std::string format_experiment(const Transition& e);
std::string format_loss(const LossMatrix& loss);
std::string format_prior(const Distribution& p);
std::string format_rule(const Transition& d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

struct Validation {
  bool ok = false;
  FileKind kind = FileKind::kExperiment;
  std::string message;  // summary when ok, first violation otherwise
};

Validation validate(std::string_view text, double tol = kStochasticTol);

}  // namespace expcomp::io

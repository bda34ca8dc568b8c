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

// Dense two-phase simplex for small linear programs.
//
//   minimize    c.x
//   subject to  A_eq x  = b_eq
//               A_ub x <= b_ub
//               x_j >= 0 unless free[j]
//
// Pivoting follows Bland's rule, so results are deterministic and the method
// cannot cycle. Duals come from the final basis with the convention that the
// Lagrangian is c.x - y.(Ax - b): duals of <= rows are <= 0 at a minimum.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "expcomp/matrix.hpp"

namespace expcomp::lp {

inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-7;

struct LinearProgram {
  std::vector<double> objective;
  Matrix eq_matrix;  // rows x objective.size(), may have zero rows
  std::vector<double> eq_rhs;
  Matrix ub_matrix;
  std::vector<double> ub_rhs;
  std::vector<bool> free;  // empty means every variable is nonnegative

  std::size_t num_variables() const { return objective.size(); }
  // Checks dimensions and finiteness; throws ShapeError / ArgumentError.
  void validate() const;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(Status s);

struct LPResult {
  Status status = Status::kInfeasible;
  double value = 0.0;
  std::vector<double> primal;
  std::vector<double> eq_duals;
  std::vector<double> ub_duals;
  std::size_t iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

LPResult solve(const LinearProgram& program);

// True iff the phase-one optimum is at most kFeasibilityTol.
bool feasible(const LinearProgram& program);

// Builder for programs assembled row by row.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(std::size_t num_variables);

  void set_objective(std::size_t var, double coeff) { objective_.at(var) = coeff; }
  void set_free(std::size_t var) { free_.at(var) = true; }
  // Each row is given densely.
  void add_eq(std::vector<double> row, double rhs);
  void add_ub(std::vector<double> row, double rhs);

  std::size_t num_variables() const { return n_; }
  std::size_t num_eq() const { return eq_rhs_.size(); }
  std::size_t num_ub() const { return ub_rhs_.size(); }

  LinearProgram build() const;

 private:
  std::size_t n_;
  std::vector<double> objective_;
  std::vector<bool> free_;
  std::vector<double> eq_rows_;
  std::vector<double> eq_rhs_;
  std::vector<double> ub_rows_;
  std::vector<double> ub_rhs_;
};

}  // namespace expcomp::lp

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

#include "expcomp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "expcomp/errors.hpp"

namespace expcomp::lp {
namespace {

constexpr std::size_t kMaxIterations = 200000;

// Simplex tableau. Row `m` holds reduced costs; column `cols` holds the
// right-hand side (for the cost row, minus the objective value).
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols)
      : m_(m), cols_(cols), cells_((m + 1) * (cols + 1), 0.0), basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return cells_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(m_, c); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Rebuilds the cost row for costs `c` (one per column) from the basis.
  void price(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) {
      double v = j < cols_ ? c[j] : 0.0;
      for (std::size_t r = 0; r < m_; ++r) v -= c[basis_[r]] * at(r, j);
      cost(j) = v;
    }
  }

  enum class Outcome { kOptimal, kUnbounded };

  // Bland's rule: lowest-index improving column, lowest-index basic variable
  // among tied ratios. Columns at or beyond `enter_limit` never enter.
  Outcome run(std::size_t enter_limit, std::size_t& iterations) {
    for (;;) {
      std::size_t q = enter_limit;
      for (std::size_t j = 0; j < enter_limit; ++j) {
        if (cost(j) < -kPivotTol) {
          q = j;
          break;
        }
      }
      if (q == enter_limit) return Outcome::kOptimal;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, q);
        if (a <= kPivotTol) continue;
        const double ratio = rhs(r) / a;
        if (leave == m_ || ratio < best - 1e-12) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + 1e-12 && basis_[r] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == m_) return Outcome::kUnbounded;
      pivot(leave, q);
      if (++iterations > kMaxIterations) {
        throw SolverError("simplex iteration limit exceeded");
      }
    }
  }

 private:
  std::size_t m_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

// Program rewritten as  A x = b, x >= 0, b >= 0  plus bookkeeping to map
// the solution back.
struct StandardForm {
  std::size_t n_original = 0;
  std::size_t n_struct = 0;  // split variables + slacks
  std::vector<std::size_t> negative_part;  // column of x_j^-, or npos
  std::size_t m = 0;
  std::size_t m_eq = 0;
  std::vector<double> sign;  // +1/-1 per row after making b >= 0
  Tableau tableau{0, 0};
  std::vector<double> cost;  // phase-two costs per tableau column
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

StandardForm to_standard_form(const LinearProgram& p) {
  StandardForm sf;
  const std::size_t n = p.num_variables();
  sf.n_original = n;
  sf.negative_part.assign(n, kNone);
  std::size_t next = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (!p.free.empty() && p.free[j]) sf.negative_part[j] = next++;
  }
  const std::size_t m_eq = p.eq_rhs.size();
  const std::size_t m_ub = p.ub_rhs.size();
  const std::size_t first_slack = next;
  sf.n_struct = first_slack + m_ub;
  sf.m = m_eq + m_ub;
  sf.m_eq = m_eq;
  const std::size_t cols = sf.n_struct + sf.m;
  sf.tableau = Tableau(sf.m, cols);
  sf.sign.assign(sf.m, 1.0);
  sf.cost.assign(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sf.cost[j] = p.objective[j];
    if (sf.negative_part[j] != kNone) sf.cost[sf.negative_part[j]] = -p.objective[j];
  }

  Tableau& t = sf.tableau;
  for (std::size_t r = 0; r < sf.m; ++r) {
    const bool is_eq = r < m_eq;
    const Matrix& a = is_eq ? p.eq_matrix : p.ub_matrix;
    const std::size_t ar = is_eq ? r : r - m_eq;
    const double b = is_eq ? p.eq_rhs[ar] : p.ub_rhs[ar];
    const double s = b < 0.0 ? -1.0 : 1.0;
    sf.sign[r] = s;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(r, j) = s * a(ar, j);
      if (sf.negative_part[j] != kNone) t.at(r, sf.negative_part[j]) = -s * a(ar, j);
    }
    if (!is_eq) t.at(r, first_slack + ar) = s;
    t.at(r, sf.n_struct + r) = 1.0;
    t.rhs(r) = s * b;
    t.basis()[r] = sf.n_struct + r;
  }
  return sf;
}

// Runs phase one. Returns the phase-one optimum; on success the basis holds
// no artificial column except on redundant rows.
double phase_one(StandardForm& sf, std::size_t& iterations) {
  Tableau& t = sf.tableau;
  std::vector<double> c1(t.cols(), 0.0);
  for (std::size_t r = 0; r < sf.m; ++r) c1[sf.n_struct + r] = 1.0;
  t.price(c1);
  t.run(t.cols(), iterations);
  const double infeasibility = -t.cost(t.cols());
  if (infeasibility > kFeasibilityTol) return infeasibility;

  for (std::size_t r = 0; r < sf.m; ++r) {
    if (t.basis()[r] < sf.n_struct) continue;
    for (std::size_t j = 0; j < sf.n_struct; ++j) {
      if (std::abs(t.at(r, j)) > kPivotTol) {
        t.pivot(r, j);
        break;
      }
    }
  }
  return infeasibility;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (n == 0) throw ShapeError("linear program has no variables");
  if (!free.empty() && free.size() != n) {
    throw ShapeError("free-variable flags do not match the variable count");
  }
  auto check_block = [n](const Matrix& a, const std::vector<double>& b,
                         const char* name) {
    if (b.empty()) {
      if (a.rows() != 0) throw ShapeError(std::string(name) + " rows without rhs");
      return;
    }
    if (a.rows() != b.size() || a.cols() != n) {
      throw ShapeError(std::string(name) + " block has inconsistent dimensions");
    }
    for (double x : a.data()) {
      if (!std::isfinite(x)) throw ArgumentError(std::string(name) + " has non-finite entry");
    }
    for (double x : b) {
      if (!std::isfinite(x)) throw ArgumentError(std::string(name) + " rhs has non-finite entry");
    }
  };
  for (double x : objective) {
    if (!std::isfinite(x)) throw ArgumentError("objective has non-finite entry");
  }
  check_block(eq_matrix, eq_rhs, "equality");
  check_block(ub_matrix, ub_rhs, "inequality");
}

LPResult solve(const LinearProgram& program) {
  program.validate();
  StandardForm sf = to_standard_form(program);
  Tableau& t = sf.tableau;
  LPResult result;

  if (phase_one(sf, result.iterations) > kFeasibilityTol) {
    result.status = Status::kInfeasible;
    return result;
  }

  t.price(sf.cost);
  if (t.run(sf.n_struct, result.iterations) == Tableau::Outcome::kUnbounded) {
    result.status = Status::kUnbounded;
    return result;
  }

  std::vector<double> x(t.cols(), 0.0);
  for (std::size_t r = 0; r < sf.m; ++r) x[t.basis()[r]] = t.rhs(r);
  result.primal.assign(sf.n_original, 0.0);
  for (std::size_t j = 0; j < sf.n_original; ++j) {
    result.primal[j] = x[j];
    if (sf.negative_part[j] != kNone) result.primal[j] -= x[sf.negative_part[j]];
  }
  result.value = 0.0;
  for (std::size_t j = 0; j < sf.n_original; ++j) {
    result.value += program.objective[j] * result.primal[j];
  }

  // The artificial column of row r still carries B^-1 e_r, so its reduced
  // cost under zero artificial cost is -y_r.
  result.eq_duals.assign(sf.m_eq, 0.0);
  result.ub_duals.assign(sf.m - sf.m_eq, 0.0);
  for (std::size_t r = 0; r < sf.m; ++r) {
    const double y = -t.cost(sf.n_struct + r) * sf.sign[r];
    if (r < sf.m_eq) {
      result.eq_duals[r] = y;
    } else {
      result.ub_duals[r - sf.m_eq] = y;
    }
  }
  result.status = Status::kOptimal;
  return result;
}

bool feasible(const LinearProgram& program) {
  program.validate();
  StandardForm sf = to_standard_form(program);
  std::size_t iterations = 0;
  return phase_one(sf, iterations) <= kFeasibilityTol;
}

ProgramBuilder::ProgramBuilder(std::size_t num_variables)
    : n_(num_variables), objective_(num_variables, 0.0), free_(num_variables, false) {}

void ProgramBuilder::add_eq(std::vector<double> row, double rhs) {
  if (row.size() != n_) throw ShapeError("equality row has the wrong length");
  eq_rows_.insert(eq_rows_.end(), row.begin(), row.end());
  eq_rhs_.push_back(rhs);
}

void ProgramBuilder::add_ub(std::vector<double> row, double rhs) {
  if (row.size() != n_) throw ShapeError("inequality row has the wrong length");
  ub_rows_.insert(ub_rows_.end(), row.begin(), row.end());
  ub_rhs_.push_back(rhs);
}

LinearProgram ProgramBuilder::build() const {
  LinearProgram p;
  p.objective = objective_;
  p.eq_matrix = Matrix(eq_rhs_.size(), n_, eq_rows_);
  p.eq_rhs = eq_rhs_;
  p.ub_matrix = Matrix(ub_rhs_.size(), n_, ub_rows_);
  p.ub_rhs = ub_rhs_;
  p.free = free_;
  return p;
}

}  // namespace expcomp::lp

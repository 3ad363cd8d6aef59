// Copyright 2026 The gcpcert Authors
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

#include "gcpcert/linear_program.hpp"

#include <cmath>
#include <limits>

#include "gcpcert/errors.hpp"

namespace gcpcert {

namespace {

constexpr double kPivotTol = 1e-12;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  // Row `rows_` is the objective row; column `cols_` is the right-hand side.
  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
};

// Objective row entries d_j = c_B B^-1 A_j - c_j and the current value.
void load_objective(Tableau& tab, const std::vector<std::size_t>& basis, const std::vector<double>& cost) {
  const std::size_t m = tab.rows();
  for (std::size_t c = 0; c <= tab.cols(); ++c) {
    double v = c < tab.cols() ? -cost[c] : 0.0;
    for (std::size_t r = 0; r < m; ++r) v += cost[basis[r]] * tab.at(r, c);
    tab.at(m, c) = v;
  }
}

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

PhaseOutcome run_phase(Tableau& tab, std::vector<std::size_t>& basis, const std::vector<bool>& allowed,
                       std::size_t& pivots, std::size_t max_pivots) {
  const std::size_t m = tab.rows();
  while (true) {
    // Bland: smallest-index improving column.
    std::size_t enter = tab.cols();
    for (std::size_t c = 0; c < tab.cols(); ++c) {
      if (allowed[c] && tab.at(m, c) < -kPivotTol) {
        enter = c;
        break;
      }
    }
    if (enter == tab.cols()) return PhaseOutcome::Optimal;
    if (pivots >= max_pivots) return PhaseOutcome::IterationLimit;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tab.rhs(r) / a;
      if (ratio < best - 1e-15 || (leave != m && std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) return PhaseOutcome::Unbounded;
    tab.pivot(leave, enter);
    basis[leave] = enter;
    ++pivots;
  }
}

}  // namespace

LpResult maximize_lp(std::span<const double> c, const std::vector<std::vector<double>>& a_eq,
                     std::span<const double> b_eq, std::size_t max_pivots) {
  const std::size_t n = c.size();
  const std::size_t m = a_eq.size();
  if (b_eq.size() != m) throw ValidationError("maximize_lp: b has wrong length");
  for (const auto& row : a_eq)
    if (row.size() != n) throw ValidationError("maximize_lp: constraint row has wrong length");

  // Columns: n structural variables followed by m artificials.
  Tableau tab(m, n + m);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sgn = b_eq[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sgn * a_eq[r][j];
    tab.at(r, n + r) = 1.0;
    tab.rhs(r) = sgn * b_eq[r];
    basis[r] = n + r;
  }

  LpResult result;
  std::vector<double> phase1_cost(n + m, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1_cost[n + r] = -1.0;
  std::vector<bool> allowed(n + m, true);
  load_objective(tab, basis, phase1_cost);
  PhaseOutcome out = run_phase(tab, basis, allowed, result.pivots, max_pivots);
  if (out == PhaseOutcome::IterationLimit) return result;
  if (tab.rhs(m) < -1e-9) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.at(r, j)) > 1e-9) {
        tab.pivot(r, j);
        basis[r] = j;
        ++result.pivots;
        break;
      }
    }
  }

  std::vector<double> cost(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  for (std::size_t r = 0; r < m; ++r) allowed[n + r] = false;
  load_objective(tab, basis, cost);
  out = run_phase(tab, basis, allowed, result.pivots, max_pivots);
  if (out == PhaseOutcome::IterationLimit) return result;
  if (out == PhaseOutcome::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) result.x[basis[r]] = std::max(0.0, tab.rhs(r));
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += c[j] * result.x[j];
  result.value = value;
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace gcpcert

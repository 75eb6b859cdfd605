// Copyright 2026 The MutualCover Authors
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

#include "mcover/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "mcover/error.h"
#include "mcover/rng.h"

namespace mcover {

void SparseRowMatrix::AddRow(std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) {
              return a.column < b.column;
            });
  for (const SparseEntry& e : entries) {
    if (e.column >= num_columns_) {
      Fail(ErrorCode::kInvalidArgument,
           "constraint references column " + std::to_string(e.column) +
               " of " + std::to_string(num_columns_));
    }
    if (!entries_.empty() && entries_.size() > row_start_.back() &&
        entries_.back().column == e.column) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  row_start_.push_back(entries_.size());
}

SparseRowMatrix SparseRowMatrix::FromDense(
    const std::vector<std::vector<double>>& rows, std::size_t num_columns) {
  SparseRowMatrix m(num_columns);
  for (const auto& dense : rows) {
    if (dense.size() != num_columns) {
      Fail(ErrorCode::kInvalidArgument, "dense row has wrong width");
    }
    std::vector<SparseEntry> entries;
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (dense[j] != 0.0) entries.push_back({j, dense[j]});
    }
    m.AddRow(std::move(entries));
  }
  return m;
}

double SparseRowMatrix::RowDot(std::size_t r, std::span<const double> x) const {
  double sum = 0.0;
  for (const SparseEntry& e : row(r)) sum += e.value * x[e.column];
  return sum;
}

void LinearProgram::Validate() const {
  const std::size_t n = num_variables();
  if (eq_matrix.num_columns() != n || ub_matrix.num_columns() != n) {
    Fail(ErrorCode::kInvalidArgument,
         "constraint matrix width differs from the variable count");
  }
  if (eq_matrix.num_rows() != eq_rhs.size() ||
      ub_matrix.num_rows() != ub_rhs.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "right-hand side length differs from the constraint count");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(objective.begin(), objective.end(), finite) ||
      !std::all_of(eq_rhs.begin(), eq_rhs.end(), finite) ||
      !std::all_of(ub_rhs.begin(), ub_rhs.end(), finite)) {
    Fail(ErrorCode::kInvalidArgument, "non-finite coefficient");
  }
  for (const auto* m : {&eq_matrix, &ub_matrix}) {
    for (std::size_t r = 0; r < m->num_rows(); ++r) {
      for (const SparseEntry& e : m->row(r)) {
        if (!finite(e.value)) {
          Fail(ErrorCode::kInvalidArgument, "non-finite coefficient");
        }
      }
    }
  }
}

double LinearProgram::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (std::size_t r = 0; r < eq_matrix.num_rows(); ++r) {
    worst = std::max(worst, std::abs(eq_matrix.RowDot(r, x) - eq_rhs[r]));
  }
  for (std::size_t r = 0; r < ub_matrix.num_rows(); ++r) {
    worst = std::max(worst, ub_matrix.RowDot(r, x) - ub_rhs[r]);
  }
  return worst;
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kReducedCostTolerance = 1e-11;
constexpr double kDropTolerance = 1e-14;
constexpr double kHarrisSlack = 1e-11;
// Relative size of the right-hand-side shifts applied on a stall.
constexpr double kPerturbation = 1e-7;
constexpr int kMaxPerturbations = 3;

// Dense simplex tableau over structural and slack columns. Artificial
// variables are never stored as columns: once one leaves the basis it is
// discarded, so only its basis label is tracked.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SolverOptions& options)
      : options_(options),
        num_structural_(lp.num_variables()),
        num_slack_(lp.ub_matrix.num_rows()),
        num_rows_(lp.eq_matrix.num_rows() + lp.ub_matrix.num_rows()),
        num_cols_(num_structural_ + num_slack_),
        cells_(num_rows_ * num_cols_, 0.0),
        rhs_(num_rows_, 0.0),
        basis_(num_rows_, 0),
        is_basic_(num_cols_, false),
        active_(num_rows_, true),
        reduced_(num_cols_, 0.0) {
    std::size_t r = 0;
    auto load = [&](const SparseRowMatrix& m, std::size_t k, double b,
                    bool with_slack) {
      double sign = b < 0.0 ? -1.0 : 1.0;
      double* row = RowPtr(r);
      for (const SparseEntry& e : m.row(k)) row[e.column] = sign * e.value;
      rhs_[r] = sign * b;
      if (with_slack) {
        std::size_t slack = num_structural_ + k;
        row[slack] = sign;
        if (sign > 0.0) {
          SetBasic(r, slack);
          ++r;
          return;
        }
      }
      basis_[r] = ArtificialLabel(r);
      ++r;
    };
    for (std::size_t k = 0; k < lp.eq_matrix.num_rows(); ++k) {
      load(lp.eq_matrix, k, lp.eq_rhs[k], false);
    }
    for (std::size_t k = 0; k < lp.ub_matrix.num_rows(); ++k) {
      load(lp.ub_matrix, k, lp.ub_rhs[k], true);
    }
  }

  // Phase one: minimize the sum of artificials. Returns false if the
  // program is infeasible.
  bool RunPhaseOne() {
    std::fill(reduced_.begin(), reduced_.end(), 0.0);
    objective_ = 0.0;
    bool any = false;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!IsArtificial(basis_[r])) continue;
      any = true;
      const double* row = RowPtr(r);
      for (std::size_t j = 0; j < num_cols_; ++j) reduced_[j] -= row[j];
      objective_ += rhs_[r];
    }
    if (!any) return true;
    double scale = 1.0;
    for (double b : rhs_) scale = std::max(scale, std::abs(b));
    if (Iterate() != LpStatus::kOptimal) {
      Fail(ErrorCode::kInternal, "phase one reported an unbounded ray");
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (active_[r] && IsArtificial(basis_[r])) infeasibility += rhs_[r];
    }
    if (infeasibility > kFeasibilityTolerance * scale) return false;
    DriveOutArtificials();
    return true;
  }

  LpStatus RunPhaseTwo(std::span<const double> cost) {
    for (std::size_t j = 0; j < num_cols_; ++j) {
      reduced_[j] = j < num_structural_ ? cost[j] : 0.0;
    }
    objective_ = 0.0;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r]) continue;
      std::size_t b = basis_[r];
      double cb = b < num_structural_ ? cost[b] : 0.0;
      if (cb == 0.0) continue;
      const double* row = RowPtr(r);
      for (std::size_t j = 0; j < num_cols_; ++j) reduced_[j] -= cb * row[j];
      objective_ += cb * rhs_[r];
    }
    for (std::size_t j = 0; j < num_cols_; ++j) {
      if (is_basic_[j]) reduced_[j] = 0.0;
    }
    return Iterate();
  }

  std::vector<double> Primal() const {
    std::vector<double> x(num_structural_, 0.0);
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (active_[r] && basis_[r] < num_structural_) {
        x[basis_[r]] = std::max(0.0, rhs_[r]);
      }
    }
    return x;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  double* RowPtr(std::size_t r) { return cells_.data() + r * num_cols_; }
  const double* RowPtr(std::size_t r) const {
    return cells_.data() + r * num_cols_;
  }

  std::size_t ArtificialLabel(std::size_t r) const { return num_cols_ + r; }
  bool IsArtificial(std::size_t label) const { return label >= num_cols_; }

  void SetBasic(std::size_t r, std::size_t col) {
    basis_[r] = col;
    is_basic_[col] = true;
  }

  std::size_t ChooseEntering(bool bland) const {
    std::size_t best = num_cols_;
    double best_value = -kReducedCostTolerance;
    for (std::size_t j = 0; j < num_cols_; ++j) {
      if (is_basic_[j]) continue;
      double d = reduced_[j];
      if (bland) {
        if (d < -kReducedCostTolerance) return j;
      } else if (d < best_value) {
        best_value = d;
        best = j;
      }
    }
    return best;
  }

  // Two-pass (Harris) ratio test: the first pass finds the smallest step
  // allowed when every basic variable may dip kHarrisSlack below zero; the
  // second picks, among rows whose exact ratio fits that step, the largest
  // pivot element. Under Bland's rule the smallest basis label wins
  // instead. Returns num_rows_ if the column has no positive entry.
  std::size_t ChooseLeaving(std::size_t q, bool bland) const {
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r]) continue;
      double a = cells_[r * num_cols_ + q];
      if (a <= kPivotTolerance) continue;
      bound = std::min(bound, (std::max(rhs_[r], 0.0) + kHarrisSlack) / a);
    }
    if (bound == std::numeric_limits<double>::infinity()) return num_rows_;
    std::size_t best = num_rows_;
    double best_pivot = 0.0;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r]) continue;
      double a = cells_[r * num_cols_ + q];
      if (a <= kPivotTolerance) continue;
      if (std::max(rhs_[r], 0.0) / a > bound) continue;
      if (best == num_rows_) {
        best = r;
        best_pivot = a;
        continue;
      }
      bool art_r = IsArtificial(basis_[r]);
      bool art_best = IsArtificial(basis_[best]);
      bool take;
      if (art_r != art_best) {
        take = art_r;
      } else if (bland) {
        take = basis_[r] < basis_[best];
      } else {
        take = a > best_pivot;
      }
      if (take) {
        best = r;
        best_pivot = a;
      }
    }
    return best;
  }

  void Pivot(std::size_t p, std::size_t q) {
    double* prow = RowPtr(p);
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (std::size_t j = 0; j < num_cols_; ++j) {
      if (prow[j] == 0.0) continue;
      prow[j] *= inv;
      nz_.push_back(j);
    }
    prow[q] = 1.0;
    rhs_[p] *= inv;
    const double prhs = rhs_[p];
    if (perturbed_) pert_[p] *= inv;
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (r == p || !active_[r]) continue;
      double* row = RowPtr(r);
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) {
        double v = row[j] - f * prow[j];
        row[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      row[q] = 0.0;
      double b = rhs_[r] - f * prhs;
      // Basic values pushed marginally negative by the Harris step are
      // reset to zero.
      rhs_[r] = b < kDropTolerance && b > -10 * kHarrisSlack ? 0.0 : b;
      if (perturbed_) pert_[r] -= f * pert_[p];
    }
    const double f = reduced_[q];
    if (f != 0.0) {
      for (std::size_t j : nz_) {
        double v = reduced_[j] - f * prow[j];
        reduced_[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      objective_ += f * prhs;
    }
    reduced_[q] = 0.0;
    std::size_t leaving = basis_[p];
    if (!IsArtificial(leaving)) is_basic_[leaving] = false;
    basis_[p] = q;
    is_basic_[q] = true;
    ++iterations_;
  }

  LpStatus Iterate() {
    std::size_t degenerate_run = 0;
    int perturbations = 0;
    for (;;) {
      if (iterations_ >= options_.max_iterations) {
        Fail(ErrorCode::kInternal, "simplex iteration limit reached");
      }
      if (degenerate_run >= options_.stall_limit && !perturbed_ &&
          perturbations < kMaxPerturbations) {
        Perturb();
        ++perturbations;
        degenerate_run = 0;
      }
      const bool bland = options_.pivot_rule == PivotRule::kBland;
      std::size_t q = ChooseEntering(bland);
      if (q == num_cols_) {
        if (!perturbed_) return LpStatus::kOptimal;
        // The basis is optimal for the shifted program; restore the true
        // right-hand side and repair any infeasibility this exposes.
        RemovePerturbation();
        continue;
      }
      std::size_t p = ChooseLeaving(q, bland);
      if (p == num_rows_) {
        if (perturbed_) RemovePerturbation();
        return LpStatus::kUnbounded;
      }
      bool degenerate = rhs_[p] <= kDropTolerance;
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      Pivot(p, q);
    }
  }

  // Shifts every basic value up by a small row-dependent amount so that
  // degenerate vertices split apart. pert_ follows the shifts through later
  // pivots so they can be subtracted exactly.
  void Perturb() {
    pert_.assign(num_rows_, 0.0);
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r]) continue;
      const double unit =
          static_cast<double>(Mix64(r + 1) >> 11) * 0x1.0p-53;
      pert_[r] = kPerturbation * (1.0 + std::abs(rhs_[r])) * (1.0 + unit);
      rhs_[r] += pert_[r];
    }
    perturbed_ = true;
  }

  // Subtracts the shifts, then runs dual simplex pivots until every basic
  // value is non-negative again. Reduced costs stay non-negative throughout.
  void RemovePerturbation() {
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r]) continue;
      const double b = rhs_[r] - pert_[r];
      rhs_[r] = std::abs(b) < kDropTolerance ? 0.0 : b;
    }
    perturbed_ = false;
    for (;;) {
      if (iterations_ >= options_.max_iterations) {
        Fail(ErrorCode::kInternal, "simplex iteration limit reached");
      }
      std::size_t p = num_rows_;
      double most_negative = -kDropTolerance;
      for (std::size_t r = 0; r < num_rows_; ++r) {
        if (active_[r] && rhs_[r] < most_negative) {
          most_negative = rhs_[r];
          p = r;
        }
      }
      if (p == num_rows_) return;
      const double* row = RowPtr(p);
      std::size_t q = num_cols_;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (is_basic_[j] || row[j] >= -kPivotTolerance) continue;
        const double ratio = std::max(reduced_[j], 0.0) / -row[j];
        if (ratio < best_ratio ||
            (ratio == best_ratio && -row[j] > best_pivot)) {
          best_ratio = ratio;
          best_pivot = -row[j];
          q = j;
        }
      }
      if (q == num_cols_) {
        if (rhs_[p] < -kFeasibilityTolerance) {
          Fail(ErrorCode::kInternal,
               "basis lost feasibility after removing the perturbation");
        }
        rhs_[p] = 0.0;
        continue;
      }
      Pivot(p, q);
    }
  }

  void DriveOutArtificials() {
    for (std::size_t r = 0; r < num_rows_; ++r) {
      if (!active_[r] || !IsArtificial(basis_[r])) continue;
      const double* row = RowPtr(r);
      std::size_t best = num_cols_;
      double best_abs = kPivotTolerance;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (is_basic_[j]) continue;
        if (std::abs(row[j]) > best_abs) {
          best_abs = std::abs(row[j]);
          best = j;
        }
      }
      if (best == num_cols_) {
        // Redundant constraint: every non-artificial entry vanished.
        active_[r] = false;
        continue;
      }
      Pivot(r, best);
    }
  }

  const SolverOptions& options_;
  std::size_t num_structural_;
  std::size_t num_slack_;
  std::size_t num_rows_;
  std::size_t num_cols_;
  std::vector<double> cells_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<bool> active_;
  std::vector<double> reduced_;
  std::vector<std::size_t> nz_;
  std::vector<double> pert_;
  bool perturbed_ = false;
  double objective_ = 0.0;
  std::size_t iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& options) {
  lp.Validate();
  const std::size_t rows = lp.eq_matrix.num_rows() + lp.ub_matrix.num_rows();
  const std::size_t cols = lp.num_variables() + lp.ub_matrix.num_rows();
  if (cols != 0 && rows > options.max_tableau_cells / cols) {
    Fail(ErrorCode::kInvalidArgument,
         "program with " + std::to_string(rows) + " rows and " +
             std::to_string(cols) + " columns is too large to solve densely");
  }
  LpSolution solution;
  Tableau tableau(lp, options);
  if (!tableau.RunPhaseOne()) {
    solution.status = LpStatus::kInfeasible;
    solution.iterations = tableau.iterations();
    return solution;
  }
  solution.status = tableau.RunPhaseTwo(lp.objective);
  solution.iterations = tableau.iterations();
  if (solution.status != LpStatus::kOptimal) return solution;

  solution.x = tableau.Primal();
  double violation = lp.MaxViolation(solution.x);
  if (violation > kFeasibilityTolerance) {
    Fail(ErrorCode::kInternal, "simplex point violates a constraint by " +
                                   std::to_string(violation));
  }
  double objective = 0.0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    objective += lp.objective[j] * solution.x[j];
  }
  solution.objective_value = objective;
  return solution;
}

void WriteLpText(const LinearProgram& lp, std::ostream& out) {
  const std::size_t n = lp.num_variables();
  out << "lp " << n << " variables " << lp.eq_rhs.size() << " equalities "
      << lp.ub_rhs.size() << " inequalities\n";
  out << "min";
  for (double c : lp.objective) out << ' ' << c;
  out << '\n';
  std::vector<double> dense(n);
  auto emit = [&](const SparseRowMatrix& m, const std::vector<double>& rhs,
                  const char* op) {
    for (std::size_t r = 0; r < m.num_rows(); ++r) {
      std::fill(dense.begin(), dense.end(), 0.0);
      for (const SparseEntry& e : m.row(r)) dense[e.column] = e.value;
      for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << dense[j];
      out << ' ' << op << ' ' << rhs[r] << '\n';
    }
  };
  emit(lp.eq_matrix, lp.eq_rhs, "=");
  emit(lp.ub_matrix, lp.ub_rhs, "<=");
}

}  // namespace mcover

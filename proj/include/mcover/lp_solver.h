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

// A deterministic simplex solver for small and medium linear programs in
// the form
//
//   minimize    c . x
//   subject to  A_eq x  = b_eq
//               A_ub x <= b_ub
//               x >= 0
//
// Constraint matrices are stored row-sparse because the programs generated
// for random output tables have O(m) non-zeros per row out of O(m n)
// columns.

#ifndef MCOVER_LP_SOLVER_H_
#define MCOVER_LP_SOLVER_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace mcover {

// Primal feasibility tolerance for returned points.
inline constexpr double kFeasibilityTolerance = 1e-9;
// Bound on the gap between the returned and the true optimal objective.
inline constexpr double kOptimalityTolerance = 1e-8;

struct SparseEntry {
  std::size_t column;
  double value;
};

// Row-major sparse matrix. Entries within a row are kept sorted by column
// with duplicates merged.
class SparseRowMatrix {
 public:
  SparseRowMatrix() = default;
  explicit SparseRowMatrix(std::size_t num_columns)
      : num_columns_(num_columns) {}

  static SparseRowMatrix FromDense(
      const std::vector<std::vector<double>>& rows, std::size_t num_columns);

  void AddRow(std::vector<SparseEntry> entries);

  std::size_t num_rows() const { return row_start_.size() - 1; }
  std::size_t num_columns() const { return num_columns_; }
  std::size_t num_nonzeros() const { return entries_.size(); }

  std::span<const SparseEntry> row(std::size_t r) const {
    return {entries_.data() + row_start_[r],
            row_start_[r + 1] - row_start_[r]};
  }

  double RowDot(std::size_t r, std::span<const double> x) const;

 private:
  std::size_t num_columns_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<SparseEntry> entries_;
};

struct LinearProgram {
  std::vector<double> objective;
  SparseRowMatrix eq_matrix;
  std::vector<double> eq_rhs;
  SparseRowMatrix ub_matrix;
  std::vector<double> ub_rhs;

  explicit LinearProgram(std::size_t num_variables = 0)
      : objective(num_variables, 0.0),
        eq_matrix(num_variables),
        ub_matrix(num_variables) {}

  std::size_t num_variables() const { return objective.size(); }

  void AddEquality(std::vector<SparseEntry> entries, double rhs) {
    eq_matrix.AddRow(std::move(entries));
    eq_rhs.push_back(rhs);
  }
  void AddUpperBound(std::vector<SparseEntry> entries, double rhs) {
    ub_matrix.AddRow(std::move(entries));
    ub_rhs.push_back(rhs);
  }

  // Throws kInvalidArgument on inconsistent dimensions or non-finite data.
  void Validate() const;

  // Largest violation of any constraint (equality, inequality or sign) at x.
  double MaxViolation(std::span<const double> x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

// Entering-column choice. Under either rule a run of degenerate pivots
// shifts the right-hand side by small deterministic amounts; the shifts are
// removed at the optimum and dual simplex pivots restore feasibility.
enum class PivotRule {
  // Smallest index with negative reduced cost.
  kBland,
  // Most negative reduced cost.
  kDantzig,
};

struct SolverOptions {
  PivotRule pivot_rule = PivotRule::kDantzig;
  // Degenerate pivots tolerated before the right-hand side is shifted.
  std::size_t stall_limit = 32;
  std::size_t max_iterations = 5'000'000;
  // Largest dense tableau (rows x columns) attempted, 2 GiB of doubles.
  std::size_t max_tableau_cells = std::size_t{1} << 28;
};

// Solves lp with a two-phase tableau simplex. Optimal points are checked
// against every constraint at kFeasibilityTolerance before being returned;
// a failed check throws kInternal. Programs whose tableau would exceed
// options.max_tableau_cells throw kInvalidArgument.
LpSolution SolveLp(const LinearProgram& lp, const SolverOptions& options = {});

// Plain-text dump for offline cross-checking: a header line, the objective
// row, then one line per constraint "<coefficients...> <op> <rhs>" with
// op one of "=" or "<=". Dense, so intended for small problems.
void WriteLpText(const LinearProgram& lp, std::ostream& out);

}  // namespace mcover

#endif  // MCOVER_LP_SOLVER_H_

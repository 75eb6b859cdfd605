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

// Random output tables: for one group and one quasi-identifier, the m x n
// row-stochastic matrix whose entry (i, j) is the probability that record i
// is published with candidate value j. Tables are the optimum of a linear
// program that minimizes expected distance to the original values while
// keeping, in every column, the largest entry within delta of the column
// total.

#ifndef MCOVER_ROT_H_
#define MCOVER_ROT_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcover/lp_solver.h"
#include "mcover/table.h"

namespace mcover {

inline constexpr double kRotTolerance = 1e-9;

struct RandomOutputTable {
  std::string attribute;
  std::vector<std::size_t> records;  // table row of each matrix row
  std::vector<Value> candidates;     // column values, ascending
  std::vector<double> probabilities; // row-major records x candidates
  double delta = 1.0;
  double objective = 0.0;            // expected total distance

  std::size_t num_records() const { return records.size(); }
  std::size_t num_candidates() const { return candidates.size(); }
  double p(std::size_t i, std::size_t j) const {
    return probabilities[i * candidates.size() + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {probabilities.data() + i * candidates.size(), candidates.size()};
  }
};

// True iff delta * m >= 1 (up to rounding) and delta <= 1.
bool DeltaInRange(double delta, std::size_t m);

// Variables are p_ij row-major. Objective coefficients are
// distance(original_i, candidate_j). One equality per record makes its row
// sum to 1, and one inequality per entry,
//   (1 - delta) p_ij - delta * sum_{i' != i} p_i'j <= 0,
// bounds each entry by delta times its column total. Throws
// kInvalidArgument when delta lies outside [1/m, 1] or an input is empty.
LinearProgram BuildRotLp(std::span<const Value> originals,
                         const AttributeSchema& attr,
                         std::span<const Value> candidates, double delta);

// The same program over distinct original values with multiplicities:
// variable (u, j) is the probability that any record holding values[u] is
// published as candidate j, and the bound for (u, j) reads
//   (1 - delta w_u) q_uj - delta * sum_{u' != u} w_u' q_u'j <= 0.
// Records with equal values are interchangeable, so averaging any optimum
// over their permutations shows both programs have the same optimal value.
// With every multiplicity 1 it coincides with BuildRotLp.
LinearProgram BuildValueClassLp(std::span<const Value> values,
                                std::span<const std::size_t> multiplicities,
                                const AttributeSchema& attr,
                                std::span<const Value> candidates,
                                double delta);

// Solves the value-class program for the given rows, expands it to one row
// per record, then cleans the result into exact probability vectors. Throws kInvalidArgument when
// delta < 1/m and kInternal if the solver contradicts the uniform-matrix
// feasibility witness or the result breaks a table invariant.
RandomOutputTable ComputeRot(const Table& table,
                             std::span<const std::size_t> rows,
                             std::size_t attr, double delta,
                             CandidateMode mode,
                             const SolverOptions& options = {});

// Every column with positive mass has max / total <= delta + kRotTolerance.
bool VerifyDeltaProbability(const RandomOutputTable& rot);

// Minimum over non-zero columns of the count of strictly positive entries.
// Throws kInvalidArgument if every column is zero.
std::size_t MinColumnSupport(const RandomOutputTable& rot);

// Throws kInternal unless entries are non-negative, rows sum to 1, and the
// delta ratio and ceil(1/delta) support bounds hold.
void CheckRotInvariants(const RandomOutputTable& rot);

// Debug layout: header "record,<candidate...>", then one line per record.
void WriteRotCsv(const RandomOutputTable& rot, const AttributeSchema& attr,
                 std::ostream& out);

}  // namespace mcover

#endif  // MCOVER_ROT_H_

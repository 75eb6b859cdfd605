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

#include "mcover/rot.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "mcover/error.h"

namespace mcover {

namespace {

// Columns that break the bound with less total mass than this are solver
// residue and get emptied.
constexpr double kNoiseColumnMass = 1e-8;
// Largest relative row-sum correction accepted when renormalizing.
constexpr double kMaxRenormalization = 1e-8;

std::size_t RequiredSupport(double delta) {
  // ceil(1/delta), computed so that 1/(1/k) rounds to k exactly.
  double inv = 1.0 / delta;
  double k = std::ceil(inv - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, k));
}

}  // namespace

bool DeltaInRange(double delta, std::size_t m) {
  return m > 0 && std::isfinite(delta) && delta <= 1.0 &&
         delta * static_cast<double>(m) >= 1.0 - 1e-12;
}

LinearProgram BuildRotLp(std::span<const Value> originals,
                         const AttributeSchema& attr,
                         std::span<const Value> candidates, double delta) {
  std::vector<std::size_t> ones(originals.size(), 1);
  return BuildValueClassLp(originals, ones, attr, candidates, delta);
}

LinearProgram BuildValueClassLp(std::span<const Value> values,
                                std::span<const std::size_t> multiplicities,
                                const AttributeSchema& attr,
                                std::span<const Value> candidates,
                                double delta) {
  const std::size_t u = values.size();
  const std::size_t n = candidates.size();
  if (u == 0 || n == 0 || multiplicities.size() != u) {
    Fail(ErrorCode::kInvalidArgument,
         "random output table needs records and candidates");
  }
  std::size_t m = 0;
  for (std::size_t w : multiplicities) {
    if (w == 0) Fail(ErrorCode::kInvalidArgument, "zero multiplicity");
    m += w;
  }
  if (!DeltaInRange(delta, m)) {
    Fail(ErrorCode::kInvalidArgument,
         "delta " + std::to_string(delta) + " is outside [1/" +
             std::to_string(m) + ", 1] for a group of " + std::to_string(m));
  }
  LinearProgram lp(u * n);
  for (std::size_t i = 0; i < u; ++i) {
    const auto w = static_cast<double>(multiplicities[i]);
    for (std::size_t j = 0; j < n; ++j) {
      lp.objective[i * n + j] = w * attr.Distance(values[i], candidates[j]);
    }
  }
  for (std::size_t i = 0; i < u; ++i) {
    std::vector<SparseEntry> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) row.push_back({i * n + j, 1.0});
    lp.AddEquality(std::move(row), 1.0);
  }
  for (std::size_t i = 0; i < u; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<SparseEntry> row;
      row.reserve(u);
      for (std::size_t k = 0; k < u; ++k) {
        const double dw = delta * static_cast<double>(multiplicities[k]);
        row.push_back({k * n + j, k == i ? 1.0 - dw : -dw});
      }
      lp.AddUpperBound(std::move(row), 0.0);
    }
  }
  return lp;
}

RandomOutputTable ComputeRot(const Table& table,
                             std::span<const std::size_t> rows,
                             std::size_t attr, double delta,
                             CandidateMode mode,
                             const SolverOptions& options) {
  const AttributeSchema& schema = table.schema().qi(attr);
  RandomOutputTable rot;
  rot.attribute = schema.name();
  rot.records.assign(rows.begin(), rows.end());
  rot.candidates = CandidateValues(table, rows, attr, mode);
  rot.delta = delta;

  std::vector<Value> originals;
  originals.reserve(rows.size());
  for (std::size_t r : rows) originals.push_back(table.qi(r, attr));
  std::vector<Value> values = originals;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::size_t> counts(values.size(), 0);
  std::vector<std::size_t> value_class(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    value_class[i] = static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), originals[i]) -
        values.begin());
    ++counts[value_class[i]];
  }

  LinearProgram lp =
      BuildValueClassLp(values, counts, schema, rot.candidates, delta);
  LpSolution solution = SolveLp(lp, options);
  if (solution.status != LpStatus::kOptimal) {
    // The uniform matrix is always feasible for delta >= 1/m.
    Fail(ErrorCode::kInternal,
         "random output table program reported " +
             std::string(LpStatusName(solution.status)) + " for '" +
             rot.attribute + "'");
  }

  const std::size_t m = rows.size();
  const std::size_t n = rot.candidates.size();
  rot.probabilities.resize(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(solution.x.begin() + static_cast<std::ptrdiff_t>(value_class[i] * n),
                n, rot.probabilities.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  for (double& p : rot.probabilities) {
    if (p < -kRotTolerance) {
      Fail(ErrorCode::kInternal, "solver returned a negative probability");
    }
    if (p < 0.0) p = 0.0;
  }
  const std::size_t support = RequiredSupport(delta);
  for (int pass = 0; pass < 4; ++pass) {
    bool changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      double mass = 0.0;
      double max = 0.0;
      std::size_t positive = 0;
      for (std::size_t i = 0; i < m; ++i) {
        double p = rot.probabilities[i * n + j];
        mass += p;
        max = std::max(max, p);
        if (p > 0.0) ++positive;
      }
      if (mass == 0.0) continue;
      bool broken = max / mass > delta + kRotTolerance || positive < support;
      if (!broken || mass >= kNoiseColumnMass) continue;
      for (std::size_t i = 0; i < m; ++i) rot.probabilities[i * n + j] = 0.0;
      changed = true;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double* row = rot.probabilities.data() + i * n;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += row[j];
      if (std::abs(sum - 1.0) > kMaxRenormalization) {
        Fail(ErrorCode::kInternal, "random output table row sums to " +
                                       std::to_string(sum));
      }
      for (std::size_t j = 0; j < n; ++j) row[j] /= sum;
    }
    if (!changed) break;
  }
  double objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      objective += schema.Distance(originals[i], rot.candidates[j]) *
                   rot.probabilities[i * n + j];
    }
  }
  rot.objective = objective;
  CheckRotInvariants(rot);
  return rot;
}

bool VerifyDeltaProbability(const RandomOutputTable& rot) {
  const std::size_t m = rot.num_records();
  const std::size_t n = rot.num_candidates();
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    double max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      total += rot.p(i, j);
      max = std::max(max, rot.p(i, j));
    }
    if (total > 0.0 && max / total > rot.delta + kRotTolerance) return false;
  }
  return true;
}

std::size_t MinColumnSupport(const RandomOutputTable& rot) {
  std::size_t best = 0;
  bool any = false;
  for (std::size_t j = 0; j < rot.num_candidates(); ++j) {
    std::size_t positive = 0;
    for (std::size_t i = 0; i < rot.num_records(); ++i) {
      if (rot.p(i, j) > 0.0) ++positive;
    }
    if (positive == 0) continue;
    best = any ? std::min(best, positive) : positive;
    any = true;
  }
  if (!any) {
    Fail(ErrorCode::kInvalidArgument, "random output table has no mass");
  }
  return best;
}

void CheckRotInvariants(const RandomOutputTable& rot) {
  if (rot.probabilities.size() != rot.num_records() * rot.num_candidates()) {
    Fail(ErrorCode::kInternal, "random output table has the wrong shape");
  }
  for (std::size_t i = 0; i < rot.num_records(); ++i) {
    double sum = 0.0;
    for (double p : rot.row(i)) {
      if (!(p >= 0.0)) {
        Fail(ErrorCode::kInternal, "negative probability in '" +
                                       rot.attribute + "'");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRotTolerance) {
      Fail(ErrorCode::kInternal,
           "row of '" + rot.attribute + "' sums to " + std::to_string(sum));
    }
  }
  if (!VerifyDeltaProbability(rot)) {
    Fail(ErrorCode::kInternal,
         "table for '" + rot.attribute + "' breaks the delta bound");
  }
  if (MinColumnSupport(rot) < RequiredSupport(rot.delta)) {
    Fail(ErrorCode::kInternal, "table for '" + rot.attribute +
                                   "' has a column with too few records");
  }
}

void WriteRotCsv(const RandomOutputTable& rot, const AttributeSchema& attr,
                 std::ostream& out) {
  out << "record";
  for (Value v : rot.candidates) out << ',' << attr.Format(v);
  out << '\n';
  for (std::size_t i = 0; i < rot.num_records(); ++i) {
    out << rot.records[i];
    for (double p : rot.row(i)) out << ',' << p;
    out << '\n';
  }
}

}  // namespace mcover

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

#include "mcover/partition.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "mcover/error.h"

namespace mcover {

void Partition::CheckCovering() const {
  std::vector<bool> seen(source_rows, false);
  std::size_t covered = 0;
  for (const QIGroup& g : groups) {
    if (g.rows.empty()) Fail(ErrorCode::kInternal, "partition has an empty group");
    for (std::size_t r : g.rows) {
      if (r >= source_rows || seen[r]) {
        Fail(ErrorCode::kInternal,
             "row " + std::to_string(r) + " is out of range or repeated");
      }
      seen[r] = true;
      ++covered;
    }
  }
  if (covered != source_rows) {
    Fail(ErrorCode::kInternal, "partition does not cover every row");
  }
}

bool IsLDiverse(const Table& table, std::span<const std::size_t> rows, int l) {
  if (l < 1) Fail(ErrorCode::kInvalidArgument, "l must be positive");
  if (rows.empty()) return false;
  std::unordered_map<Value, std::size_t> counts;
  const auto limit = static_cast<std::size_t>(l);
  for (std::size_t r : rows) {
    // count / |rows| <= 1 / l, kept in integers.
    if (++counts[table.row(r).sensitive] * limit > rows.size()) return false;
  }
  return true;
}

DiversityPredicate LDiversity(int l) {
  if (l < 1) Fail(ErrorCode::kInvalidArgument, "l must be positive");
  return [l](const Table& table, std::span<const std::size_t> rows) {
    return IsLDiverse(table, rows, l);
  };
}

std::size_t ChooseAttribute(const Table& table,
                            std::span<const std::size_t> rows,
                            std::span<const std::size_t> candidates,
                            std::span<const double> table_range) {
  if (candidates.empty()) {
    Fail(ErrorCode::kInvalidArgument, "no candidate attributes");
  }
  std::size_t best = table.schema().num_qi();
  double best_width = -1.0;
  for (std::size_t k : candidates) {
    double width = table_range[k] > 0.0
                       ? MaxDistance(table, rows, k) / table_range[k]
                       : 0.0;
    if (width > best_width || (width == best_width && k < best)) {
      best = k;
      best_width = width;
    }
  }
  return best;
}

Value MedianValue(const Table& table, std::span<const std::size_t> rows,
                  std::size_t attr) {
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "median of no rows");
  std::vector<Value> values;
  values.reserve(rows.size());
  for (std::size_t r : rows) values.push_back(table.qi(r, attr));
  auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

Partition PartitionTable(const Table& table, const DiversityPredicate& accept) {
  Partition result;
  result.source_rows = table.size();
  std::vector<std::size_t> all = AllRows(table);
  if (!accept(table, all)) {
    Fail(ErrorCode::kInfeasiblePartition,
         "the whole table does not satisfy the diversity requirement");
  }
  const std::size_t d = table.schema().num_qi();
  std::vector<double> table_range(d);
  for (std::size_t k = 0; k < d; ++k) table_range[k] = MaxDistance(table, all, k);

  // Explicit stack instead of recursion; the big half is pushed first so
  // the small half is always finished first.
  std::vector<std::vector<std::size_t>> pending;
  pending.push_back(std::move(all));
  std::vector<std::size_t> small;
  std::vector<std::size_t> big;
  while (!pending.empty()) {
    std::vector<std::size_t> rows = std::move(pending.back());
    pending.pop_back();
    std::vector<std::size_t> candidates(d);
    for (std::size_t k = 0; k < d; ++k) candidates[k] = k;
    bool split = false;
    while (!candidates.empty()) {
      std::size_t attr = ChooseAttribute(table, rows, candidates, table_range);
      Value median = MedianValue(table, rows, attr);
      small.clear();
      big.clear();
      for (std::size_t r : rows) {
        (table.qi(r, attr) <= median ? small : big).push_back(r);
      }
      if (!small.empty() && !big.empty() && accept(table, small) &&
          accept(table, big)) {
        pending.push_back(big);
        pending.push_back(small);
        split = true;
        break;
      }
      candidates.erase(std::find(candidates.begin(), candidates.end(), attr));
    }
    if (!split) result.groups.push_back(QIGroup{std::move(rows)});
  }
  result.CheckCovering();
  for (const QIGroup& g : result.groups) {
    if (!accept(table, g.rows)) {
      Fail(ErrorCode::kInternal, "emitted group fails the diversity check");
    }
  }
  return result;
}

}  // namespace mcover

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

#ifndef MCOVER_PARTITION_H_
#define MCOVER_PARTITION_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mcover/table.h"

namespace mcover {

struct QIGroup {
  std::vector<std::size_t> rows;
};

struct Partition {
  std::vector<QIGroup> groups;
  std::size_t source_rows = 0;

  // Throws kInternal unless the groups are non-empty, pairwise disjoint
  // and together cover 0..source_rows-1.
  void CheckCovering() const;
};

// Decides whether a candidate group may be emitted. The default is
// l-diversity; other principles plug in here.
using DiversityPredicate =
    std::function<bool(const Table&, std::span<const std::size_t>)>;

// True iff rows is non-empty and every sensitive value accounts for at most
// 1/l of the rows.
bool IsLDiverse(const Table& table, std::span<const std::size_t> rows, int l);

DiversityPredicate LDiversity(int l);

// Picks the candidate attribute whose range within rows, normalized by its
// range over the whole table, is widest. Ties go to the earlier schema
// position. table_range[k] is MaxDistance over the whole table for QI k.
std::size_t ChooseAttribute(const Table& table,
                            std::span<const std::size_t> rows,
                            std::span<const std::size_t> candidates,
                            std::span<const double> table_range);

// Lower median of attr over rows in value order.
Value MedianValue(const Table& table, std::span<const std::size_t> rows,
                  std::size_t attr);

// Recursive median splitting: rows with value <= median form the small
// half, the rest the big half, and a split is taken only when the
// predicate accepts both halves. Groups are emitted small-before-big, so
// the result is a deterministic function of the inputs.
//
// Throws kInfeasiblePartition when the whole table fails the predicate.
Partition PartitionTable(const Table& table, const DiversityPredicate& accept);

inline Partition PartitionTable(const Table& table, int l) {
  return PartitionTable(table, LDiversity(l));
}

}  // namespace mcover

#endif  // MCOVER_PARTITION_H_

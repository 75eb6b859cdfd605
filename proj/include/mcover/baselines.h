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

// Comparison schemes: Mondrian generalization and Anatomy bucketization,
// both under l-diversity.

#ifndef MCOVER_BASELINES_H_
#define MCOVER_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mcover/partition.h"
#include "mcover/table.h"

namespace mcover {

// A generalized QI value. Continuous attributes use the interval [lo, hi];
// categorical ones the sorted label set.
struct GeneralizedCell {
  Value lo = 0;
  Value hi = 0;
  std::vector<Value> members;  // categorical only

  bool Contains(Value v) const;
  // Number of domain values the cell stands for.
  std::int64_t Width() const;
};

struct GeneralizedGroup {
  std::vector<std::size_t> rows;
  std::vector<GeneralizedCell> cells;  // one per QI attribute
};

struct GeneralizedTable {
  Schema schema;
  std::vector<std::string> header;
  std::vector<GeneralizedGroup> groups;
  std::vector<std::size_t> row_group;  // group of every row
  std::vector<Value> sensitive;        // per row, unchanged

  std::size_t size() const { return row_group.size(); }
  const GeneralizedCell& cell(std::size_t row, std::size_t attr) const {
    return groups[row_group[row]].cells[attr];
  }
};

// Partitions with PartitionTable and replaces each group's QI values by the
// group's min..max interval or label set.
GeneralizedTable MondrianGeneralize(const Table& table, int l);

// Columns follow the table header. Intervals print as "lo-hi", label sets
// as "{a|b}".
void WriteGeneralizedCsv(const GeneralizedTable& table, std::ostream& out);

struct BucketizedTables {
  Schema schema;
  std::vector<std::string> header;
  std::vector<std::vector<Value>> qi;          // per row, verbatim
  std::vector<std::size_t> row_bucket;         // bucket of every row
  std::vector<std::vector<Value>> bucket_values;  // sensitive values, sorted

  std::size_t size() const { return qi.size(); }
  std::size_t num_buckets() const { return bucket_values.size(); }
};

// Anatomy: while at least l sensitive values still have rows, takes one
// random row from each of the l most frequent values to form a bucket.
// Every leftover row joins a random bucket that lacks its value. Throws
// kInfeasiblePartition when some value occurs in more than 1/l of the rows.
BucketizedTables AnatomyBucketize(const Table& table, int l,
                                  std::uint64_t seed);

// QI table: the QI columns plus bucket_id, in row order.
void WriteAnatomyQiCsv(const BucketizedTables& tables, std::ostream& out);
// Sensitive table: bucket_id, the sensitive column and count.
void WriteAnatomySensitiveCsv(const BucketizedTables& tables,
                              std::ostream& out);

}  // namespace mcover

#endif  // MCOVER_BASELINES_H_

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

#ifndef MCOVER_TABLE_H_
#define MCOVER_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcover/schema.h"

namespace mcover {

struct Row {
  std::vector<Value> qi;  // one value per schema quasi-identifier
  Value sensitive = 0;

  friend bool operator==(const Row&, const Row&) = default;
};

// Immutable microdata table. Row identity is the 0-based position.
class Table {
 public:
  // Validates arity and domains of every row. The header lists the schema
  // attribute names in output column order and defaults to the schema
  // order (quasi-identifiers, then the sensitive attribute).
  Table(Schema schema, std::vector<Row> rows,
        std::vector<std::string> header = {});

  const Schema& schema() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(std::size_t i) const { return rows_[i]; }
  std::size_t size() const { return rows_.size(); }
  Value qi(std::size_t row, std::size_t attr) const {
    return rows_[row].qi[attr];
  }
  const std::vector<std::string>& header() const { return header_; }

  // A table with the same schema and header but different rows.
  Table WithRows(std::vector<Row> rows) const;

 private:
  Schema schema_;
  std::vector<Row> rows_;
  std::vector<std::string> header_;
};

// Reads a comma-separated table with a header row. Columns not named in the
// schema are dropped; rows keep file order. Cells are trimmed of
// surrounding whitespace. Errors name the 1-based line and the column.
Table ParseTableCsv(std::istream& in, const Schema& schema,
                    std::string_view source = "<input>");
Table LoadTable(const std::filesystem::path& csv_path, const Schema& schema);

void WriteTableCsv(const Table& table, std::ostream& out);
void SaveTableCsv(const Table& table, const std::filesystem::path& path);

// All row indices 0..n-1.
std::vector<std::size_t> AllRows(const Table& table);

enum class CandidateMode {
  // Sorted distinct values present in the rows.
  kObserved,
  // Every integer between the row minimum and maximum for continuous
  // attributes; identical to kObserved for categorical ones.
  kSpan,
};

std::string_view CandidateModeName(CandidateMode mode);
CandidateMode ParseCandidateMode(std::string_view name);

// Requires rows to be non-empty.
std::vector<Value> CandidateValues(const Table& table,
                                   std::span<const std::size_t> rows,
                                   std::size_t attr, CandidateMode mode);

// Largest pairwise distance among the values of attr in rows; 0 if they
// are all equal. Requires rows to be non-empty.
double MaxDistance(const Table& table, std::span<const std::size_t> rows,
                   std::size_t attr);

}  // namespace mcover

#endif  // MCOVER_TABLE_H_

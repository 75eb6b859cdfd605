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

#include "mcover/table.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "mcover/error.h"

namespace mcover {

namespace {

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::vector<std::string> DefaultHeader(const Schema& schema) {
  std::vector<std::string> header;
  for (const AttributeSchema& a : schema.quasi_identifiers()) {
    header.push_back(a.name());
  }
  header.push_back(schema.sensitive().name());
  return header;
}

}  // namespace

Table::Table(Schema schema, std::vector<Row> rows,
             std::vector<std::string> header)
    : schema_(std::move(schema)),
      rows_(std::move(rows)),
      header_(std::move(header)) {
  if (header_.empty()) header_ = DefaultHeader(schema_);
  if (header_.size() != schema_.num_qi() + 1) {
    Fail(ErrorCode::kInvalidArgument, "header does not match the schema");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    if (r.qi.size() != schema_.num_qi()) {
      Fail(ErrorCode::kShapeMismatch,
           "row " + std::to_string(i) + " has the wrong number of values");
    }
    for (std::size_t k = 0; k < r.qi.size(); ++k) {
      if (!schema_.qi(k).Contains(r.qi[k])) {
        Fail(ErrorCode::kDomainViolation,
             "row " + std::to_string(i) + " value of '" +
                 schema_.qi(k).name() + "' is outside its domain");
      }
    }
    if (!schema_.sensitive().Contains(r.sensitive)) {
      Fail(ErrorCode::kDomainViolation,
           "row " + std::to_string(i) + " sensitive value is outside '" +
               schema_.sensitive().name() + "'");
    }
  }
}

Table Table::WithRows(std::vector<Row> rows) const {
  return Table(schema_, std::move(rows), header_);
}

Table ParseTableCsv(std::istream& in, const Schema& schema,
                    std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  auto where = [&](std::string_view column) {
    return std::string(source) + ":" + std::to_string(line_no) + " column '" +
           std::string(column) + "': ";
  };

  std::vector<std::string_view> header_cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) {
    Fail(ErrorCode::kParse, std::string(source) + ": missing header row");
  }
  const std::string header_line = line;
  header_cells = SplitCsvLine(header_line);

  // Position of every schema attribute among the file columns.
  std::unordered_map<std::string_view, std::size_t> file_column;
  for (std::size_t c = 0; c < header_cells.size(); ++c) {
    file_column.emplace(header_cells[c], c);
  }
  auto locate = [&](const AttributeSchema& a) {
    auto it = file_column.find(a.name());
    if (it == file_column.end()) {
      Fail(ErrorCode::kMissingColumn,
           std::string(source) + ": no column named '" + a.name() + "'");
    }
    return it->second;
  };
  std::vector<std::size_t> qi_column;
  for (const AttributeSchema& a : schema.quasi_identifiers()) {
    qi_column.push_back(locate(a));
  }
  const std::size_t sensitive_column = locate(schema.sensitive());

  std::vector<std::pair<std::size_t, std::string>> ordered;
  for (std::size_t k = 0; k < schema.num_qi(); ++k) {
    ordered.emplace_back(qi_column[k], schema.qi(k).name());
  }
  ordered.emplace_back(sensitive_column, schema.sensitive().name());
  std::sort(ordered.begin(), ordered.end());
  std::vector<std::string> header;
  for (auto& [col, name] : ordered) header.push_back(name);

  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string_view> cells = SplitCsvLine(line);
    if (cells.size() != header_cells.size()) {
      Fail(ErrorCode::kParse, std::string(source) + ":" +
                                  std::to_string(line_no) + ": expected " +
                                  std::to_string(header_cells.size()) +
                                  " cells, found " +
                                  std::to_string(cells.size()));
    }
    auto parse = [&](const AttributeSchema& a, std::size_t column) {
      try {
        return a.Parse(cells[column]);
      } catch (const Error& e) {
        Fail(e.code(), where(a.name()) + e.what());
      }
    };
    Row row;
    row.qi.reserve(schema.num_qi());
    for (std::size_t k = 0; k < schema.num_qi(); ++k) {
      row.qi.push_back(parse(schema.qi(k), qi_column[k]));
    }
    row.sensitive = parse(schema.sensitive(), sensitive_column);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    Fail(ErrorCode::kParse, std::string(source) + ": no data rows");
  }
  return Table(schema, std::move(rows), std::move(header));
}

Table LoadTable(const std::filesystem::path& csv_path, const Schema& schema) {
  std::ifstream in(csv_path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + csv_path.string());
  return ParseTableCsv(in, schema, csv_path.string());
}

void WriteTableCsv(const Table& table, std::ostream& out) {
  const Schema& schema = table.schema();
  // Column c of the output holds qi index slot[c], or the sensitive value
  // when slot[c] == num_qi.
  std::vector<std::size_t> slot;
  for (std::size_t c = 0; c < table.header().size(); ++c) {
    if (c) out << ',';
    out << table.header()[c];
    slot.push_back(schema.QiIndex(table.header()[c]));
  }
  out << '\n';
  for (const Row& r : table.rows()) {
    for (std::size_t c = 0; c < slot.size(); ++c) {
      if (c) out << ',';
      if (slot[c] == schema.num_qi()) {
        out << schema.sensitive().Format(r.sensitive);
      } else {
        out << schema.qi(slot[c]).Format(r.qi[slot[c]]);
      }
    }
    out << '\n';
  }
}

void SaveTableCsv(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  WriteTableCsv(table, out);
  if (!out) Fail(ErrorCode::kIo, "failed writing " + path.string());
}

std::vector<std::size_t> AllRows(const Table& table) {
  std::vector<std::size_t> rows(table.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

std::string_view CandidateModeName(CandidateMode mode) {
  return mode == CandidateMode::kObserved ? "observed" : "span";
}

CandidateMode ParseCandidateMode(std::string_view name) {
  if (name == "observed") return CandidateMode::kObserved;
  if (name == "span") return CandidateMode::kSpan;
  Fail(ErrorCode::kInvalidArgument,
       "candidate mode must be 'observed' or 'span'");
}

std::vector<Value> CandidateValues(const Table& table,
                                   std::span<const std::size_t> rows,
                                   std::size_t attr, CandidateMode mode) {
  if (rows.empty()) {
    Fail(ErrorCode::kInvalidArgument, "candidate values of an empty group");
  }
  std::vector<Value> values;
  values.reserve(rows.size());
  for (std::size_t r : rows) values.push_back(table.qi(r, attr));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (mode == CandidateMode::kSpan && !table.schema().qi(attr).is_categorical()) {
    Value lo = values.front();
    Value hi = values.back();
    values.resize(static_cast<std::size_t>(hi - lo + 1));
    std::iota(values.begin(), values.end(), lo);
  }
  return values;
}

double MaxDistance(const Table& table, std::span<const std::size_t> rows,
                   std::size_t attr) {
  if (rows.empty()) {
    Fail(ErrorCode::kInvalidArgument, "max distance of an empty group");
  }
  const AttributeSchema& a = table.schema().qi(attr);
  if (a.distance_kind() == DistanceKind::kCategoricalMatrix) {
    std::vector<Value> distinct =
        CandidateValues(table, rows, attr, CandidateMode::kObserved);
    double best = 0.0;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) {
        best = std::max(best, a.Distance(distinct[i], distinct[j]));
      }
    }
    return best;
  }
  Value lo = table.qi(rows[0], attr);
  Value hi = lo;
  for (std::size_t r : rows) {
    lo = std::min(lo, table.qi(r, attr));
    hi = std::max(hi, table.qi(r, attr));
  }
  return a.Distance(lo, hi);
}

}  // namespace mcover

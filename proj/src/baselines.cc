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


#include "mcover/baselines.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "mcover/error.h"
#include "mcover/rng.h"

namespace mcover {

bool GeneralizedCell::Contains(Value v) const {
  if (members.empty()) return v >= lo && v <= hi;
  return std::binary_search(members.begin(), members.end(), v);
}

std::int64_t GeneralizedCell::Width() const {
  if (members.empty()) return hi - lo + 1;
  return static_cast<std::int64_t>(members.size());
}

GeneralizedTable MondrianGeneralize(const Table& table, int l) {
  Partition partition = PartitionTable(table, l);
  const Schema& schema = table.schema();
  GeneralizedTable out{schema, table.header(), {}, {}, {}};
  out.row_group.assign(table.size(), 0);
  for (std::size_t r = 0; r < table.size(); ++r) {
    out.sensitive.push_back(table.row(r).sensitive);
  }
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    GeneralizedGroup group;
    group.rows = std::move(partition.groups[g].rows);
    for (std::size_t k = 0; k < schema.num_qi(); ++k) {
      GeneralizedCell cell;
      cell.lo = cell.hi = table.qi(group.rows.front(), k);
      for (std::size_t r : group.rows) {
        cell.lo = std::min(cell.lo, table.qi(r, k));
        cell.hi = std::max(cell.hi, table.qi(r, k));
      }
      if (schema.qi(k).is_categorical()) {
        cell.members = CandidateValues(table, group.rows, k,
                                       CandidateMode::kObserved);
      }
      group.cells.push_back(std::move(cell));
    }
    for (std::size_t r : group.rows) out.row_group[r] = g;
    out.groups.push_back(std::move(group));
  }
  return out;
}

namespace {

std::string FormatCell(const AttributeSchema& attr,
                       const GeneralizedCell& cell) {
  if (!attr.is_categorical()) {
    return std::to_string(cell.lo) + "-" + std::to_string(cell.hi);
  }
  std::string text = "{";
  for (std::size_t i = 0; i < cell.members.size(); ++i) {
    if (i > 0) text += '|';
    text += attr.Format(cell.members[i]);
  }
  return text + "}";
}

// Header positions resolved to a QI index, or num_qi for the sensitive one.
std::vector<std::size_t> ColumnOrder(const Schema& schema,
                                     const std::vector<std::string>& header) {
  std::vector<std::size_t> order;
  for (const std::string& name : header) order.push_back(schema.QiIndex(name));
  return order;
}

void WriteJoined(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

void WriteGeneralizedCsv(const GeneralizedTable& table, std::ostream& out) {
  const Schema& schema = table.schema;
  std::vector<std::size_t> order = ColumnOrder(schema, table.header);
  WriteJoined(out, table.header);
  std::vector<std::string> cells(order.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t c = 0; c < order.size(); ++c) {
      std::size_t k = order[c];
      cells[c] = k == schema.num_qi()
                     ? schema.sensitive().Format(table.sensitive[r])
                     : FormatCell(schema.qi(k), table.cell(r, k));
    }
    WriteJoined(out, cells);
  }
}

BucketizedTables AnatomyBucketize(const Table& table, int l,
                                  std::uint64_t seed) {
  if (l < 1) Fail(ErrorCode::kInvalidArgument, "l must be positive");
  const std::size_t n = table.size();
  const auto ul = static_cast<std::size_t>(l);
  std::map<Value, std::vector<std::size_t>> by_value;
  for (std::size_t r = 0; r < n; ++r) {
    by_value[table.row(r).sensitive].push_back(r);
  }
  for (const auto& [value, rows] : by_value) {
    if (rows.size() * ul > n) {
      Fail(ErrorCode::kInfeasiblePartition,
           "sensitive value '" + table.schema().sensitive().Format(value) +
               "' occurs " + std::to_string(rows.size()) + " times in " +
               std::to_string(n) + " rows, more than 1/" + std::to_string(l));
    }
  }

  BucketizedTables out{table.schema(), table.header(), {}, {}, {}};
  out.row_bucket.assign(n, 0);
  for (const Row& row : table.rows()) out.qi.push_back(row.qi);
  RngStream rng = RngStream::Derive(seed, StreamTag::kAnatomy, {n});

  std::vector<std::pair<Value, std::vector<std::size_t>>> pools(
      by_value.begin(), by_value.end());
  std::vector<std::size_t> order(pools.size());
  while (true) {
    order.clear();
    for (std::size_t v = 0; v < pools.size(); ++v) {
      if (!pools[v].second.empty()) order.push_back(v);
    }
    if (order.size() < ul) break;
    // Most rows first; ties by value.
    std::partial_sort(order.begin(), order.begin() + l, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        std::size_t ca = pools[a].second.size();
                        std::size_t cb = pools[b].second.size();
                        return ca != cb ? ca > cb : a < b;
                      });
    const std::size_t bucket = out.bucket_values.size();
    std::vector<Value> values;
    for (std::size_t i = 0; i < ul; ++i) {
      std::vector<std::size_t>& rows = pools[order[i]].second;
      std::size_t pick = rng.UniformIndex(rows.size());
      std::swap(rows[pick], rows.back());
      out.row_bucket[rows.back()] = bucket;
      rows.pop_back();
      values.push_back(pools[order[i]].first);
    }
    std::sort(values.begin(), values.end());
    out.bucket_values.push_back(std::move(values));
  }

  for (auto& [value, rows] : pools) {
    for (std::size_t r : rows) {
      std::vector<std::size_t> open;
      for (std::size_t b = 0; b < out.bucket_values.size(); ++b) {
        const std::vector<Value>& vals = out.bucket_values[b];
        if (!std::binary_search(vals.begin(), vals.end(), value)) {
          open.push_back(b);
        }
      }
      if (open.empty()) {
        Fail(ErrorCode::kInternal, "no bucket can take a leftover row");
      }
      std::size_t b = open[rng.UniformIndex(open.size())];
      out.row_bucket[r] = b;
      std::vector<Value>& vals = out.bucket_values[b];
      vals.insert(std::upper_bound(vals.begin(), vals.end(), value), value);
    }
  }
  return out;
}

void WriteAnatomyQiCsv(const BucketizedTables& tables, std::ostream& out) {
  const Schema& schema = tables.schema;
  std::vector<std::size_t> order;
  std::vector<std::string> header;
  for (const std::string& name : tables.header) {
    std::size_t k = schema.QiIndex(name);
    if (k == schema.num_qi()) continue;
    order.push_back(k);
    header.push_back(name);
  }
  header.push_back("bucket_id");
  WriteJoined(out, header);
  std::vector<std::string> cells(header.size());
  for (std::size_t r = 0; r < tables.size(); ++r) {
    for (std::size_t c = 0; c < order.size(); ++c) {
      cells[c] = schema.qi(order[c]).Format(tables.qi[r][order[c]]);
    }
    cells.back() = std::to_string(tables.row_bucket[r]);
    WriteJoined(out, cells);
  }
}

void WriteAnatomySensitiveCsv(const BucketizedTables& tables,
                              std::ostream& out) {
  const AttributeSchema& sensitive = tables.schema.sensitive();
  out << "bucket_id," << sensitive.name() << ",count\n";
  for (std::size_t b = 0; b < tables.num_buckets(); ++b) {
    for (Value v : tables.bucket_values[b]) {
      out << b << ',' << sensitive.Format(v) << ",1\n";
    }
  }
}

}  // namespace mcover

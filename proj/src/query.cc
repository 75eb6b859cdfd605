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


#include "mcover/query.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "mcover/error.h"
#include "mcover/rng.h"

namespace mcover {

namespace {

constexpr std::array<CompareOp, 6> kOps = {
    CompareOp::kGreater,      CompareOp::kLess,      CompareOp::kEqual,
    CompareOp::kGreaterEqual, CompareOp::kLessEqual, CompareOp::kNotEqual};

// Attempts per query before a zero-sum workload is declared hopeless.
constexpr int kMaxDraws = 10000;

Predicate DrawPredicate(const AttributeSchema& attr, std::size_t k,
                        RngStream& rng) {
  Predicate p;
  p.attr = k;
  p.categorical = attr.is_categorical();
  if (p.categorical) {
    while (p.members.empty()) {
      for (Value v = attr.min_value(); v <= attr.max_value(); ++v) {
        if (rng.Bernoulli(0.5)) p.members.push_back(v);
      }
    }
  } else {
    p.op = kOps[rng.UniformIndex(kOps.size())];
    p.value = attr.min_value() + static_cast<Value>(rng.UniformIndex(
                                     static_cast<std::size_t>(attr.domain_size())));
  }
  return p;
}

SumQuery DrawQuery(const Schema& schema, RngStream& rng) {
  std::vector<std::size_t> attrs(schema.num_qi());
  std::iota(attrs.begin(), attrs.end(), 0);
  for (std::size_t i = 0; i < kPredicatesPerQuery; ++i) {
    std::size_t j = i + rng.UniformIndex(attrs.size() - i);
    std::swap(attrs[i], attrs[j]);
  }
  SumQuery query;
  for (std::size_t i = 0; i < kPredicatesPerQuery; ++i) {
    query.predicates.push_back(
        DrawPredicate(schema.qi(attrs[i]), attrs[i], rng));
  }
  return query;
}

}  // namespace

std::string_view CompareOpName(CompareOp op) {
  switch (op) {
    case CompareOp::kGreater: return ">";
    case CompareOp::kLess: return "<";
    case CompareOp::kEqual: return "=";
    case CompareOp::kGreaterEqual: return ">=";
    case CompareOp::kLessEqual: return "<=";
    case CompareOp::kNotEqual: return "!=";
  }
  return "?";
}

CompareOp ParseCompareOp(std::string_view name) {
  for (CompareOp op : kOps) {
    if (CompareOpName(op) == name) return op;
  }
  Fail(ErrorCode::kParse, "unknown operator '" + std::string(name) + "'");
}

bool Predicate::Matches(Value v) const {
  if (categorical) return std::binary_search(members.begin(), members.end(), v);
  switch (op) {
    case CompareOp::kGreater: return v > value;
    case CompareOp::kLess: return v < value;
    case CompareOp::kEqual: return v == value;
    case CompareOp::kGreaterEqual: return v >= value;
    case CompareOp::kLessEqual: return v <= value;
    case CompareOp::kNotEqual: return v != value;
  }
  return false;
}

std::int64_t Predicate::CountIn(const GeneralizedCell& cell) const {
  if (!cell.members.empty()) {
    std::int64_t count = 0;
    for (Value v : cell.members) count += Matches(v) ? 1 : 0;
    return count;
  }
  auto span = [&](Value lo, Value hi) -> std::int64_t {
    lo = std::max(lo, cell.lo);
    hi = std::min(hi, cell.hi);
    return hi < lo ? 0 : hi - lo + 1;
  };
  const bool inside = value >= cell.lo && value <= cell.hi;
  switch (op) {
    case CompareOp::kGreater: return span(value + 1, cell.hi);
    case CompareOp::kLess: return span(cell.lo, value - 1);
    case CompareOp::kEqual: return inside ? 1 : 0;
    case CompareOp::kGreaterEqual: return span(value, cell.hi);
    case CompareOp::kLessEqual: return span(cell.lo, value);
    case CompareOp::kNotEqual: return cell.Width() - (inside ? 1 : 0);
  }
  return 0;
}

bool SumQuery::Matches(std::span<const Value> qi) const {
  for (const Predicate& p : predicates) {
    if (!p.Matches(qi[p.attr])) return false;
  }
  return true;
}

QueryWorkload GenerateWorkload(const Schema& schema, std::size_t count,
                               std::uint64_t seed,
                               const Table* reject_zero_sum) {
  if (schema.num_qi() < kPredicatesPerQuery) {
    Fail(ErrorCode::kInvalidArgument,
         "workload queries need at least " +
             std::to_string(kPredicatesPerQuery) + " quasi-identifiers");
  }
  QueryWorkload workload;
  workload.seed = seed;
  RngStream rng = RngStream::Derive(seed, StreamTag::kWorkload, {});
  for (std::size_t q = 0; q < count; ++q) {
    SumQuery query = DrawQuery(schema, rng);
    for (int attempt = 1;
         reject_zero_sum != nullptr && ActualSum(query, *reject_zero_sum) == 0.0;
         ++attempt) {
      if (attempt == kMaxDraws) {
        Fail(ErrorCode::kInvalidArgument,
             "could not draw a query with a non-zero sum");
      }
      query = DrawQuery(schema, rng);
    }
    workload.queries.push_back(std::move(query));
  }
  return workload;
}

std::string WorkloadToJson(const QueryWorkload& workload,
                           const Schema& schema) {
  nlohmann::json doc;
  doc["seed"] = workload.seed;
  doc["queries"] = nlohmann::json::array();
  for (const SumQuery& query : workload.queries) {
    nlohmann::json preds = nlohmann::json::array();
    for (const Predicate& p : query.predicates) {
      const AttributeSchema& attr = schema.qi(p.attr);
      nlohmann::json item = {{"attr", attr.name()}};
      if (p.categorical) {
        std::vector<std::string> labels;
        for (Value v : p.members) labels.push_back(attr.Format(v));
        item["in"] = labels;
      } else {
        item["op"] = std::string(CompareOpName(p.op));
        item["value"] = p.value;
      }
      preds.push_back(std::move(item));
    }
    doc["queries"].push_back({{"predicates", std::move(preds)}});
  }
  return doc.dump(2);
}

QueryWorkload ParseWorkload(std::string_view json_text, const Schema& schema) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("workload: ") + e.what());
  }
  QueryWorkload workload;
  try {
    workload.seed = doc.value("seed", std::uint64_t{0});
    for (const nlohmann::json& q : doc.at("queries")) {
      SumQuery query;
      for (const nlohmann::json& item : q.at("predicates")) {
        Predicate p;
        const std::string name = item.at("attr").get<std::string>();
        p.attr = schema.QiIndex(name);
        if (p.attr == schema.num_qi()) {
          Fail(ErrorCode::kMissingColumn,
               "workload names unknown attribute '" + name + "'");
        }
        const AttributeSchema& attr = schema.qi(p.attr);
        p.categorical = attr.is_categorical();
        if (p.categorical) {
          for (const nlohmann::json& label : item.at("in")) {
            p.members.push_back(attr.Parse(label.get<std::string>()));
          }
          std::sort(p.members.begin(), p.members.end());
          p.members.erase(std::unique(p.members.begin(), p.members.end()),
                          p.members.end());
        } else {
          p.op = ParseCompareOp(item.at("op").get<std::string>());
          p.value = item.at("value").get<Value>();
        }
        query.predicates.push_back(std::move(p));
      }
      workload.queries.push_back(std::move(query));
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("workload: ") + e.what());
  }
  return workload;
}

double ActualSum(const SumQuery& query, const Table& table) {
  double sum = 0.0;
  for (const Row& row : table.rows()) {
    if (query.Matches(row.qi)) sum += static_cast<double>(row.sensitive);
  }
  return sum;
}

QueryAnswer AnswerRandomized(const SumQuery& query, const Table& published) {
  double sum = ActualSum(query, published);
  return {sum, sum, sum};
}

QueryAnswer AnswerGeneralized(const SumQuery& query,
                              const GeneralizedTable& published) {
  QueryAnswer answer;
  for (const GeneralizedGroup& group : published.groups) {
    bool inside = true;
    double fraction = 1.0;
    for (const Predicate& p : query.predicates) {
      const GeneralizedCell& cell = group.cells[p.attr];
      std::int64_t hit = p.CountIn(cell);
      std::int64_t width = cell.Width();
      if (hit != width) inside = false;
      fraction *= static_cast<double>(hit) / static_cast<double>(width);
    }
    if (fraction == 0.0) continue;
    double sum = 0.0;
    for (std::size_t r : group.rows) {
      sum += static_cast<double>(published.sensitive[r]);
    }
    answer.upper += sum;
    if (inside) answer.lower += sum;
    answer.estimate += fraction * sum;
  }
  return answer;
}

QueryAnswer AnswerAnatomy(const SumQuery& query,
                          const BucketizedTables& published) {
  std::vector<std::size_t> hits(published.num_buckets(), 0);
  for (std::size_t r = 0; r < published.size(); ++r) {
    if (query.Matches(published.qi[r])) ++hits[published.row_bucket[r]];
  }
  QueryAnswer answer;
  for (std::size_t b = 0; b < hits.size(); ++b) {
    const std::size_t k = hits[b];
    if (k == 0) continue;
    const std::vector<Value>& values = published.bucket_values[b];
    const std::size_t size = values.size();
    double total = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const auto v = static_cast<double>(values[i]);
      total += v;
      if (i < k) answer.lower += v;
      if (i >= size - k) answer.upper += v;
    }
    answer.estimate +=
        static_cast<double>(k) * total / static_cast<double>(size);
  }
  return answer;
}

QueryError RelativeError(const QueryAnswer& answer, double actual) {
  if (actual == 0.0) {
    Fail(ErrorCode::kInvalidArgument, "query has a zero actual sum");
  }
  const double scale = std::abs(actual);
  return {(answer.upper - answer.lower) / scale,
          std::abs(answer.estimate - actual) / scale};
}

}  // namespace mcover

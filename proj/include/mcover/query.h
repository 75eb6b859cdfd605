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


// SUM(sensitive) query workloads and their answers over each publication
// scheme.

#ifndef MCOVER_QUERY_H_
#define MCOVER_QUERY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcover/baselines.h"
#include "mcover/table.h"

namespace mcover {

enum class CompareOp { kGreater, kLess, kEqual, kGreaterEqual, kLessEqual,
                       kNotEqual };

std::string_view CompareOpName(CompareOp op);
CompareOp ParseCompareOp(std::string_view name);

// One condition on a QI attribute. Categorical attributes test membership
// in a value set; continuous ones compare against a constant.
struct Predicate {
  std::size_t attr = 0;
  bool categorical = false;
  CompareOp op = CompareOp::kEqual;
  Value value = 0;
  std::vector<Value> members;  // sorted, categorical only

  bool Matches(Value v) const;
  // Values of the cell that satisfy the predicate.
  std::int64_t CountIn(const GeneralizedCell& cell) const;
};

// SELECT SUM(sensitive) WHERE every predicate holds.
struct SumQuery {
  std::vector<Predicate> predicates;

  bool Matches(std::span<const Value> qi) const;
};

struct QueryWorkload {
  std::uint64_t seed = 0;
  std::vector<SumQuery> queries;
};

inline constexpr std::size_t kPredicatesPerQuery = 4;

// Each query constrains kPredicatesPerQuery distinct attributes chosen
// uniformly. A categorical predicate keeps each domain value with
// probability 1/2 (redrawn while empty); a continuous one takes a uniform
// operator and a uniform domain value. When a table is given, queries whose
// true sum is zero are redrawn. Throws kInvalidArgument for schemas with
// fewer than kPredicatesPerQuery quasi-identifiers.
QueryWorkload GenerateWorkload(const Schema& schema, std::size_t count,
                               std::uint64_t seed,
                               const Table* reject_zero_sum = nullptr);

std::string WorkloadToJson(const QueryWorkload& workload,
                           const Schema& schema);
QueryWorkload ParseWorkload(std::string_view json_text, const Schema& schema);

// Bounds and a best guess for a query's answer derived from a publication.
struct QueryAnswer {
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
};

double ActualSum(const SumQuery& query, const Table& table);

// Published values are taken at face value, so all three fields agree.
QueryAnswer AnswerRandomized(const SumQuery& query, const Table& published);

// Lower counts rows whose region lies inside the query, upper rows whose
// region meets it. The estimate weights each row by the fraction of its
// region inside the query.
QueryAnswer AnswerGeneralized(const SumQuery& query,
                              const GeneralizedTable& published);

// For k matching rows in a bucket: k times the bucket mean, between the sums
// of its k smallest and k largest sensitive values.
QueryAnswer AnswerAnatomy(const SumQuery& query,
                          const BucketizedTables& published);

struct QueryError {
  double interval = 0.0;  // (upper - lower) / actual
  double point = 0.0;     // |estimate - actual| / actual
};

// Throws kInvalidArgument when actual is zero.
QueryError RelativeError(const QueryAnswer& answer, double actual);

}  // namespace mcover

#endif  // MCOVER_QUERY_H_

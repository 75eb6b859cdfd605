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


#ifndef MCOVER_TESTS_TESTING_FIXTURES_H_
#define MCOVER_TESTS_TESTING_FIXTURES_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "mcover/error.h"
#include "mcover/table.h"

namespace mcover::testing {

// One continuous QI per range plus a continuous sensitive attribute.
inline Schema NumericSchema(const std::vector<std::pair<Value, Value>>& ranges,
                            Value s_lo = 0, Value s_hi = 1000) {
  std::vector<AttributeSchema> qi;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    qi.push_back(AttributeSchema::ContinuousInteger(
        "q" + std::to_string(k), ranges[k].first, ranges[k].second));
  }
  return Schema(std::move(qi),
                AttributeSchema::ContinuousInteger("s", s_lo, s_hi));
}

inline Table MakeTable(const Schema& schema,
                       const std::vector<std::vector<Value>>& qi,
                       const std::vector<Value>& sensitive) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < qi.size(); ++i) rows.push_back({qi[i], sensitive[i]});
  return Table(schema, std::move(rows));
}

// Random table with the given QI ranges whose sensitive values cycle through
// `distinct` labels, so every l <= distinct is feasible at the root when the
// row count is a multiple of distinct.
inline Table RandomTable(const Schema& schema, std::size_t rows,
                         std::size_t distinct, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Row> out;
  for (std::size_t i = 0; i < rows; ++i) {
    Row row;
    for (const AttributeSchema& a : schema.quasi_identifiers()) {
      std::uniform_int_distribution<Value> dist(a.min_value(), a.max_value());
      row.qi.push_back(dist(rng));
    }
    row.sensitive = schema.sensitive().min_value() +
                    static_cast<Value>(i % distinct);
    out.push_back(std::move(row));
  }
  return Table(schema, std::move(out));
}

// Runs fn and returns the ErrorCode it throws; fails the test otherwise.
template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an mcover::Error";
  return ErrorCode::kInternal;
}

}  // namespace mcover::testing

#endif  // MCOVER_TESTS_TESTING_FIXTURES_H_

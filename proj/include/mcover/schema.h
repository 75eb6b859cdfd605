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

#ifndef MCOVER_SCHEMA_H_
#define MCOVER_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mcover {

// Every cell is stored as an integer: the value itself for
// continuous-integer attributes, the 0-based label index for categorical
// ones. Ordering values numerically therefore orders categorical labels by
// their position in the schema domain.
using Value = std::int64_t;

enum class AttributeKind { kCategorical, kContinuousInteger };

enum class DistanceKind { kNumericL1, kCategoricalFlat, kCategoricalMatrix };

class AttributeSchema {
 public:
  // Flat 0/1 distance unless a matrix is given. Throws kInvalidArgument if
  // labels are empty or duplicated, or the matrix is not a symmetric,
  // non-negative, zero-diagonal |labels| x |labels| array.
  static AttributeSchema Categorical(
      std::string name, std::vector<std::string> labels,
      std::vector<std::vector<double>> distance_matrix = {});

  // Inclusive integer range with l1 distance. Requires lo <= hi.
  static AttributeSchema ContinuousInteger(std::string name, Value lo,
                                           Value hi);

  const std::string& name() const { return name_; }
  AttributeKind kind() const { return kind_; }
  DistanceKind distance_kind() const { return distance_kind_; }
  bool is_categorical() const { return kind_ == AttributeKind::kCategorical; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& distance_matrix() const {
    return matrix_;
  }

  // Smallest and largest valid Value.
  Value min_value() const { return lo_; }
  Value max_value() const { return hi_; }

  // |D_A|: label count or hi - lo + 1.
  std::int64_t domain_size() const { return hi_ - lo_ + 1; }

  bool Contains(Value v) const { return v >= lo_ && v <= hi_; }

  // Non-negative and symmetric. Throws kDomainViolation for values outside
  // the domain.
  double Distance(Value a, Value b) const;

  // Throws kParse for malformed integers and kDomainViolation for unknown
  // labels or out-of-range integers.
  Value Parse(std::string_view cell) const;
  std::string Format(Value v) const;

 private:
  AttributeSchema() = default;

  std::string name_;
  AttributeKind kind_ = AttributeKind::kContinuousInteger;
  DistanceKind distance_kind_ = DistanceKind::kNumericL1;
  Value lo_ = 0;
  Value hi_ = 0;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Value> label_index_;
  std::vector<std::vector<double>> matrix_;
};

class Schema {
 public:
  // Requires at least one quasi-identifier and distinct names.
  Schema(std::vector<AttributeSchema> quasi_identifiers,
         AttributeSchema sensitive);

  const std::vector<AttributeSchema>& quasi_identifiers() const {
    return qi_;
  }
  const AttributeSchema& qi(std::size_t k) const { return qi_[k]; }
  std::size_t num_qi() const { return qi_.size(); }
  const AttributeSchema& sensitive() const { return sensitive_; }

  // Index of a quasi-identifier by name, or num_qi() if absent.
  std::size_t QiIndex(std::string_view name) const;

 private:
  std::vector<AttributeSchema> qi_;
  AttributeSchema sensitive_;
};

// Schema documents are JSON:
//
//   {
//     "quasi_identifiers": [
//       {"name": "age", "kind": "continuous", "range": [17, 71]},
//       {"name": "sex", "kind": "categorical", "domain": ["F", "M"]},
//       {"name": "edu", "kind": "categorical", "domain": ["a", "b"],
//        "distance": {"categorical-matrix": [[0, 2], [2, 0]]}}
//     ],
//     "sensitive": {"name": "salary", "kind": "continuous",
//                   "range": [1, 851]}
//   }
//
// "kind" is "categorical" or "continuous" (integer valued). "distance" is
// optional: "numeric-l1" (the continuous default), "categorical-flat" (the
// categorical default) or {"categorical-matrix": [[...]]}.
Schema ParseSchema(std::string_view json_text);
Schema LoadSchema(const std::filesystem::path& path);
std::string SchemaToJson(const Schema& schema);

}  // namespace mcover

#endif  // MCOVER_SCHEMA_H_

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

#include "mcover/schema.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mcover/error.h"

namespace mcover {

using nlohmann::json;

AttributeSchema AttributeSchema::Categorical(
    std::string name, std::vector<std::string> labels,
    std::vector<std::vector<double>> distance_matrix) {
  if (labels.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "categorical attribute '" + name + "' has an empty domain");
  }
  AttributeSchema a;
  a.name_ = std::move(name);
  a.kind_ = AttributeKind::kCategorical;
  a.distance_kind_ = DistanceKind::kCategoricalFlat;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k].empty()) {
      Fail(ErrorCode::kInvalidArgument,
           "attribute '" + a.name_ + "' has an empty label");
    }
    if (!a.label_index_.emplace(labels[k], static_cast<Value>(k)).second) {
      Fail(ErrorCode::kInvalidArgument, "attribute '" + a.name_ +
                                            "' repeats label '" + labels[k] +
                                            "'");
    }
  }
  a.labels_ = std::move(labels);
  a.lo_ = 0;
  a.hi_ = static_cast<Value>(a.labels_.size()) - 1;
  if (!distance_matrix.empty()) {
    const std::size_t n = a.labels_.size();
    if (distance_matrix.size() != n) {
      Fail(ErrorCode::kInvalidArgument,
           "distance matrix of '" + a.name_ + "' must be " +
               std::to_string(n) + "x" + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (distance_matrix[i].size() != n) {
        Fail(ErrorCode::kInvalidArgument,
             "distance matrix of '" + a.name_ + "' is not square");
      }
      for (std::size_t j = 0; j < n; ++j) {
        double d = distance_matrix[i][j];
        if (!std::isfinite(d) || d < 0.0 || (i == j && d != 0.0)) {
          Fail(ErrorCode::kInvalidArgument,
               "distance matrix of '" + a.name_ +
                   "' needs finite non-negative entries and a zero diagonal");
        }
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (distance_matrix[i][j] != distance_matrix[j][i]) {
          Fail(ErrorCode::kInvalidArgument,
               "distance matrix of '" + a.name_ + "' is not symmetric");
        }
      }
    }
    a.matrix_ = std::move(distance_matrix);
    a.distance_kind_ = DistanceKind::kCategoricalMatrix;
  }
  return a;
}

AttributeSchema AttributeSchema::ContinuousInteger(std::string name, Value lo,
                                                   Value hi) {
  if (lo > hi) {
    Fail(ErrorCode::kInvalidArgument,
         "attribute '" + name + "' has an empty range");
  }
  AttributeSchema a;
  a.name_ = std::move(name);
  a.kind_ = AttributeKind::kContinuousInteger;
  a.distance_kind_ = DistanceKind::kNumericL1;
  a.lo_ = lo;
  a.hi_ = hi;
  return a;
}

double AttributeSchema::Distance(Value a, Value b) const {
  if (!Contains(a) || !Contains(b)) {
    Fail(ErrorCode::kDomainViolation,
         "value outside the domain of '" + name_ + "'");
  }
  switch (distance_kind_) {
    case DistanceKind::kNumericL1:
      return static_cast<double>(a > b ? a - b : b - a);
    case DistanceKind::kCategoricalFlat:
      return a == b ? 0.0 : 1.0;
    case DistanceKind::kCategoricalMatrix:
      return matrix_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  return 0.0;
}

Value AttributeSchema::Parse(std::string_view cell) const {
  if (kind_ == AttributeKind::kCategorical) {
    auto it = label_index_.find(std::string(cell));
    if (it == label_index_.end()) {
      Fail(ErrorCode::kDomainViolation, "'" + std::string(cell) +
                                            "' is not a label of '" + name_ +
                                            "'");
    }
    return it->second;
  }
  Value v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    Fail(ErrorCode::kParse, "'" + std::string(cell) +
                                "' is not an integer value for '" + name_ +
                                "'");
  }
  if (!Contains(v)) {
    Fail(ErrorCode::kDomainViolation,
         std::to_string(v) + " is outside [" + std::to_string(lo_) + ", " +
             std::to_string(hi_) + "] of '" + name_ + "'");
  }
  return v;
}

std::string AttributeSchema::Format(Value v) const {
  if (kind_ == AttributeKind::kCategorical) {
    return labels_.at(static_cast<std::size_t>(v));
  }
  return std::to_string(v);
}

Schema::Schema(std::vector<AttributeSchema> quasi_identifiers,
               AttributeSchema sensitive)
    : qi_(std::move(quasi_identifiers)), sensitive_(std::move(sensitive)) {
  if (qi_.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "schema needs at least one quasi-identifier");
  }
  std::set<std::string> names{sensitive_.name()};
  for (const AttributeSchema& a : qi_) {
    if (!names.insert(a.name()).second) {
      Fail(ErrorCode::kInvalidArgument,
           "attribute name '" + a.name() + "' appears twice");
    }
  }
}

std::size_t Schema::QiIndex(std::string_view name) const {
  for (std::size_t k = 0; k < qi_.size(); ++k) {
    if (qi_[k].name() == name) return k;
  }
  return qi_.size();
}

namespace {

AttributeSchema AttributeFromJson(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("kind")) {
    Fail(ErrorCode::kParse, "attribute entries need 'name' and 'kind'");
  }
  std::string name = j.at("name").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "continuous" || kind == "continuous-integer") {
    if (j.contains("distance") && j["distance"] != "numeric-l1") {
      Fail(ErrorCode::kParse,
           "continuous attribute '" + name + "' supports only numeric-l1");
    }
    const json& range = j.at("range");
    if (!range.is_array() || range.size() != 2) {
      Fail(ErrorCode::kParse, "'" + name + "' range must be [lo, hi]");
    }
    return AttributeSchema::ContinuousInteger(name, range[0].get<Value>(),
                                              range[1].get<Value>());
  }
  if (kind != "categorical") {
    Fail(ErrorCode::kParse, "unknown attribute kind '" + kind + "'");
  }
  auto labels = j.at("domain").get<std::vector<std::string>>();
  std::vector<std::vector<double>> matrix;
  if (j.contains("distance")) {
    const json& d = j["distance"];
    if (d.is_object() && d.contains("categorical-matrix")) {
      matrix = d["categorical-matrix"].get<std::vector<std::vector<double>>>();
    } else if (d != "categorical-flat") {
      Fail(ErrorCode::kParse, "unsupported distance for '" + name + "'");
    }
  }
  return AttributeSchema::Categorical(name, std::move(labels),
                                      std::move(matrix));
}

json AttributeToJson(const AttributeSchema& a) {
  json j;
  j["name"] = a.name();
  if (a.is_categorical()) {
    j["kind"] = "categorical";
    j["domain"] = a.labels();
    if (a.distance_kind() == DistanceKind::kCategoricalMatrix) {
      j["distance"] = {{"categorical-matrix", a.distance_matrix()}};
    } else {
      j["distance"] = "categorical-flat";
    }
  } else {
    j["kind"] = "continuous";
    j["range"] = {a.min_value(), a.max_value()};
    j["distance"] = "numeric-l1";
  }
  return j;
}

}  // namespace

Schema ParseSchema(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("schema is not valid JSON: ") +
                                e.what());
  }
  try {
    std::vector<AttributeSchema> qi;
    for (const json& a : doc.at("quasi_identifiers")) {
      qi.push_back(AttributeFromJson(a));
    }
    return Schema(std::move(qi), AttributeFromJson(doc.at("sensitive")));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed schema: ") + e.what());
  }
}

Schema LoadSchema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open schema " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseSchema(buffer.str());
}

std::string SchemaToJson(const Schema& schema) {
  json doc;
  doc["quasi_identifiers"] = json::array();
  for (const AttributeSchema& a : schema.quasi_identifiers()) {
    doc["quasi_identifiers"].push_back(AttributeToJson(a));
  }
  doc["sensitive"] = AttributeToJson(schema.sensitive());
  return doc.dump(2);
}

}  // namespace mcover

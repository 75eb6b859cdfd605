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

#include "mcover/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mcover/rng.h"

namespace mcover {

namespace {

enum Column : std::size_t {
  kGender,
  kAge,
  kRelationship,
  kMarital,
  kRace,
  kEducation,
  kHours,
};

std::vector<std::string> Labels(const std::string& prefix, int count) {
  std::vector<std::string> labels;
  for (int k = 0; k < count; ++k) labels.push_back(prefix + std::to_string(k));
  return labels;
}

Value Clamp(double v, Value lo, Value hi) {
  return std::clamp(static_cast<Value>(std::lround(v)), lo, hi);
}

std::size_t Pick(std::mt19937_64& engine, std::initializer_list<double> w) {
  std::discrete_distribution<std::size_t> dist(w);
  return dist(engine);
}

}  // namespace

Schema CensusSchema() {
  std::vector<AttributeSchema> qi;
  qi.push_back(AttributeSchema::Categorical("gender", {"Female", "Male"}));
  qi.push_back(AttributeSchema::ContinuousInteger("age", 17, 71));
  qi.push_back(AttributeSchema::Categorical("relationship", Labels("rel", 13)));
  qi.push_back(AttributeSchema::Categorical(
      "marital_status", {"never-married", "married", "separated", "divorced",
                         "widowed", "spouse-absent"}));
  qi.push_back(AttributeSchema::Categorical("race", Labels("race", 9)));
  qi.push_back(AttributeSchema::Categorical("education", Labels("edu", 10)));
  qi.push_back(AttributeSchema::ContinuousInteger("hours_per_week", 1, 95));
  return Schema(std::move(qi),
                AttributeSchema::ContinuousInteger("salary", 1, 851));
}

Table GenerateCensusLike(std::size_t rows, std::uint64_t seed) {
  Schema schema = CensusSchema();
  RngStream rng = RngStream::Derive(seed, StreamTag::kSynthetic, {rows});
  std::mt19937_64& engine = rng.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::gamma_distribution<double> age_shape(2.2, 8.5);

  std::vector<Row> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Row row;
    row.qi.resize(schema.num_qi());
    const bool male = rng.Bernoulli(0.67);
    row.qi[kGender] = male ? 1 : 0;
    const Value age = Clamp(17.0 + age_shape(engine), 17, 71);
    row.qi[kAge] = age;

    std::size_t marital;
    if (age < 25) {
      marital = Pick(engine, {0.85, 0.1, 0.02, 0.02, 0.0, 0.01});
    } else if (age < 45) {
      marital = Pick(engine, {0.3, 0.5, 0.04, 0.13, 0.01, 0.02});
    } else {
      marital = Pick(engine, {0.1, 0.58, 0.04, 0.17, 0.09, 0.02});
    }
    row.qi[kMarital] = static_cast<Value>(marital);

    std::size_t relationship;
    if (marital == 1) {
      relationship = male ? Pick(engine, {0.9, 0.02, 0.02, 0.02, 0.02, 0.02})
                          : Pick(engine, {0.05, 0.85, 0.03, 0.03, 0.02, 0.02});
    } else {
      relationship =
          2 + Pick(engine, {0.35, 0.2, 0.12, 0.08, 0.06, 0.05, 0.04, 0.03,
                            0.03, 0.02, 0.02});
    }
    row.qi[kRelationship] = static_cast<Value>(relationship);
    row.qi[kRace] = static_cast<Value>(
        Pick(engine, {0.82, 0.09, 0.03, 0.02, 0.01, 0.01, 0.01, 0.005, 0.005}));

    const std::size_t education =
        Pick(engine, {0.03, 0.05, 0.08, 0.32, 0.22, 0.05, 0.04, 0.16, 0.04,
                      0.01});
    row.qi[kEducation] = static_cast<Value>(education);

    double hours;
    if (rng.Bernoulli(0.47)) {
      hours = 40.0;
    } else {
      hours = 40.0 + 12.0 * normal(engine) + (male ? 3.0 : -3.0);
    }
    row.qi[kHours] = Clamp(hours, 1, 95);

    const double log_mean =
        4.6 + 0.14 * static_cast<double>(education) +
        0.018 * static_cast<double>(std::min<Value>(age, 55) - 17) +
        0.012 * (static_cast<double>(row.qi[kHours]) - 40.0) +
        (male ? 0.15 : 0.0);
    // Redrawn rather than clamped so the top of the range carries no spike.
    double salary;
    do {
      salary = std::exp(log_mean + 0.45 * normal(engine));
    } while (salary >= 851.5);
    row.sensitive = Clamp(salary, 1, 851);
    out.push_back(std::move(row));
  }
  return Table(std::move(schema), std::move(out));
}

}  // namespace mcover

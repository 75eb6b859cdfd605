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


#include "mcover/reid.h"

#include <bit>
#include <cstdint>
#include <string>

#include "mcover/error.h"

namespace mcover {

namespace {

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

double ValueReidProbability(std::span<const double> case_probs,
                            std::span<const double> target_included) {
  if (case_probs.size() != target_included.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "case and inclusion lists differ in length");
  }
  double total = 0.0;
  double risk = 0.0;
  for (std::size_t k = 0; k < case_probs.size(); ++k) {
    CheckProbability(case_probs[k], "case probability");
    CheckProbability(target_included[k], "inclusion probability");
    total += case_probs[k];
    if (k > 0) {
      risk += case_probs[k] * target_included[k] / static_cast<double>(k);
    }
  }
  if (total > 1.0 + 1e-12) {
    Fail(ErrorCode::kInvalidArgument,
         "case probabilities sum to " + std::to_string(total));
  }
  return risk;
}

std::vector<double> ExactCaseProbabilities(std::span<const double> emit_probs,
                                           std::size_t target) {
  const std::size_t m = emit_probs.size();
  if (m == 0 || m > kMaxExactRecords) {
    Fail(ErrorCode::kInvalidArgument,
         "exact enumeration needs 1 to " + std::to_string(kMaxExactRecords) +
             " records");
  }
  if (target >= m) Fail(ErrorCode::kInvalidArgument, "target out of range");
  for (double p : emit_probs) CheckProbability(p, "emission probability");

  std::vector<double> cases(m + 1, 0.0);
  const std::uint32_t target_bit = 1u << target;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (!(mask & target_bit)) continue;
    double p = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      p *= (mask >> i) & 1u ? emit_probs[i] : 1.0 - emit_probs[i];
    }
    cases[static_cast<std::size_t>(std::popcount(mask))] += p;
  }
  return cases;
}

double ExactReidProbability(std::span<const double> emit_probs,
                            std::size_t target) {
  std::vector<double> cases = ExactCaseProbabilities(emit_probs, target);
  std::vector<double> included(cases.size(), 1.0);
  return ValueReidProbability(cases, included);
}

}  // namespace mcover

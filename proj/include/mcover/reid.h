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


// Single-value re-identification risk for randomized publication.

#ifndef MCOVER_REID_H_
#define MCOVER_REID_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mcover {

// Largest record count ExactCaseProbabilities enumerates.
inline constexpr std::size_t kMaxExactRecords = 20;

// Sum over k >= 1 of case_probs[k] * target_included[k] / k: the chance an
// adversary who picks uniformly among the k records showing the target's
// value picks the target. case_probs[k] is the probability that exactly k
// records show the value; the remainder up to 1 is the no-match case.
// Throws kInvalidArgument for entries outside [0, 1], a total above 1 or
// mismatched lengths.
double ValueReidProbability(std::span<const double> case_probs,
                            std::span<const double> target_included);

// Entry k is the joint probability that the target emits its value and
// exactly k records emit it, given independent per-record emission
// probabilities. Requires at most kMaxExactRecords records.
std::vector<double> ExactCaseProbabilities(std::span<const double> emit_probs,
                                           std::size_t target);

// ValueReidProbability over ExactCaseProbabilities with the target always
// included.
double ExactReidProbability(std::span<const double> emit_probs,
                            std::size_t target);

}  // namespace mcover

#endif  // MCOVER_REID_H_

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


// Monte-Carlo estimate of identity and attribute disclosure for an
// adversary who knows a random subset of a target's original QI values.
//
// In each trial every original QI value of the target enters the matching
// predicate independently with probability p_match. The matching set is the
// published rows consistent with the predicate. The identity contribution
// is 1/|matches| when the target's own row matches and 0 otherwise; the
// attribute contribution is the expected share of matches carrying the
// target's sensitive value. Empty predicates and empty matching sets
// contribute 0. Reports average over rows and trials.

#ifndef MCOVER_DISCLOSURE_H_
#define MCOVER_DISCLOSURE_H_

#include <cstddef>
#include <cstdint>

#include "mcover/baselines.h"
#include "mcover/parallel.h"
#include "mcover/table.h"

namespace mcover {

struct DisclosureOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  Execution execution = Execution::kParallel;
};

struct DisclosureReport {
  double p_match = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double identity = 0.0;
  double attribute = 0.0;
};

// Randomized or otherwise exact-valued publication: a row matches when its
// published values equal the known ones.
DisclosureReport SimulateDisclosure(const Table& original,
                                    const Table& published, double p_match,
                                    const DisclosureOptions& options = {});

// A row matches when every known value lies in its generalized cell.
DisclosureReport SimulateDisclosure(const Table& original,
                                    const GeneralizedTable& published,
                                    double p_match,
                                    const DisclosureOptions& options = {});

// Matching runs on the verbatim QI table; a match carries the target's
// sensitive value with its bucket's share of that value.
DisclosureReport SimulateDisclosure(const Table& original,
                                    const BucketizedTables& published,
                                    double p_match,
                                    const DisclosureOptions& options = {});

}  // namespace mcover

#endif  // MCOVER_DISCLOSURE_H_

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

#ifndef MCOVER_ANONYMIZER_H_
#define MCOVER_ANONYMIZER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcover/lp_solver.h"
#include "mcover/parallel.h"
#include "mcover/partition.h"
#include "mcover/rng.h"
#include "mcover/rot.h"
#include "mcover/table.h"

namespace mcover {

enum class UnchangedPolicy {
  // Records that kept every original QI value get one value re-drawn.
  kPerturbOne,
  kOff,
};

std::string_view UnchangedPolicyName(UnchangedPolicy policy);
UnchangedPolicy ParseUnchangedPolicy(std::string_view name);

struct AnonymizationConfig {
  double delta = 1.0 / 6.0;
  int l = 10;
  std::uint64_t seed = 0;
  CandidateMode candidate_mode = CandidateMode::kSpan;
  UnchangedPolicy unchanged_policy = UnchangedPolicy::kPerturbOne;

  // Requires l >= 2 and 1/l <= delta <= 1.
  void Validate() const;
};

struct AnonymizeOptions {
  Execution execution = Execution::kParallel;
  SolverOptions solver;
  // When set, every random output table is written there as CSV. Debug
  // only: these files reveal the group structure.
  std::filesystem::path rot_debug_dir;
};

// Kept apart from the publishable table. Holds no row-to-group mapping.
struct Provenance {
  AnonymizationConfig config;
  std::size_t group_count = 0;
  std::vector<double> group_objectives;  // summed over QI attributes
  double total_objective = 0.0;
  std::size_t perturbed_rows = 0;
  std::size_t uncoverable_rows = 0;  // unchanged rows no draw could alter
};

struct AnonymizedTable {
  Table table;
  Provenance provenance;
};

// Partitions the table, replaces every QI value with a draw from its
// group's random output table, then (under kPerturbOne) re-draws one value
// of each record that came out unchanged. Row order and sensitive values
// are preserved. Results depend only on the inputs and the seed, not on the
// execution mode or thread count.
AnonymizedTable MutualCover(const Table& table,
                            const AnonymizationConfig& config,
                            const AnonymizeOptions& options = {});

struct GroupPlan {
  std::vector<RandomOutputTable> rots;  // one per QI attribute
  std::vector<double> weights;          // AttributeWeights of the group
};

// The seed-independent part of MutualCover: the partition and every random
// output table. One plan serves any number of seeded draws.
struct MutualCoverPlan {
  AnonymizationConfig config;
  Partition partition;
  std::vector<GroupPlan> groups;
};

MutualCoverPlan PlanMutualCover(const Table& table,
                                const AnonymizationConfig& config,
                                const AnonymizeOptions& options = {});

// Samples a published table from the plan with the given seed. Equal to
// MutualCover with plan.config and that seed.
AnonymizedTable PublishMutualCover(const Table& table,
                                   const MutualCoverPlan& plan,
                                   std::uint64_t seed,
                                   Execution execution = Execution::kParallel);

// Inverse-CDF draw of record i's replacement value.
Value SampleRow(const RandomOutputTable& rot, std::size_t record,
                RngStream& rng);

// Per QI attribute: range within the group over range in the whole table,
// with 0/0 read as 0. table_range[k] is MaxDistance over the whole table.
std::vector<double> AttributeWeights(const Table& table,
                                     std::span<const std::size_t> rows,
                                     std::span<const double> table_range);

struct UnchangedOutcome {
  std::size_t perturbed = 0;
  std::size_t uncoverable = 0;
};

// For each row of the group whose published QI vector equals its original,
// repeatedly picks an attribute with probability proportional to weights
// and re-draws that attribute uniformly from candidates[attr] until the
// vector differs. Rows that already differ are left alone. A row is
// counted uncoverable (and skipped) when no attribute has two candidates.
UnchangedOutcome RandomizeUnchanged(
    const Table& original, std::span<const std::size_t> rows,
    std::span<const std::vector<Value>> candidates,
    std::span<const double> weights, std::vector<Row>& published,
    RngStream& rng);

// Sidecar JSON with the config echo and objective totals.
void WriteProvenanceJson(const Provenance& provenance, std::ostream& out);

}  // namespace mcover

#endif  // MCOVER_ANONYMIZER_H_

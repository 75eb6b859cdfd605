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

#include "mcover/anonymizer.h"

#include <fstream>
#include <ostream>

#include "json.hpp"
#include "mcover/error.h"

namespace mcover {

std::string_view UnchangedPolicyName(UnchangedPolicy policy) {
  return policy == UnchangedPolicy::kPerturbOne ? "perturb-one" : "off";
}

UnchangedPolicy ParseUnchangedPolicy(std::string_view name) {
  if (name == "perturb-one") return UnchangedPolicy::kPerturbOne;
  if (name == "off") return UnchangedPolicy::kOff;
  Fail(ErrorCode::kInvalidArgument,
       "unchanged policy must be 'perturb-one' or 'off'");
}

void AnonymizationConfig::Validate() const {
  if (l < 2) Fail(ErrorCode::kInvalidArgument, "l must be at least 2");
  if (!(delta > 0.0) || delta > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "delta must lie in (0, 1]");
  }
  if (!DeltaInRange(delta, static_cast<std::size_t>(l))) {
    Fail(ErrorCode::kInvalidArgument,
         "delta " + std::to_string(delta) + " is below 1/l = 1/" +
             std::to_string(l));
  }
}

Value SampleRow(const RandomOutputTable& rot, std::size_t record,
                RngStream& rng) {
  std::span<const double> row = rot.row(record);
  const double u = rng.NextDouble();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    cumulative += row[j];
    last_positive = j;
    if (u < cumulative) return rot.candidates[j];
  }
  return rot.candidates[last_positive];
}

std::vector<double> AttributeWeights(const Table& table,
                                     std::span<const std::size_t> rows,
                                     std::span<const double> table_range) {
  const std::size_t d = table.schema().num_qi();
  std::vector<double> weights(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double group_range = MaxDistance(table, rows, k);
    if (group_range == 0.0) continue;
    if (table_range[k] <= 0.0) {
      Fail(ErrorCode::kInternal, "group range exceeds the table range");
    }
    weights[k] = group_range / table_range[k];
  }
  return weights;
}

UnchangedOutcome RandomizeUnchanged(
    const Table& original, std::span<const std::size_t> rows,
    std::span<const std::vector<Value>> candidates,
    std::span<const double> weights, std::vector<Row>& published,
    RngStream& rng) {
  const std::size_t d = original.schema().num_qi();
  std::vector<std::size_t> eligible;
  double total_weight = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (candidates[k].size() < 2) continue;
    eligible.push_back(k);
    total_weight += weights[k];
  }

  UnchangedOutcome outcome;
  for (std::size_t r : rows) {
    std::vector<Value>& values = published[r].qi;
    const std::vector<Value>& source = original.row(r).qi;
    if (values != source) continue;
    if (eligible.empty()) {
      ++outcome.uncoverable;
      continue;
    }
    while (values == source) {
      std::size_t attr = eligible.back();
      if (total_weight > 0.0) {
        double u = rng.NextDouble() * total_weight;
        double cumulative = 0.0;
        for (std::size_t k : eligible) {
          if (weights[k] <= 0.0) continue;
          cumulative += weights[k];
          attr = k;
          if (u < cumulative) break;
        }
      } else {
        attr = eligible[rng.UniformIndex(eligible.size())];
      }
      const std::vector<Value>& pool = candidates[attr];
      values[attr] = pool[rng.UniformIndex(pool.size())];
    }
    ++outcome.perturbed;
  }
  return outcome;
}

MutualCoverPlan PlanMutualCover(const Table& table,
                                const AnonymizationConfig& config,
                                const AnonymizeOptions& options) {
  config.Validate();
  MutualCoverPlan plan;
  plan.config = config;
  plan.partition = PartitionTable(table, config.l);
  const std::size_t d = table.schema().num_qi();
  std::vector<std::size_t> all = AllRows(table);
  std::vector<double> table_range(d);
  for (std::size_t k = 0; k < d; ++k) table_range[k] = MaxDistance(table, all, k);
  if (!options.rot_debug_dir.empty()) {
    std::filesystem::create_directories(options.rot_debug_dir);
  }

  const std::size_t groups = plan.partition.groups.size();
  plan.groups.resize(groups);
  ParallelFor(groups, options.execution, [&](std::size_t g) {
    const QIGroup& group = plan.partition.groups[g];
    GroupPlan& out = plan.groups[g];
    for (std::size_t k = 0; k < d; ++k) {
      out.rots.push_back(ComputeRot(table, group.rows, k, config.delta,
                                    config.candidate_mode, options.solver));
      if (!options.rot_debug_dir.empty()) {
        std::ofstream csv(options.rot_debug_dir /
                          ("group" + std::to_string(g) + "_" +
                           out.rots.back().attribute + ".csv"));
        WriteRotCsv(out.rots.back(), table.schema().qi(k), csv);
      }
    }
    out.weights = AttributeWeights(table, group.rows, table_range);
  });
  return plan;
}

AnonymizedTable PublishMutualCover(const Table& table,
                                   const MutualCoverPlan& plan,
                                   std::uint64_t seed, Execution execution) {
  const std::size_t groups = plan.partition.groups.size();
  if (plan.groups.size() != groups || plan.partition.source_rows != table.size()) {
    Fail(ErrorCode::kShapeMismatch, "plan does not belong to this table");
  }
  const std::size_t d = table.schema().num_qi();
  std::vector<Row> published = table.rows();
  std::vector<UnchangedOutcome> unchanged(groups);

  ParallelFor(groups, execution, [&](std::size_t g) {
    const QIGroup& group = plan.partition.groups[g];
    const GroupPlan& gp = plan.groups[g];
    std::vector<std::vector<Value>> candidates(d);
    for (std::size_t k = 0; k < d; ++k) {
      RngStream rng =
          RngStream::Derive(seed, StreamTag::kAttributeSampling, {g, k});
      for (std::size_t i = 0; i < group.rows.size(); ++i) {
        published[group.rows[i]].qi[k] = SampleRow(gp.rots[k], i, rng);
      }
      candidates[k] = gp.rots[k].candidates;
    }
    if (plan.config.unchanged_policy == UnchangedPolicy::kPerturbOne) {
      RngStream rng = RngStream::Derive(seed, StreamTag::kUnchanged, {g});
      unchanged[g] = RandomizeUnchanged(table, group.rows, candidates,
                                        gp.weights, published, rng);
    }
  });

  Provenance provenance;
  provenance.config = plan.config;
  provenance.config.seed = seed;
  provenance.group_count = groups;
  for (std::size_t g = 0; g < groups; ++g) {
    double objective = 0.0;
    for (const RandomOutputTable& rot : plan.groups[g].rots) {
      objective += rot.objective;
    }
    provenance.group_objectives.push_back(objective);
    provenance.total_objective += objective;
    provenance.perturbed_rows += unchanged[g].perturbed;
    provenance.uncoverable_rows += unchanged[g].uncoverable;
  }
  return AnonymizedTable{table.WithRows(std::move(published)),
                         std::move(provenance)};
}

AnonymizedTable MutualCover(const Table& table,
                            const AnonymizationConfig& config,
                            const AnonymizeOptions& options) {
  MutualCoverPlan plan = PlanMutualCover(table, config, options);
  return PublishMutualCover(table, plan, config.seed, options.execution);
}

void WriteProvenanceJson(const Provenance& provenance, std::ostream& out) {
  nlohmann::json doc;
  const AnonymizationConfig& c = provenance.config;
  doc["config"] = {
      {"delta", c.delta},
      {"l", c.l},
      {"seed", c.seed},
      {"candidate_mode", std::string(CandidateModeName(c.candidate_mode))},
      {"unchanged_policy", std::string(UnchangedPolicyName(c.unchanged_policy))},
  };
  doc["group_count"] = provenance.group_count;
  doc["group_objectives"] = provenance.group_objectives;
  doc["total_objective"] = provenance.total_objective;
  doc["perturbed_rows"] = provenance.perturbed_rows;
  doc["uncoverable_rows"] = provenance.uncoverable_rows;
  out << doc.dump(2) << '\n';
}

}  // namespace mcover

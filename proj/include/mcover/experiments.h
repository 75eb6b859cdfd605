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


// Repeated-run experiment grids over MutualCover and the baselines, with
// tidy CSV and JSON reporting.

#ifndef MCOVER_EXPERIMENTS_H_
#define MCOVER_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mcover/anonymizer.h"
#include "mcover/table.h"

namespace mcover {

struct ExperimentConfig {
  std::vector<double> deltas = {1.0 / 5, 1.0 / 6, 1.0 / 7, 1.0 / 8, 1.0 / 10};
  std::vector<double> p_matches = {0.3, 0.5, 0.7, 0.8, 0.9, 1.0};
  std::vector<int> ls = {10, 12, 15, 18, 20};
  // Fixed parameters for experiments that do not sweep them.
  double delta = 1.0 / 6;
  int l = 10;
  std::size_t repetitions = 10;
  std::size_t trials = 20;
  std::size_t queries = 1000;
  // Repetition r uses seed + r.
  std::uint64_t seed = 0;
  CandidateMode candidate_mode = CandidateMode::kSpan;
  UnchangedPolicy unchanged_policy = UnchangedPolicy::kPerturbOne;
  Execution execution = Execution::kParallel;
  SolverOptions solver;
};

// One configuration and metric, summarized over repetitions. Parameters
// that do not apply are NaN (delta, p_match) or 0 (l).
struct ExperimentRecord {
  std::string experiment;
  std::string scheme;
  double delta = 0.0;
  int l = 0;
  double p_match = 0.0;
  std::string metric;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
};

// Plans are seed independent, so every experiment on the same table and
// (delta, l) shares one.
class PlanCache {
 public:
  PlanCache(const Table& table, const ExperimentConfig& config)
      : table_(table), config_(config) {}

  const MutualCoverPlan& Get(double delta, int l);

 private:
  const Table& table_;
  ExperimentConfig config_;
  std::map<std::pair<double, int>, std::unique_ptr<MutualCoverPlan>> plans_;
};

// Identity and attribute disclosure for MutualCover at every delta (with
// config.l) and for Mondrian and Anatomy at config.l, each at every p_match.
std::vector<ExperimentRecord> RunDisclosureExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache);

// ILoss of MutualCover at every delta and of Mondrian, at config.l.
std::vector<ExperimentRecord> RunILossExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache);

// Mean point and interval relative error over one workload of
// config.queries queries, at config.delta and config.l.
std::vector<ExperimentRecord> RunQueryExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache);

// MutualCover ILoss and mean point query error at every l in config.ls,
// with config.delta.
std::vector<ExperimentRecord> RunLSweep(const Table& table,
                                        const ExperimentConfig& config,
                                        PlanCache& cache);

// Header: experiment,scheme,delta,l,p_match,metric,mean,min,max,
// repetitions,seed. Inapplicable parameters are left empty.
void WriteRecordsCsv(const std::vector<ExperimentRecord>& records,
                     std::ostream& out);

// Config echo, seeds and the records.
void WriteReportJson(const std::vector<ExperimentRecord>& records,
                     const ExperimentConfig& config, std::ostream& out);

}  // namespace mcover

#endif  // MCOVER_EXPERIMENTS_H_

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


#include "mcover/experiments.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "mcover/baselines.h"
#include "mcover/disclosure.h"
#include "mcover/metrics.h"
#include "mcover/query.h"

namespace mcover {

namespace {

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

class Stats {
 public:
  void Add(double x) {
    sum_ += x;
    min_ = count_ == 0 ? x : std::min(min_, x);
    max_ = count_ == 0 ? x : std::max(max_, x);
    ++count_;
  }

  ExperimentRecord Record(std::string experiment, std::string scheme,
                          double delta, int l, double p_match,
                          std::string metric, std::uint64_t seed) const {
    return {std::move(experiment), std::move(scheme), delta, l, p_match,
            std::move(metric), count_ ? sum_ / count_ : 0.0, min_, max_,
            count_, seed};
  }

 private:
  double sum_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  std::size_t count_ = 0;
};

DisclosureOptions Trials(const ExperimentConfig& config, std::uint64_t seed) {
  return {config.trials, seed, config.execution};
}

// Appends identity and attribute records of one scheme over p_match.
template <typename Publish>
void DisclosureRows(const Table& table, const ExperimentConfig& config,
                    const std::string& scheme, double delta,
                    Publish publish, std::vector<ExperimentRecord>& out) {
  const std::size_t np = config.p_matches.size();
  std::vector<Stats> identity(np);
  std::vector<Stats> attribute(np);
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    const std::uint64_t seed = config.seed + r;
    publish(seed, [&](const auto& view) {
      for (std::size_t p = 0; p < np; ++p) {
        DisclosureReport report = SimulateDisclosure(
            table, view, config.p_matches[p], Trials(config, seed));
        identity[p].Add(report.identity);
        attribute[p].Add(report.attribute);
      }
    });
  }
  for (std::size_t p = 0; p < np; ++p) {
    out.push_back(identity[p].Record("disclosure", scheme, delta, config.l,
                                     config.p_matches[p], "identity",
                                     config.seed));
    out.push_back(attribute[p].Record("disclosure", scheme, delta, config.l,
                                      config.p_matches[p], "attribute",
                                      config.seed));
  }
}

struct WorkloadErrors {
  double point = 0.0;
  double interval = 0.0;
};

template <typename Answer>
WorkloadErrors MeanErrors(const QueryWorkload& workload,
                          const std::vector<double>& actual,
                          Execution execution, Answer answer) {
  const std::size_t q = workload.queries.size();
  std::vector<QueryError> errors(q);
  ParallelFor(q, execution, [&](std::size_t i) {
    errors[i] = RelativeError(answer(workload.queries[i]), actual[i]);
  });
  WorkloadErrors mean;
  for (const QueryError& e : errors) {
    mean.point += e.point;
    mean.interval += e.interval;
  }
  if (q > 0) {
    mean.point /= static_cast<double>(q);
    mean.interval /= static_cast<double>(q);
  }
  return mean;
}

std::vector<double> ActualSums(const QueryWorkload& workload,
                               const Table& table) {
  std::vector<double> sums;
  for (const SumQuery& query : workload.queries) {
    sums.push_back(ActualSum(query, table));
  }
  return sums;
}

AnonymizedTable Publish(const Table& table, const MutualCoverPlan& plan,
                        const ExperimentConfig& config, std::uint64_t seed) {
  return PublishMutualCover(table, plan, seed, config.execution);
}

}  // namespace

const MutualCoverPlan& PlanCache::Get(double delta, int l) {
  std::unique_ptr<MutualCoverPlan>& slot = plans_[{delta, l}];
  if (!slot) {
    AnonymizationConfig anon;
    anon.delta = delta;
    anon.l = l;
    anon.seed = config_.seed;
    anon.candidate_mode = config_.candidate_mode;
    anon.unchanged_policy = config_.unchanged_policy;
    AnonymizeOptions options;
    options.execution = config_.execution;
    options.solver = config_.solver;
    slot = std::make_unique<MutualCoverPlan>(
        PlanMutualCover(table_, anon, options));
  }
  return *slot;
}

std::vector<ExperimentRecord> RunDisclosureExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache) {
  std::vector<ExperimentRecord> out;
  for (double delta : config.deltas) {
    const MutualCoverPlan& plan = cache.Get(delta, config.l);
    DisclosureRows(table, config, "mutual_cover", delta,
                   [&](std::uint64_t seed, auto&& evaluate) {
                     evaluate(Publish(table, plan, config, seed).table);
                   },
                   out);
  }
  GeneralizedTable mondrian = MondrianGeneralize(table, config.l);
  DisclosureRows(table, config, "mondrian", kNotApplicable,
                 [&](std::uint64_t, auto&& evaluate) { evaluate(mondrian); },
                 out);
  DisclosureRows(table, config, "anatomy", kNotApplicable,
                 [&](std::uint64_t seed, auto&& evaluate) {
                   evaluate(AnatomyBucketize(table, config.l, seed));
                 },
                 out);
  return out;
}

std::vector<ExperimentRecord> RunILossExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache) {
  std::vector<ExperimentRecord> out;
  for (double delta : config.deltas) {
    const MutualCoverPlan& plan = cache.Get(delta, config.l);
    Stats iloss;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      iloss.Add(ILoss(table, Publish(table, plan, config, config.seed + r).table));
    }
    out.push_back(iloss.Record("iloss", "mutual_cover", delta, config.l,
                               kNotApplicable, "iloss", config.seed));
  }
  Stats mondrian;
  mondrian.Add(GeneralizedILoss(MondrianGeneralize(table, config.l)));
  out.push_back(mondrian.Record("iloss", "mondrian", kNotApplicable, config.l,
                                kNotApplicable, "iloss", config.seed));
  return out;
}

std::vector<ExperimentRecord> RunQueryExperiment(
    const Table& table, const ExperimentConfig& config, PlanCache& cache) {
  QueryWorkload workload =
      GenerateWorkload(table.schema(), config.queries, config.seed, &table);
  std::vector<double> actual = ActualSums(workload, table);
  std::vector<ExperimentRecord> out;
  auto emit = [&](const std::string& scheme, double delta, const Stats& point,
                  const Stats& interval) {
    out.push_back(point.Record("query", scheme, delta, config.l,
                               kNotApplicable, "point_error", config.seed));
    out.push_back(interval.Record("query", scheme, delta, config.l,
                                  kNotApplicable, "interval_error",
                                  config.seed));
  };

  const MutualCoverPlan& plan = cache.Get(config.delta, config.l);
  Stats mc_point, mc_interval, an_point, an_interval;
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    const std::uint64_t seed = config.seed + r;
    Table published = Publish(table, plan, config, seed).table;
    WorkloadErrors mc = MeanErrors(
        workload, actual, config.execution,
        [&](const SumQuery& q) { return AnswerRandomized(q, published); });
    mc_point.Add(mc.point);
    mc_interval.Add(mc.interval);
    BucketizedTables anatomy = AnatomyBucketize(table, config.l, seed);
    WorkloadErrors an = MeanErrors(
        workload, actual, config.execution,
        [&](const SumQuery& q) { return AnswerAnatomy(q, anatomy); });
    an_point.Add(an.point);
    an_interval.Add(an.interval);
  }
  emit("mutual_cover", config.delta, mc_point, mc_interval);

  GeneralizedTable mondrian = MondrianGeneralize(table, config.l);
  WorkloadErrors mo = MeanErrors(
      workload, actual, config.execution,
      [&](const SumQuery& q) { return AnswerGeneralized(q, mondrian); });
  Stats mo_point, mo_interval;
  mo_point.Add(mo.point);
  mo_interval.Add(mo.interval);
  emit("mondrian", kNotApplicable, mo_point, mo_interval);
  emit("anatomy", kNotApplicable, an_point, an_interval);
  return out;
}

std::vector<ExperimentRecord> RunLSweep(const Table& table,
                                        const ExperimentConfig& config,
                                        PlanCache& cache) {
  QueryWorkload workload =
      GenerateWorkload(table.schema(), config.queries, config.seed, &table);
  std::vector<double> actual = ActualSums(workload, table);
  std::vector<ExperimentRecord> out;
  for (int l : config.ls) {
    const MutualCoverPlan& plan = cache.Get(config.delta, l);
    Stats iloss, point;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
      Table published = Publish(table, plan, config, config.seed + r).table;
      iloss.Add(ILoss(table, published));
      point.Add(MeanErrors(workload, actual, config.execution,
                           [&](const SumQuery& q) {
                             return AnswerRandomized(q, published);
                           })
                    .point);
    }
    out.push_back(iloss.Record("l_sweep", "mutual_cover", config.delta, l,
                               kNotApplicable, "iloss", config.seed));
    out.push_back(point.Record("l_sweep", "mutual_cover", config.delta, l,
                               kNotApplicable, "point_error", config.seed));
  }
  return out;
}

void WriteRecordsCsv(const std::vector<ExperimentRecord>& records,
                     std::ostream& out) {
  out << "experiment,scheme,delta,l,p_match,metric,mean,min,max,"
         "repetitions,seed\n";
  auto number = [&](double x) {
    if (!std::isnan(x)) out << x;
  };
  const auto precision = out.precision(10);
  for (const ExperimentRecord& r : records) {
    out << r.experiment << ',' << r.scheme << ',';
    number(r.delta);
    out << ',';
    if (r.l > 0) out << r.l;
    out << ',';
    number(r.p_match);
    out << ',' << r.metric << ',' << r.mean << ',' << r.min << ',' << r.max
        << ',' << r.repetitions << ',' << r.seed << '\n';
  }
  out.precision(precision);
}

void WriteReportJson(const std::vector<ExperimentRecord>& records,
                     const ExperimentConfig& config, std::ostream& out) {
  nlohmann::json doc;
  doc["config"] = {
      {"deltas", config.deltas},
      {"p_matches", config.p_matches},
      {"ls", config.ls},
      {"delta", config.delta},
      {"l", config.l},
      {"repetitions", config.repetitions},
      {"trials", config.trials},
      {"queries", config.queries},
      {"seed", config.seed},
      {"candidate_mode", std::string(CandidateModeName(config.candidate_mode))},
      {"unchanged_policy",
       std::string(UnchangedPolicyName(config.unchanged_policy))},
  };
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    seeds.push_back(config.seed + r);
  }
  doc["repetition_seeds"] = seeds;
  nlohmann::json rows = nlohmann::json::array();
  for (const ExperimentRecord& r : records) {
    nlohmann::json row = {{"experiment", r.experiment},
                          {"scheme", r.scheme},
                          {"metric", r.metric},
                          {"mean", r.mean},
                          {"min", r.min},
                          {"max", r.max},
                          {"repetitions", r.repetitions},
                          {"seed", r.seed}};
    row["delta"] = std::isnan(r.delta) ? nlohmann::json() : nlohmann::json(r.delta);
    row["l"] = r.l > 0 ? nlohmann::json(r.l) : nlohmann::json();
    row["p_match"] =
        std::isnan(r.p_match) ? nlohmann::json() : nlohmann::json(r.p_match);
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace mcover

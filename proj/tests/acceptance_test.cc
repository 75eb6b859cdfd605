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


// Acceptance run: prints one PASS/FAIL line per criterion. Exits non-zero
// on an exception, or with --strict when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mcover/anonymizer.h"
#include "mcover/baselines.h"
#include "mcover/disclosure.h"
#include "mcover/error.h"
#include "mcover/experiments.h"
#include "mcover/lp_solver.h"
#include "mcover/metrics.h"
#include "mcover/partition.h"
#include "mcover/reid.h"
#include "mcover/rot.h"
#include "mcover/synthetic.h"
#include "testing/lp_vertex_oracle.h"

namespace mcover {
namespace {

// Tolerances and sizes.
constexpr std::size_t kTableRows = 2000;
constexpr std::uint64_t kTableSeed = 1;
constexpr std::uint64_t kMasterSeed = 1;
constexpr int kL = 10;
constexpr double kDelta = 1.0 / 6.0;
constexpr double kRotTol = 1e-9;
constexpr double kPlanSeconds = 120.0;
constexpr int kFuzzGroups = 200;
constexpr int kLpCorpus = 50;
constexpr double kLpTol = 1e-6;
constexpr double kAnalyticTol = 1e-8;
constexpr double kReidTarget = 0.381;
constexpr double kReidTol = 0.0005;
constexpr double kInversionSlack = 0.02;
constexpr int kFuzzTables = 500;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

std::string Join(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ' ';
    out += Format("%.4g", x);
  }
  return out;
}

double Mean(const std::vector<ExperimentRecord>& records,
            std::string_view experiment, std::string_view scheme,
            std::string_view metric, double delta, int l) {
  for (const ExperimentRecord& r : records) {
    if (r.experiment != experiment || r.scheme != scheme || r.metric != metric)
      continue;
    if (!std::isnan(delta) && std::abs(r.delta - delta) > 1e-12) continue;
    if (l != 0 && r.l != l) continue;
    return r.mean;
  }
  throw Error(ErrorCode::kInternal, "missing record " + std::string(scheme) +
                                        "/" + std::string(metric));
}

std::size_t SupportBound(double delta) {
  return static_cast<std::size_t>(std::ceil(1.0 / delta - 1e-9));
}

class Acceptance {
 public:
  Acceptance() : table_(GenerateCensusLike(kTableRows, kTableSeed)) {
    config_.seed = kMasterSeed;
    cache_ = std::make_unique<PlanCache>(table_, config_);
  }

  Outcome DeltaConformance() {
    auto start = std::chrono::steady_clock::now();
    std::size_t rots = 0;
    std::size_t bad = 0;
    for (double delta : config_.deltas) {
      const MutualCoverPlan& plan = cache_->Get(delta, kL);
      for (const GroupPlan& group : plan.groups) {
        for (const RandomOutputTable& rot : group.rots) {
          ++rots;
          bool ok = true;
          for (std::size_t j = 0; j < rot.num_candidates(); ++j) {
            double total = 0.0;
            double top = 0.0;
            for (std::size_t i = 0; i < rot.num_records(); ++i) {
              total += rot.p(i, j);
              top = std::max(top, rot.p(i, j));
            }
            if (total > 0.0 && top > delta * total + kRotTol) ok = false;
          }
          if (!VerifyDeltaProbability(rot) ||
              MinColumnSupport(rot) < SupportBound(delta)) {
            ok = false;
          }
          if (!ok) ++bad;
        }
      }
    }
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return {bad == 0 && seconds < kPlanSeconds,
            Format("%.0f rots, %.0f violations, %.1f s", double(rots),
                   double(bad), seconds)};
  }

  Outcome Feasibility() {
    std::mt19937_64 rng(2026);
    std::vector<AttributeSchema> kinds = {
        AttributeSchema::ContinuousInteger("num", 0, 99),
        AttributeSchema::Categorical("flat", {"a", "b", "c", "d", "e"}),
        AttributeSchema::Categorical(
            "tree", {"a", "b", "c", "d"},
            {{0, 1, 2, 2}, {1, 0, 2, 2}, {2, 2, 0, 1}, {2, 2, 1, 0}})};
    Schema schema(kinds, AttributeSchema::ContinuousInteger("s", 0, 99));
    int failures = 0;
    for (int g = 0; g < kFuzzGroups; ++g) {
      const std::size_t m = 2 + rng() % 39;
      std::vector<Row> rows;
      for (std::size_t i = 0; i < m; ++i) {
        Row row;
        for (const AttributeSchema& a : kinds) {
          // Few distinct values half the time, to exercise duplicates.
          Value span = a.max_value() - a.min_value() + 1;
          if (g % 2 == 0) span = std::min<Value>(span, 3);
          row.qi.push_back(a.min_value() + static_cast<Value>(rng() % span));
        }
        row.sensitive = static_cast<Value>(i % 100);
        rows.push_back(std::move(row));
      }
      Table t(schema, std::move(rows));
      const double lo = 1.0 / static_cast<double>(m);
      double delta = g % 5 == 0 ? lo
                                : lo + (1.0 - lo) * std::uniform_real_distribution<>(
                                                        0.0, 1.0)(rng);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        for (CandidateMode mode : {CandidateMode::kObserved, CandidateMode::kSpan}) {
          try {
            ComputeRot(t, AllRows(t), k, delta, mode);
          } catch (const Error& e) {
            ++failures;
            std::fprintf(stderr, "group %d attr %zu: %s\n", g, k, e.what());
          }
        }
      }
    }
    return {failures == 0,
            Format("%.0f groups x 3 attributes x 2 modes, %.0f failures",
                   kFuzzGroups, failures)};
  }

  Outcome LpOracle() {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(-5, 5);
    int compared = 0;
    int optimal = 0;
    int mismatches = 0;
    double worst = 0.0;
    while (optimal < kLpCorpus) {
      const std::size_t n = 1 + rng() % 8;
      const std::size_t rows = 1 + rng() % 8;
      ::mcover::testing::DenseLp d;
      LinearProgram lp(n);
      for (std::size_t j = 0; j < n; ++j) d.c.push_back(coef(rng));
      lp.objective = d.c;
      for (std::size_t i = 0; i < rows; ++i) {
        std::vector<double> a;
        std::vector<SparseEntry> sparse;
        for (std::size_t j = 0; j < n; ++j) {
          a.push_back(coef(rng));
          if (a.back() != 0.0) sparse.push_back({j, a.back()});
        }
        if (rng() % 4 == 0) {
          d.a_eq.push_back(a);
          d.b_eq.push_back(coef(rng));
          lp.AddEquality(std::move(sparse), d.b_eq.back());
        } else {
          d.a_ub.push_back(a);
          d.b_ub.push_back(std::abs(coef(rng)));
          lp.AddUpperBound(std::move(sparse), d.b_ub.back());
        }
      }
      ::mcover::testing::OracleResult want =
          ::mcover::testing::SolveByVertexEnumeration(d);
      LpSolution got = SolveLp(lp);
      ++compared;
      const bool both_optimal =
          want.status == ::mcover::testing::OracleStatus::kOptimal &&
          got.status == LpStatus::kOptimal;
      if (both_optimal) {
        ++optimal;
        worst = std::max(worst, std::abs(got.objective_value - want.objective));
        if (std::abs(got.objective_value - want.objective) > kLpTol) ++mismatches;
      } else if ((want.status == ::mcover::testing::OracleStatus::kOptimal) !=
                     (got.status == LpStatus::kOptimal) ||
                 (want.status == ::mcover::testing::OracleStatus::kUnbounded) !=
                     (got.status == LpStatus::kUnbounded)) {
        ++mismatches;
      }
    }
    Table pair(::mcover::Schema({AttributeSchema::ContinuousInteger("a", 0, 10)},
                                AttributeSchema::ContinuousInteger("s", 0, 1)),
               {Row{{0}, 0}, Row{{10}, 1}});
    RandomOutputTable rot =
        ComputeRot(pair, AllRows(pair), 0, 0.5, CandidateMode::kSpan);
    const bool analytic = std::abs(rot.objective - 10.0) <= kAnalyticTol;
    return {mismatches == 0 && analytic,
            Format("%.0f optimal LPs, worst gap %.2g, two-record optimum %.10g",
                   optimal, worst, rot.objective) +
                " (" + std::to_string(compared) + " compared)"};
  }

  Outcome ReidArithmetic() {
    std::vector<double> cases = {0.0, 0.139, 0.374, 0.165};
    std::vector<double> included = {0.0, 1.0, 1.0, 1.0};
    double p = ValueReidProbability(cases, included);
    return {std::abs(p - kReidTarget) <= kReidTol, Format("%.6f", p)};
  }

  Outcome DeltaOneIdentity() {
    AnonymizationConfig c;
    c.delta = 1.0;
    c.l = kL;
    c.seed = kMasterSeed;
    c.unchanged_policy = UnchangedPolicy::kOff;
    AnonymizedTable out = MutualCover(table_, c);
    const bool same = out.table.rows() == table_.rows();
    const double loss = ILoss(table_, out.table);
    return {same && loss == 0.0,
            std::string(same ? "identical" : "differs") +
                Format(", iloss %.3g", loss)};
  }

  Outcome ZeroIdentityDisclosure() {
    double worst = 0.0;
    for (double delta : config_.deltas) {
      AnonymizedTable out =
          PublishMutualCover(table_, cache_->Get(delta, kL), kMasterSeed);
      DisclosureOptions options;
      options.trials = config_.trials;
      options.seed = kMasterSeed;
      worst = std::max(worst,
                       SimulateDisclosure(table_, out.table, 1.0, options).identity);
    }
    return {worst == 0.0, Format("max identity probability %.3g", worst)};
  }

  Outcome ILossTrend() {
    EnsureILoss();
    // Ascending delta.
    std::vector<double> deltas = config_.deltas;
    std::sort(deltas.begin(), deltas.end());
    std::vector<double> loss;
    for (double d : deltas) {
      loss.push_back(Mean(iloss_, "iloss", "mutual_cover", "iloss", d, kL));
    }
    int inversions = 0;
    bool small = true;
    for (std::size_t i = 1; i < loss.size(); ++i) {
      if (loss[i] > loss[i - 1]) {
        ++inversions;
        if (loss[i] > loss[i - 1] * (1.0 + kInversionSlack)) small = false;
      }
    }
    return {inversions == 0 || (inversions == 1 && small),
            "iloss at delta 1/10..1/5: " + Join(loss)};
  }

  Outcome VersusBaselines() {
    EnsureILoss();
    std::vector<ExperimentRecord> query = RunQueryExperiment(table_, config_, *cache_);
    const double mc_loss = Mean(iloss_, "iloss", "mutual_cover", "iloss", kDelta, kL);
    const double mondrian_loss = Mean(iloss_, "iloss", "mondrian", "iloss", NAN, kL);
    const double mc_err = Mean(query, "query", "mutual_cover", "point_error", kDelta, kL);
    const double mondrian_err =
        Mean(query, "query", "mondrian", "interval_error", NAN, kL);
    const double anatomy_err =
        Mean(query, "query", "anatomy", "interval_error", NAN, kL);
    const bool pass = mc_loss < mondrian_loss && mc_err < mondrian_err &&
                      mc_err < anatomy_err;
    return {pass, Format("iloss %.1f vs mondrian %.1f; ", mc_loss, mondrian_loss) +
                      Format("point error %.3f vs mondrian interval %.3f, "
                             "anatomy interval %.3f",
                             mc_err, mondrian_err, anatomy_err)};
  }

  Outcome LSweep() {
    std::vector<ExperimentRecord> sweep = RunLSweep(table_, config_, *cache_);
    std::vector<double> loss;
    std::vector<double> err;
    for (int l : config_.ls) {
      loss.push_back(Mean(sweep, "l_sweep", "mutual_cover", "iloss", kDelta, l));
      err.push_back(Mean(sweep, "l_sweep", "mutual_cover", "point_error", kDelta, l));
    }
    int loss_inversions = 0;
    int err_inversions = 0;
    for (std::size_t i = 1; i < loss.size(); ++i) {
      if (loss[i] >= loss[i - 1]) ++loss_inversions;
      if (err[i] < err[i - 1]) ++err_inversions;
    }
    return {loss_inversions <= 1 && err_inversions <= 1,
            "iloss " + Join(loss) + "; point error " + Join(err)};
  }

  Outcome Properties() {
    int failures = 0;
    // Partitions of fuzzed tables.
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < kFuzzTables; ++trial) {
      const std::size_t d = 1 + rng() % 4;
      std::vector<AttributeSchema> qi;
      for (std::size_t k = 0; k < d; ++k) {
        qi.push_back(AttributeSchema::ContinuousInteger(
            "q" + std::to_string(k), 0, Value(1 + rng() % 30)));
      }
      Schema schema(qi, AttributeSchema::ContinuousInteger("s", 0, 19));
      const int l = 2 + static_cast<int>(rng() % 5);
      const std::size_t distinct = l + rng() % 5;
      const std::size_t n = l * (1 + rng() % 30);
      std::vector<Row> rows;
      for (std::size_t i = 0; i < n; ++i) {
        Row row;
        for (const AttributeSchema& a : qi) {
          row.qi.push_back(static_cast<Value>(rng() % (a.max_value() + 1)));
        }
        row.sensitive = static_cast<Value>(i % distinct);
        rows.push_back(std::move(row));
      }
      std::shuffle(rows.begin(), rows.end(), rng);
      Table t(schema, std::move(rows));
      if (!IsLDiverse(t, AllRows(t), l)) continue;
      try {
        Partition p = PartitionTable(t, l);
        p.CheckCovering();
        for (const QIGroup& g : p.groups) {
          if (!IsLDiverse(t, g.rows, l)) ++failures;
        }
      } catch (const Error&) {
        ++failures;
      }
    }
    // Row-stochastic random output tables.
    for (double delta : config_.deltas) {
      for (const GroupPlan& g : cache_->Get(delta, kL).groups) {
        for (const RandomOutputTable& rot : g.rots) {
          for (std::size_t i = 0; i < rot.num_records(); ++i) {
            double sum = 0.0;
            for (double p : rot.row(i)) {
              if (p < 0.0) ++failures;
              sum += p;
            }
            if (std::abs(sum - 1.0) > kRotTol) ++failures;
          }
        }
      }
    }
    // Immutable sensitive column and reproducible output.
    AnonymizationConfig c;
    c.delta = kDelta;
    c.l = kL;
    c.seed = kMasterSeed;
    AnonymizedTable a = MutualCover(table_, c);
    AnonymizeOptions serial;
    serial.execution = Execution::kSerial;
    AnonymizedTable b = MutualCover(table_, c, serial);
    for (std::size_t r = 0; r < table_.size(); ++r) {
      if (a.table.row(r).sensitive != table_.row(r).sensitive) ++failures;
    }
    if (a.table.rows() != b.table.rows()) ++failures;
    return {failures == 0, Format("%.0f fuzzed tables, %.0f failures",
                                  kFuzzTables, failures)};
  }

 private:
  void EnsureILoss() {
    if (iloss_.empty()) iloss_ = RunILossExperiment(table_, config_, *cache_);
  }

  Table table_;
  ExperimentConfig config_;
  std::unique_ptr<PlanCache> cache_;
  std::vector<ExperimentRecord> iloss_;
};

}  // namespace
}  // namespace mcover

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::string_view(argv[1]) == "--strict";
  using mcover::Acceptance;
  using mcover::Outcome;
  struct Criterion {
    int id;
    const char* name;
    Outcome (Acceptance::*run)();
  };
  const Criterion criteria[] = {
      {1, "delta-probability conformance", &Acceptance::DeltaConformance},
      {2, "rot feasibility fuzz", &Acceptance::Feasibility},
      {3, "LP oracle equivalence", &Acceptance::LpOracle},
      {4, "re-identification arithmetic", &Acceptance::ReidArithmetic},
      {5, "delta=1 identity", &Acceptance::DeltaOneIdentity},
      {6, "zero identity disclosure at p_match=1",
       &Acceptance::ZeroIdentityDisclosure},
      {7, "iloss falls as delta grows", &Acceptance::ILossTrend},
      {8, "mutual cover vs Mondrian and Anatomy", &Acceptance::VersusBaselines},
      {9, "l sweep trends", &Acceptance::LSweep},
      {10, "property suites", &Acceptance::Properties},
  };
  try {
    Acceptance acceptance;
    int failed = 0;
    for (const Criterion& c : criteria) {
      Outcome o = (acceptance.*c.run)();
      if (!o.pass) ++failed;
      std::printf("criterion %2d %s: %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL",
                  c.name, o.detail.c_str());
      std::fflush(stdout);
    }
    std::printf("%d of 10 criteria pass\n", 10 - failed);
    return strict && failed > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
}

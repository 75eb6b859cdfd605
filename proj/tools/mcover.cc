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


// mcover: anonymize microdata with mutual cover, produce baseline
// publications, generate query workloads and run the evaluation grids.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcover/anonymizer.h"
#include "mcover/baselines.h"
#include "mcover/disclosure.h"
#include "mcover/error.h"
#include "mcover/experiments.h"
#include "mcover/metrics.h"
#include "mcover/query.h"
#include "mcover/synthetic.h"
#include "mcover/table.h"

namespace mcover {
namespace {

namespace fs = std::filesystem;

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void CloseOutput(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) Fail(ErrorCode::kIo, "failed writing " + path.string());
}

fs::path WithSuffix(const fs::path& path, const std::string& suffix) {
  fs::path out = path;
  out.replace_extension();
  return out.string() + suffix;
}

Execution ExecutionFor(bool serial) {
  return serial ? Execution::kSerial : Execution::kParallel;
}

struct TableArgs {
  std::string input;
  std::string schema;
};

void AddTableOptions(CLI::App* cmd, TableArgs& args, bool required = true) {
  auto* input = cmd->add_option("--input", args.input, "Microdata CSV")
                    ->check(CLI::ExistingFile);
  auto* schema = cmd->add_option("--schema", args.schema, "Schema JSON")
                     ->check(CLI::ExistingFile);
  if (required) {
    input->required();
    schema->required();
  }
}

// anonymize

struct AnonymizeArgs {
  TableArgs table;
  std::string output;
  std::string provenance;
  std::string rot_debug_dir;
  double delta = 1.0 / 6.0;
  int l = 10;
  std::uint64_t seed = 0;
  std::string candidate_mode = "span";
  std::string unchanged_policy = "perturb-one";
  bool serial = false;
};

void RunAnonymize(const AnonymizeArgs& a) {
  AnonymizationConfig config;
  config.delta = a.delta;
  config.l = a.l;
  config.seed = a.seed;
  config.candidate_mode = ParseCandidateMode(a.candidate_mode);
  config.unchanged_policy = ParseUnchangedPolicy(a.unchanged_policy);
  config.Validate();
  Schema schema = LoadSchema(a.table.schema);
  Table table = LoadTable(a.table.input, schema);

  AnonymizeOptions options;
  options.execution = ExecutionFor(a.serial);
  options.rot_debug_dir = a.rot_debug_dir;
  AnonymizedTable out = MutualCover(table, config, options);

  std::ofstream csv = OpenOutput(a.output);
  WriteTableCsv(out.table, csv);
  CloseOutput(csv, a.output);
  const fs::path sidecar = a.provenance.empty()
                               ? WithSuffix(a.output, ".provenance.json")
                               : fs::path(a.provenance);
  std::ofstream json = OpenOutput(sidecar);
  WriteProvenanceJson(out.provenance, json);
  CloseOutput(json, sidecar);
  std::cout << "groups " << out.provenance.group_count << "\n"
            << "total_objective " << out.provenance.total_objective << "\n"
            << "perturbed_rows " << out.provenance.perturbed_rows << "\n";
}

// baseline

struct BaselineArgs {
  TableArgs table;
  std::string scheme;
  std::string output;
  std::string sensitive_output;
  int l = 10;
  std::uint64_t seed = 0;
};

void RunBaseline(const BaselineArgs& a) {
  Schema schema = LoadSchema(a.table.schema);
  Table table = LoadTable(a.table.input, schema);
  if (a.scheme == "mondrian") {
    GeneralizedTable g = MondrianGeneralize(table, a.l);
    std::ofstream csv = OpenOutput(a.output);
    WriteGeneralizedCsv(g, csv);
    CloseOutput(csv, a.output);
    std::cout << "groups " << g.groups.size() << "\n"
              << "iloss " << GeneralizedILoss(g) << "\n";
    return;
  }
  BucketizedTables b = AnatomyBucketize(table, a.l, a.seed);
  const fs::path st = a.sensitive_output.empty()
                          ? WithSuffix(a.output, ".sensitive.csv")
                          : fs::path(a.sensitive_output);
  std::ofstream qi = OpenOutput(a.output);
  WriteAnatomyQiCsv(b, qi);
  CloseOutput(qi, a.output);
  std::ofstream sens = OpenOutput(st);
  WriteAnatomySensitiveCsv(b, sens);
  CloseOutput(sens, st);
  std::cout << "buckets " << b.num_buckets() << "\n";
}

// workload

struct WorkloadArgs {
  TableArgs table;
  std::string output;
  std::size_t queries = 1000;
  std::uint64_t seed = 0;
};

void RunWorkload(const WorkloadArgs& a) {
  Schema schema = LoadSchema(a.table.schema);
  QueryWorkload workload;
  if (a.table.input.empty()) {
    workload = GenerateWorkload(schema, a.queries, a.seed);
  } else {
    Table table = LoadTable(a.table.input, schema);
    workload = GenerateWorkload(schema, a.queries, a.seed, &table);
  }
  std::ofstream out = OpenOutput(a.output);
  out << WorkloadToJson(workload, schema) << '\n';
  CloseOutput(out, a.output);
}

// synth

struct SynthArgs {
  std::string output;
  std::string schema_output;
  std::size_t rows = 2000;
  std::uint64_t seed = 0;
};

void RunSynth(const SynthArgs& a) {
  Table table = GenerateCensusLike(a.rows, a.seed);
  std::ofstream csv = OpenOutput(a.output);
  WriteTableCsv(table, csv);
  CloseOutput(csv, a.output);
  if (!a.schema_output.empty()) {
    std::ofstream json = OpenOutput(a.schema_output);
    json << SchemaToJson(table.schema()) << '\n';
    CloseOutput(json, a.schema_output);
  }
}

// evaluate

struct EvaluateArgs {
  TableArgs table;
  std::string published;
  std::string report_dir;
  std::vector<std::string> experiments = {"all"};
  std::size_t synthetic_rows = 0;
  std::uint64_t synthetic_seed = 1;
  std::vector<double> deltas;
  std::vector<double> p_matches;
  std::vector<int> ls;
  double delta = 1.0 / 6.0;
  int l = 10;
  std::size_t repetitions = 10;
  std::size_t trials = 20;
  std::size_t queries = 1000;
  std::uint64_t seed = 0;
  std::string candidate_mode = "span";
  bool serial = false;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Metrics of a given publication against its original.
std::vector<ExperimentRecord> EvaluatePublished(const Table& original,
                                                const Table& published,
                                                const ExperimentConfig& c) {
  std::vector<ExperimentRecord> records;
  auto add = [&](double p_match, const std::string& metric, double value) {
    records.push_back({"published", "given", kNaN, 0, p_match, metric, value,
                       value, value, 1, c.seed});
  };
  add(kNaN, "iloss", ILoss(original, published));
  for (double p : c.p_matches) {
    DisclosureOptions options;
    options.trials = c.trials;
    options.seed = c.seed;
    options.execution = c.execution;
    DisclosureReport report = SimulateDisclosure(original, published, p, options);
    add(p, "identity", report.identity);
    add(p, "attribute", report.attribute);
  }
  return records;
}

void WriteReport(const fs::path& dir, const std::string& name,
                 const std::vector<ExperimentRecord>& records,
                 const ExperimentConfig& config) {
  const fs::path csv_path = dir / (name + ".csv");
  std::ofstream csv = OpenOutput(csv_path);
  WriteRecordsCsv(records, csv);
  CloseOutput(csv, csv_path);
  const fs::path json_path = dir / (name + ".json");
  std::ofstream json = OpenOutput(json_path);
  WriteReportJson(records, config, json);
  CloseOutput(json, json_path);
  std::cout << "wrote " << csv_path.string() << " (" << records.size()
            << " records)\n";
}

void RunEvaluate(const EvaluateArgs& a) {
  ExperimentConfig config;
  if (!a.deltas.empty()) config.deltas = a.deltas;
  if (!a.p_matches.empty()) config.p_matches = a.p_matches;
  if (!a.ls.empty()) config.ls = a.ls;
  config.delta = a.delta;
  config.l = a.l;
  config.repetitions = a.repetitions;
  config.trials = a.trials;
  config.queries = a.queries;
  config.seed = a.seed;
  config.candidate_mode = ParseCandidateMode(a.candidate_mode);
  config.execution = ExecutionFor(a.serial);
  if (config.repetitions == 0) {
    Fail(ErrorCode::kInvalidArgument, "--repetitions must be positive");
  }

  Table table = [&] {
    if (a.synthetic_rows > 0) {
      return GenerateCensusLike(a.synthetic_rows, a.synthetic_seed);
    }
    if (a.table.input.empty() || a.table.schema.empty()) {
      Fail(ErrorCode::kInvalidArgument,
           "evaluate needs --input and --schema, or --synthetic-rows");
    }
    return LoadTable(a.table.input, LoadSchema(a.table.schema));
  }();
  const fs::path dir = a.report_dir;

  if (!a.published.empty()) {
    Table published = LoadTable(a.published, table.schema());
    WriteReport(dir, "published", EvaluatePublished(table, published, config),
                config);
    return;
  }

  auto wanted = [&](const std::string& name) {
    for (const std::string& e : a.experiments) {
      if (e == name || e == "all") return true;
    }
    return false;
  };
  PlanCache cache(table, config);
  if (wanted("iloss")) {
    WriteReport(dir, "iloss", RunILossExperiment(table, config, cache), config);
  }
  if (wanted("query")) {
    WriteReport(dir, "query", RunQueryExperiment(table, config, cache), config);
  }
  if (wanted("l-sweep")) {
    WriteReport(dir, "l_sweep", RunLSweep(table, config, cache), config);
  }
  if (wanted("disclosure")) {
    WriteReport(dir, "disclosure",
                RunDisclosureExperiment(table, config, cache), config);
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Mutual-cover microdata anonymization"};
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);

  AnonymizeArgs anon;
  CLI::App* anonymize =
      app.add_subcommand("anonymize", "Publish a randomized table");
  AddTableOptions(anonymize, anon.table);
  anonymize->add_option("--output", anon.output, "Anonymized CSV")->required();
  anonymize->add_option("--provenance", anon.provenance,
                        "Provenance JSON (default: beside the output)");
  anonymize->add_option("--delta", anon.delta, "Delta probability bound")
      ->capture_default_str();
  anonymize->add_option("--l", anon.l, "l-diversity of the partition")
      ->capture_default_str();
  anonymize->add_option("--seed", anon.seed, "Sampling seed")
      ->capture_default_str();
  anonymize->add_option("--candidate-mode", anon.candidate_mode)
      ->check(CLI::IsMember({"observed", "span"}))
      ->capture_default_str();
  anonymize->add_option("--unchanged-policy", anon.unchanged_policy)
      ->check(CLI::IsMember({"perturb-one", "off"}))
      ->capture_default_str();
  anonymize->add_option("--rot-debug-dir", anon.rot_debug_dir,
                        "Write every random output table here (reveals groups)");
  anonymize->add_flag("--serial", anon.serial, "Run single-threaded");

  BaselineArgs base;
  CLI::App* baseline =
      app.add_subcommand("baseline", "Publish a Mondrian or Anatomy baseline");
  baseline->add_option("scheme,--scheme", base.scheme, "mondrian or anatomy")
      ->required()
      ->check(CLI::IsMember({"mondrian", "anatomy"}));
  AddTableOptions(baseline, base.table);
  baseline->add_option("--output", base.output,
                       "Generalized CSV, or the Anatomy QI table")
      ->required();
  baseline->add_option("--sensitive-output", base.sensitive_output,
                       "Anatomy sensitive table (default: beside the output)");
  baseline->add_option("--l", base.l)->capture_default_str();
  baseline->add_option("--seed", base.seed, "Anatomy bucketing seed")
      ->capture_default_str();

  EvaluateArgs eval;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Run evaluation grids or score a table");
  AddTableOptions(evaluate, eval.table, false);
  evaluate->add_option("--published", eval.published,
                       "Score this publication instead of running grids")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--report-dir", eval.report_dir)->required();
  evaluate->add_option("--experiment", eval.experiments)
      ->check(CLI::IsMember({"all", "iloss", "disclosure", "query", "l-sweep"}))
      ->capture_default_str();
  evaluate->add_option("--synthetic-rows", eval.synthetic_rows,
                       "Use a census-like synthetic table of this size");
  evaluate->add_option("--synthetic-seed", eval.synthetic_seed)
      ->capture_default_str();
  evaluate->add_option("--deltas", eval.deltas, "Delta grid");
  evaluate->add_option("--p-match", eval.p_matches, "P_match grid");
  evaluate->add_option("--ls", eval.ls, "l grid of the l sweep");
  evaluate->add_option("--delta", eval.delta)->capture_default_str();
  evaluate->add_option("--l", eval.l)->capture_default_str();
  evaluate->add_option("--repetitions", eval.repetitions)->capture_default_str();
  evaluate->add_option("--trials", eval.trials)->capture_default_str();
  evaluate->add_option("--queries", eval.queries)->capture_default_str();
  evaluate->add_option("--seed", eval.seed, "Master seed; run r uses seed + r")
      ->capture_default_str();
  evaluate->add_option("--candidate-mode", eval.candidate_mode)
      ->check(CLI::IsMember({"observed", "span"}))
      ->capture_default_str();
  evaluate->add_flag("--serial", eval.serial, "Run single-threaded");

  WorkloadArgs work;
  CLI::App* workload =
      app.add_subcommand("workload", "Generate a SUM query workload");
  AddTableOptions(workload, work.table, false);
  workload->get_option("--schema")->required();
  workload->add_option("--output", work.output)->required();
  workload->add_option("--queries", work.queries)->capture_default_str();
  workload->add_option("--seed", work.seed)->capture_default_str();

  SynthArgs syn;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate a census-like synthetic table");
  synth->add_option("--output", syn.output)->required();
  synth->add_option("--schema-output", syn.schema_output);
  synth->add_option("--rows", syn.rows)->capture_default_str();
  synth->add_option("--seed", syn.seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anonymize) RunAnonymize(anon);
    if (*baseline) RunBaseline(base);
    if (*evaluate) RunEvaluate(eval);
    if (*workload) RunWorkload(work);
    if (*synth) RunSynth(syn);
  } catch (const Error& e) {
    std::cerr << "mcover: " << ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "mcover: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace mcover

int main(int argc, char** argv) { return mcover::Main(argc, argv); }

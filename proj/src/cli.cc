// Copyright 2026 The fmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fmlab/cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fmlab/assoc_rules.h"
#include "fmlab/dataset.h"
#include "fmlab/enumeration.h"
#include "fmlab/errors.h"
#include "fmlab/evaluation.h"
#include "fmlab/feature_model.h"
#include "fmlab/model_parser.h"
#include "fmlab/sampling.h"
#include "fmlab/tuple_space.h"

namespace fmlab {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string dataset;
  std::string mapping;
  std::string signatures;
  std::string sample;
  std::string strategy = "random";
  int t = 2;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> tie_break_seed;
  std::uint64_t iterations = kDefaultIterations;
  MiningConfig mining;
  bool all_rules = false;
  bool exclude_env = false;
  std::optional<std::size_t> repetitions;
  std::string out;
  std::string format;
  bool verbose = false;
};

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void Verify(bool ok, const std::string& what) {
  if (!ok) throw VerificationError(what);
}

// Collects the manifest of one command and writes its primary output.
class Run {
 public:
  Run(std::string command, const std::vector<std::string>& args,
      const Options& o, std::ostream& out)
      : command_(std::move(command)),
        args_(args),
        options_(o),
        out_(out),
        started_(UtcNow()) {}

  Json& params() { return params_; }
  void Input(const std::string& key, const std::string& value) {
    if (!value.empty()) inputs_[key] = value;
  }

  // Writes `content` to --out (plus manifest) or to the output stream.
  void Emit(const std::string& content) {
    if (options_.out.empty()) {
      out_ << content;
      return;
    }
    WriteFile(options_.out, content);
    Json m;
    m["command"] = command_;
    m["arguments"] = args_;
    m["inputs"] = inputs_;
    m["params"] = params_;
    m["output"] = options_.out;
    m["output_bytes"] = content.size();
    m["tool"] = "fmlab";
    m["version"] = FMLAB_VERSION;
    m["started_at"] = started_;
    m["finished_at"] = UtcNow();
    WriteFile(options_.out + ".manifest.json", m.dump(2) + "\n");
  }

 private:
  static void WriteFile(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << content;
    if (!f) throw ValidationError("write to '" + path + "' failed");
  }

  std::string command_;
  std::vector<std::string> args_;
  const Options& options_;
  std::ostream& out_;
  std::string started_;
  Json inputs_ = Json::object();
  Json params_ = Json::object();
};

void RequireFormat(const Options& o, std::initializer_list<const char*> ok) {
  if (o.format.empty()) return;
  for (const char* f : ok) {
    if (o.format == f) return;
  }
  throw UsageError("--format " + o.format + " is not supported here");
}

FeatureModel RequireModel(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  return LoadModelFile(o.model);
}

// --mapping, else <dataset stem>.mapping.json when present, else identity.
SchemaMapping ResolveMapping(const Options& o, const FeatureModel& model,
                             Run& run) {
  std::string path = o.mapping;
  if (path.empty()) {
    std::filesystem::path p(o.dataset);
    p.replace_extension(".mapping.json");
    if (std::filesystem::exists(p)) path = p.string();
  }
  if (path.empty()) {
    run.Input("mapping", "identity");
    return SchemaMapping::Identity(model);
  }
  run.Input("mapping", path);
  return SchemaMapping::LoadFile(path, model);
}

Dataset RequireDataset(const Options& o, const FeatureModel& model, Run& run) {
  if (o.dataset.empty()) throw UsageError("--dataset is required");
  run.Input("dataset", o.dataset);
  const SchemaMapping mapping = ResolveMapping(o, model, run);
  return LoadDatasetFile(o.dataset, mapping, model);
}

std::vector<FaultSignature> OptionalSignatures(const Options& o,
                                               const FeatureModel& model,
                                               Run& run) {
  if (o.signatures.empty()) return {};
  run.Input("signatures", o.signatures);
  return LoadSignaturesFile(o.signatures, model);
}

// Every configuration is a distinct valid universe member.
void VerifyMembers(const FeatureModel& model,
                   const ConfigurationUniverse& universe,
                   const std::vector<Configuration>& configs) {
  std::unordered_set<std::size_t> seen;
  for (const Configuration& c : configs) {
    const std::optional<std::size_t> i = universe.IndexOf(c);
    Verify(i && IsValid(model, c),
           "sampled configuration " + c.ToString() + " is not valid");
    Verify(seen.insert(*i).second,
           "configuration " + c.ToString() + " sampled twice");
  }
}

// Each non-empty criterion set has a member in the sample.
void VerifyHitsSets(const ConfigurationUniverse& universe,
                    const CriterionSets& sets, const Sample& sample) {
  std::unordered_set<std::size_t> in;
  for (const Configuration& c : sample.configs) in.insert(*universe.IndexOf(c));
  for (std::size_t k = 0; k < sets.sets.size(); ++k) {
    if (sets.sets[k].empty()) continue;
    const bool hit = std::any_of(sets.sets[k].begin(), sets.sets[k].end(),
                                 [&](std::size_t i) { return in.count(i); });
    Verify(hit, "criterion for feature " + std::to_string(sets.features[k]) +
                    " has no sampled member");
  }
}

std::size_t UnionSize(const CriterionSets& sets) {
  std::set<std::size_t> all;
  for (const auto& s : sets.sets) all.insert(s.begin(), s.end());
  return all.size();
}

Sample DrawSample(const Options& o, const FeatureModel& model,
                  const ConfigurationUniverse& universe) {
  const std::string& s = o.strategy;
  auto require_n = [&] {
    if (!o.n) throw UsageError("--n is required for strategy " + s);
    if (*o.n > universe.size()) {
      throw UsageError("--n exceeds the number of valid configurations (" +
                       std::to_string(universe.size()) + ")");
    }
    return *o.n;
  };
  auto toggleable = [&] { return Toggleable(model, CoreAndDead(model)); };

  Sample sample;
  if (s == "random") {
    sample = RandomSample(universe, require_n(), o.seed);
    Verify(sample.configs.size() == *o.n, "random sample has wrong size");
  } else if (s == "t-wise") {
    const TupleSpace space = BuildTupleSpace(model, universe, o.t);
    sample = TwiseSample(universe, space, {o.tie_break_seed});
    Verify(CountCovered(space, sample.configs) == space.size(),
           "t-wise sample leaves valid tuples uncovered");
  } else if (s == "dissimilarity" || s == "pledge") {
    const std::size_t n = require_n();
    if (n < 2) throw UsageError("--n must be at least 2 for " + s);
    sample = DissimilaritySample(model, universe, n, o.iterations, o.seed);
    Verify(sample.configs.size() == n, "dissimilarity sample has wrong size");
  } else if (s == "one-disabled" || s == "all-one-disabled") {
    const CriterionSets sets = OneDisabledSets(universe, toggleable());
    if (s == "one-disabled") {
      sample = PickOnePerSet(universe, sets, s, o.seed);
    } else {
      sample = AllOneDisabled(universe, sets.features);
      Verify(sample.configs.size() == UnionSize(sets),
             "all-one-disabled is not the union of its criteria");
    }
    VerifyHitsSets(universe, sets, sample);
  } else if (s == "one-enabled" || s == "all-one-enabled") {
    const CriterionSets sets = OneEnabledSets(universe, toggleable());
    if (s == "one-enabled") {
      sample = PickOnePerSet(universe, sets, s, o.seed);
    } else {
      sample = AllOneEnabled(universe, sets.features);
      Verify(sample.configs.size() == UnionSize(sets),
             "all-one-enabled is not the union of its criteria");
    }
    VerifyHitsSets(universe, sets, sample);
  } else if (s == "most-enabled-disabled" || s == "all-most-enabled-disabled") {
    const ExtremalSets sets = MostEnabledDisabledSets(universe);
    sample = s == "most-enabled-disabled"
                 ? MostEnabledDisabledSample(universe, sets, o.seed)
                 : AllMostEnabledDisabled(universe);
    CriterionSets as_sets;
    as_sets.features = {0, 0};
    as_sets.sets = {sets.most_enabled, sets.most_disabled};
    VerifyHitsSets(universe, as_sets, sample);
  } else if (s == "all") {
    sample = AllConfigurations(universe);
  } else {
    throw UsageError("unknown strategy '" + s + "'");
  }
  VerifyMembers(model, universe, sample.configs);
  return sample;
}

int CmdEnumerate(const Options& o, Run& run, std::ostream& out,
                 std::ostream& err) {
  RequireFormat(o, {"csv"});
  const FeatureModel model = RequireModel(o);
  run.Input("model", o.model);
  const std::uint64_t count = CountValid(model);
  if (count == 0) {
    out << "0\n";
    err << "error: model '" << model.name() << "' has no valid configuration\n";
    return kExitValidation;
  }
  const ConfigurationUniverse universe = EnumerateAll(model);
  Verify(universe.size() == count, "enumeration and model count disagree");
  for (const Configuration& c : universe.configs()) {
    Verify(IsValid(model, c), "enumerated configuration " + c.ToString() +
                                  " violates the model");
  }
  if (!o.out.empty()) {
    std::ostringstream csv;
    WriteConfigurationsCsv(csv, model, universe.configs());
    run.params()["count"] = count;
    run.Emit(csv.str());
  }
  out << count << "\n";
  return kExitOk;
}

int CmdSample(const Options& o, Run& run) {
  RequireFormat(o, {"csv"});
  const FeatureModel model = RequireModel(o);
  run.Input("model", o.model);
  const ConfigurationUniverse universe = EnumerateAll(model);
  const Sample sample = DrawSample(o, model, universe);
  Json& p = run.params();
  p["strategy"] = o.strategy;
  p["seed"] = sample.seed ? Json(*sample.seed) : Json(nullptr);
  p["size"] = sample.configs.size();
  for (const auto& [k, v] : sample.params) p[k] = v;
  std::ostringstream csv;
  WriteSampleCsv(csv, model, sample);
  run.Emit(csv.str());
  return kExitOk;
}

int CmdEvaluate(const Options& o, Run& run) {
  RequireFormat(o, {"json"});
  if (o.sample.empty()) throw UsageError("--sample is required");
  const FeatureModel model = RequireModel(o);
  run.Input("model", o.model);
  const Dataset dataset = RequireDataset(o, model, run);
  const std::vector<FaultSignature> signatures =
      OptionalSignatures(o, model, run);
  run.Input("sample", o.sample);
  std::ifstream in(o.sample, std::ios::binary);
  if (!in) throw ValidationError("cannot open sample '" + o.sample + "'");
  const std::vector<Configuration> configs = ReadConfigurationsCsv(in, model);

  EvaluationOptions opts;
  opts.exclude_environment_failures = o.exclude_env;
  const EvaluationReport report =
      Evaluator(dataset, signatures, opts).Evaluate(configs);

  // Direct recount.
  std::size_t failures = 0;
  std::set<std::string> faults;
  for (const Configuration& c : configs) {
    const TestRecord& r = dataset[*dataset.Find(c)];
    if (!r.failed() || (o.exclude_env && r.HasTag(opts.environment_tag))) {
      continue;
    }
    ++failures;
    for (const FaultSignature& s : signatures) {
      if (s.Matches(c)) faults.insert(s.id);
    }
  }
  Verify(failures == report.failures_found, "failure count mismatch");
  Verify(faults.size() == report.faults_found.size(),
         "fault count mismatch");

  run.params()["exclude_env_failures"] = o.exclude_env;
  run.Emit(ReportToJson(report));
  return kExitOk;
}

std::string RulesJson(const std::vector<Rule>& rules,
                      const FeatureModel& model) {
  const std::vector<FaultSignature> sigs = ToSignatures(rules, model);
  Json j = Json::array();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    Json e;
    e["id"] = sigs[i].id;
    Json lits = Json::array();
    for (const Literal& l : r.lhs) {
      lits.push_back((l.value ? "" : "!") + model.feature(l.feature).name);
    }
    e["literals"] = std::move(lits);
    e["stage"] = std::string(StageName(r.rhs));
    e["support"] = r.support;
    e["confidence"] = r.confidence;
    e["matched_rows"] = r.matched_rows;
    e["lhs_rows"] = r.lhs_rows;
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

int CmdMine(const Options& o, Run& run) {
  RequireFormat(o, {"csv", "json"});
  o.mining.Validate();
  const FeatureModel model = RequireModel(o);
  run.Input("model", o.model);
  if (o.dataset.empty()) throw UsageError("--dataset is required");
  run.Input("dataset", o.dataset);
  const SchemaMapping mapping = ResolveMapping(o, model, run);
  const Dataset dataset = LoadDatasetFile(o.dataset, mapping, model);

  std::vector<Rule> rules = MineRules(dataset, model, o.mining, mapping);
  if (!o.all_rules) rules = PruneRedundant(std::move(rules), model);
  for (const Rule& r : rules) {
    Verify(VerifyRule(r, dataset),
           "rule " + FormatLhs(r.lhs, model) + " does not recount");
    Verify(r.confidence >= o.mining.min_confidence &&
               r.support >= o.mining.min_support,
           "rule " + FormatLhs(r.lhs, model) + " is below the thresholds");
  }

  Json& p = run.params();
  p["max_lhs"] = o.mining.max_lhs;
  p["min_support"] = o.mining.min_support;
  p["min_confidence"] = o.mining.min_confidence;
  p["pruned"] = !o.all_rules;
  p["rules"] = rules.size();
  if (o.format == "json") {
    run.Emit(RulesJson(rules, model));
  } else {
    std::ostringstream csv;
    WriteRulesCsv(csv, rules, model, o.verbose);
    run.Emit(csv.str());
  }
  return kExitOk;
}

// Sizes and repetition counts of the published comparison.
constexpr std::size_t kBudgets[] = {8, 12, 41, 126, 374};
constexpr std::size_t kRandomRepetitions = 100;
constexpr std::size_t kPickRepetitions = 1000;

int CmdTable3(const Options& o, Run& run, std::ostream& err) {
  RequireFormat(o, {"csv", "json", "md"});
  if (o.signatures.empty()) throw UsageError("--signatures is required");
  if (o.repetitions && *o.repetitions == 0) {
    throw UsageError("--repetitions must be positive");
  }
  const FeatureModel model = RequireModel(o);
  run.Input("model", o.model);
  const Dataset dataset = RequireDataset(o, model, run);
  const std::vector<FaultSignature> signatures =
      OptionalSignatures(o, model, run);
  const ConfigurationUniverse universe = EnumerateAll(model);
  Verify(universe.size() == dataset.size(),
         "dataset does not cover the configuration universe");
  for (const Configuration& c : universe.configs()) {
    Verify(dataset.Find(c).has_value(),
           "configuration " + c.ToString() + " has no dataset row");
  }
  const std::vector<FeatureId> toggleable = Toggleable(model, CoreAndDead(model));

  EvaluationOptions opts;
  opts.exclude_environment_failures = o.exclude_env;
  const Evaluator evaluator(dataset, signatures, opts);
  const std::size_t random_reps = o.repetitions.value_or(kRandomRepetitions);
  const std::size_t pick_reps = o.repetitions.value_or(kPickRepetitions);

  std::vector<SummaryRow> rows;
  auto log = [&](const std::string& name) {
    if (o.verbose) err << "table3: " << name << "\n";
  };
  auto once = [&](const std::string& name, const Sample& sample) {
    log(name);
    rows.push_back(Summarize(name, {evaluator.Evaluate(sample)}));
  };
  auto repeat = [&](const std::string& name, std::size_t reps, auto draw) {
    log(name);
    std::vector<EvaluationReport> reports;
    reports.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      reports.push_back(evaluator.Evaluate(draw(o.seed + r)));
    }
    rows.push_back(Summarize(name, reports));
  };
  auto twise = [&](int t) {
    const TupleSpace space = BuildTupleSpace(model, universe, t);
    Sample s = TwiseSample(universe, space, {o.tie_break_seed});
    Verify(CountCovered(space, s.configs) == space.size(),
           std::to_string(t) + "-wise sample leaves tuples uncovered");
    once(std::to_string(t) + "-wise", s);
  };
  const DissimilaritySampler pledge(model, universe);
  auto budget = [&](std::size_t n) {
    repeat("Random(" + std::to_string(n) + ")", random_reps,
           [&](std::uint64_t seed) { return RandomSample(universe, n, seed); });
    repeat("PLEDGE(" + std::to_string(n) + ")", random_reps,
           [&](std::uint64_t seed) {
             return pledge.Run(n, o.iterations, seed);
           });
  };

  twise(1);
  budget(kBudgets[0]);
  budget(kBudgets[1]);
  twise(2);
  budget(kBudgets[2]);
  twise(3);
  budget(kBudgets[3]);
  twise(4);
  budget(kBudgets[4]);

  const ExtremalSets extremal = MostEnabledDisabledSets(universe);
  repeat("Most-enabled-disabled", pick_reps, [&](std::uint64_t seed) {
    return MostEnabledDisabledSample(universe, extremal, seed);
  });
  once("All-most-enabled-disabled", AllMostEnabledDisabled(universe));
  const CriterionSets disabled = OneDisabledSets(universe, toggleable);
  repeat("One-disabled", pick_reps, [&](std::uint64_t seed) {
    return PickOnePerSet(universe, disabled, "one-disabled", seed);
  });
  once("All-one-disabled", AllOneDisabled(universe, toggleable));
  const CriterionSets enabled = OneEnabledSets(universe, toggleable);
  repeat("One-enabled", pick_reps, [&](std::uint64_t seed) {
    return PickOnePerSet(universe, enabled, "one-enabled", seed);
  });
  once("All-one-enabled", AllOneEnabled(universe, toggleable));
  once("ALL", AllConfigurations(universe));

  std::size_t expected = 0;
  for (const TestRecord& r : dataset.records()) {
    expected += r.failed() && !(o.exclude_env && r.HasTag(opts.environment_tag));
  }
  Verify(rows.back().failures_mean == static_cast<double>(expected),
         "ALL row does not find every failure");

  Json& p = run.params();
  p["seed"] = o.seed;
  p["random_repetitions"] = random_reps;
  p["pick_repetitions"] = pick_reps;
  p["iterations"] = o.iterations;
  p["exclude_env_failures"] = o.exclude_env;
  std::ostringstream buf;
  if (o.format == "csv") {
    WriteSummaryCsv(buf, rows);
  } else if (o.format == "json") {
    buf << SummaryJson(rows);
  } else {
    WriteSummaryMarkdown(buf, rows);
  }
  run.Emit(buf.str());
  return kExitOk;
}

void AddOut(CLI::App* cmd, Options& o, const char* formats) {
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
  cmd->add_option("--format", o.format, formats);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Feature-model sampling and ground-truth evaluation", "fmlab"};
  app.set_version_flag("--version", FMLAB_VERSION);
  app.require_subcommand(1);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "Count valid configurations; --out writes them as CSV");
  enumerate->add_option("--model", o.model, "Feature model file")->required();
  AddOut(enumerate, o, "csv");

  CLI::App* sample = app.add_subcommand("sample", "Draw a sample");
  sample->add_option("--model", o.model, "Feature model file")->required();
  sample->add_option("--strategy", o.strategy,
                     "random, t-wise, dissimilarity (pledge), one-disabled, "
                     "one-enabled, most-enabled-disabled, all-one-disabled, "
                     "all-one-enabled, all-most-enabled-disabled, all");
  sample->add_option("--t", o.t, "Interaction strength for t-wise")
      ->check(CLI::Range(1, kMaxStrength));
  sample->add_option("--n", o.n, "Sample size");
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--tie-break-seed", o.tie_break_seed,
                     "Seeded tie breaking for t-wise");
  sample->add_option("--iterations", o.iterations,
                     "Dissimilarity search iterations");
  AddOut(sample, o, "csv");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a sample against a dataset");
  evaluate->add_option("--model", o.model, "Feature model file")->required();
  evaluate->add_option("--dataset", o.dataset, "Test results CSV")->required();
  evaluate->add_option("--mapping", o.mapping, "Schema mapping JSON");
  evaluate->add_option("--signatures", o.signatures, "Fault signatures JSON");
  evaluate->add_option("--sample", o.sample, "Sample CSV")->required();
  evaluate->add_flag("--exclude-env-failures", o.exclude_env,
                     "Count environment-tagged failures as passes");
  AddOut(evaluate, o, "json");

  CLI::App* mine =
      app.add_subcommand("mine", "Mine failure association rules");
  mine->add_option("--model", o.model, "Feature model file")->required();
  mine->add_option("--dataset", o.dataset, "Test results CSV")->required();
  mine->add_option("--mapping", o.mapping, "Schema mapping JSON");
  mine->add_option("--max-lhs", o.mining.max_lhs, "Largest left-hand side");
  mine->add_option("--min-support", o.mining.min_support,
                   "Minimum support (fraction of rows)");
  mine->add_option("--min-confidence", o.mining.min_confidence,
                   "Minimum confidence");
  mine->add_flag("--all-rules", o.all_rules, "Skip redundancy pruning");
  mine->add_flag("--verbose", o.verbose, "Add lhs_rows and lhs_support");
  AddOut(mine, o, "csv, json");

  CLI::App* table3 = app.add_subcommand(
      "table3", "Compare every sampling strategy against a dataset");
  table3->add_option("--model", o.model, "Feature model file")->required();
  table3->add_option("--dataset", o.dataset, "Test results CSV")->required();
  table3->add_option("--mapping", o.mapping, "Schema mapping JSON");
  table3->add_option("--signatures", o.signatures, "Fault signatures JSON")
      ->required();
  table3->add_option("--repetitions", o.repetitions,
                     "Repetitions of every stochastic row (default 100 for "
                     "random and dissimilarity, 1000 for the others)");
  table3->add_option("--seed", o.seed, "First seed; repetition r uses seed+r");
  table3->add_option("--iterations", o.iterations,
                     "Dissimilarity search iterations");
  table3->add_option("--tie-break-seed", o.tie_break_seed,
                     "Seeded tie breaking for t-wise");
  table3->add_flag("--exclude-env-failures", o.exclude_env,
                   "Count environment-tagged failures as passes");
  table3->add_flag("--verbose", o.verbose, "Progress on standard error");
  AddOut(table3, o, "md, csv, json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << FMLAB_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Run run(cmd->get_name(), args, o, out);
  try {
    const std::string& name = cmd->get_name();
    if (name == "enumerate") return CmdEnumerate(o, run, out, err);
    if (name == "sample") return CmdSample(o, run);
    if (name == "evaluate") return CmdEvaluate(o, run);
    if (name == "mine") return CmdMine(o, run);
    return CmdTable3(o, run, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UniverseTooLargeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace fmlab

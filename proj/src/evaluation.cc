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

#include "fmlab/evaluation.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fmlab/csv.h"

namespace fmlab {

using Json = nlohmann::ordered_json;

bool FaultSignature::Matches(const Configuration& config) const {
  for (const Literal& l : literals) {
    if (!l.SatisfiedBy(config)) return false;
  }
  return true;
}

std::vector<FaultSignature> SignaturesFromJson(std::string_view json,
                                               const FeatureModel& model) {
  std::vector<FaultSignature> out;
  try {
    const Json j = Json::parse(json);
    for (const Json& e : j) {
      FaultSignature s;
      s.id = e.at("id").get<std::string>();
      const std::string stage = e.at("stage").get<std::string>();
      const std::optional<Stage> st = ParseStage(stage);
      if (!st) {
        throw ValidationError("signature '" + s.id + "' has unknown stage '" +
                              stage + "'");
      }
      s.stage = *st;
      for (const Json& l : e.at("literals")) {
        std::string name = l.get<std::string>();
        bool value = true;
        if (!name.empty() && name[0] == '!') {
          value = false;
          name.erase(0, 1);
        }
        const std::optional<FeatureId> id = model.Find(name);
        if (!id) {
          throw ValidationError("signature '" + s.id +
                                "' names unknown feature '" + name + "'");
        }
        s.literals.push_back({*id, value});
      }
      if (s.literals.empty()) {
        throw ValidationError("signature '" + s.id + "' has no literals");
      }
      out.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("signatures: ") + e.what());
  }
  return out;
}

std::vector<FaultSignature> LoadSignaturesFile(const std::string& path,
                                               const FeatureModel& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open signatures '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return SignaturesFromJson(buf.str(), model);
}

std::string SignaturesToJson(const std::vector<FaultSignature>& signatures,
                             const FeatureModel& model) {
  Json j = Json::array();
  for (const FaultSignature& s : signatures) {
    Json e;
    e["id"] = s.id;
    Json lits = Json::array();
    for (const Literal& l : s.literals) {
      lits.push_back((l.value ? "" : "!") + model.feature(l.feature).name);
    }
    e["literals"] = std::move(lits);
    e["stage"] = std::string(StageName(s.stage));
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string FormatLiterals(const std::vector<Literal>& literals,
                           const FeatureModel& model) {
  std::string out;
  for (const Literal& l : literals) {
    if (!out.empty()) out += " & ";
    if (!l.value) out += '!';
    out += model.feature(l.feature).name;
  }
  return out;
}

std::vector<FeatureFailureStat> FeatureFailureStats(const Dataset& dataset,
                                                    const FeatureModel& model) {
  std::vector<FeatureFailureStat> out(model.feature_count());
  for (FeatureId f = 0; f < model.feature_count(); ++f) out[f].feature = f;
  for (const TestRecord& r : dataset.records()) {
    for (FeatureId f = 0; f < model.feature_count(); ++f) {
      if (!r.config.test(f)) continue;
      ++out[f].selected;
      if (r.failed()) ++out[f].failed;
    }
  }
  for (FeatureFailureStat& s : out) {
    if (s.selected > 0) {
      s.proportion = static_cast<double>(s.failed) / s.selected;
    }
  }
  return out;
}

namespace {

void CheckConfidence(const Dataset& dataset,
                     const std::vector<FaultSignature>& signatures) {
  for (const FaultSignature& s : signatures) {
    for (const TestRecord& r : dataset.records()) {
      if (s.Matches(r.config) && r.failure_stage() != s.stage) {
        throw ValidationError(
            "signature '" + s.id + "' has confidence below 1: line " +
            std::to_string(r.line) + " matches without failing at stage " +
            std::string(StageName(s.stage)));
      }
    }
  }
}

}  // namespace

Attribution AttributeFaults(const Dataset& dataset,
                            const std::vector<FaultSignature>& signatures) {
  CheckConfidence(dataset, signatures);
  Attribution a;
  a.raw_counts.assign(signatures.size(), 0);
  a.exclusive_counts.assign(signatures.size(), 0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const TestRecord& r = dataset[i];
    if (!r.failed()) continue;
    std::vector<std::size_t> m;
    for (std::size_t s = 0; s < signatures.size(); ++s) {
      if (signatures[s].Matches(r.config)) {
        m.push_back(s);
        ++a.raw_counts[s];
      }
    }
    if (m.empty()) ++a.unattributed;
    if (!m.empty()) ++a.exclusive_counts[m.front()];
    if (m.size() > 1) ++a.overlapping;
    a.failed_records.push_back(i);
    a.matches.push_back(std::move(m));
  }
  return a;
}

Evaluator::Evaluator(const Dataset& dataset,
                     std::vector<FaultSignature> signatures,
                     EvaluationOptions options)
    : dataset_(dataset), signatures_(std::move(signatures)) {
  CheckConfidence(dataset_, signatures_);
  failed_.resize(dataset_.size());
  matches_.resize(dataset_.size());
  for (std::size_t i = 0; i < dataset_.size(); ++i) {
    const TestRecord& r = dataset_[i];
    failed_[i] = r.failed() && !(options.exclude_environment_failures &&
                                 r.HasTag(options.environment_tag));
    if (!failed_[i]) continue;
    for (std::size_t s = 0; s < signatures_.size(); ++s) {
      if (signatures_[s].Matches(r.config)) matches_[i].push_back(s);
    }
  }
}

EvaluationReport Evaluator::Evaluate(
    const std::vector<Configuration>& configs) const {
  EvaluationReport rep;
  rep.sample_size = configs.size();
  std::vector<bool> found(signatures_.size(), false);
  for (const Configuration& c : configs) {
    const std::optional<std::size_t> i = dataset_.Find(c);
    if (!i) {
      throw ValidationError("sample configuration " + c.ToString() +
                            " is not in the dataset");
    }
    if (!failed_[*i]) continue;
    ++rep.failures_found;
    if (matches_[*i].empty()) ++rep.unattributed_failures;
    for (std::size_t s : matches_[*i]) found[s] = true;
  }
  for (std::size_t s = 0; s < signatures_.size(); ++s) {
    if (found[s]) rep.faults_found.push_back(signatures_[s].id);
  }
  if (rep.sample_size > 0) {
    const double n = static_cast<double>(rep.sample_size);
    rep.failure_efficiency = rep.failures_found / n;
    rep.fault_efficiency = rep.faults_found.size() / n;
  }
  return rep;
}

EvaluationReport Evaluate(const Sample& sample, const Dataset& dataset,
                          const std::vector<FaultSignature>& signatures,
                          const EvaluationOptions& options) {
  return Evaluator(dataset, signatures, options).Evaluate(sample);
}

namespace {

Json OptionalNumber(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

std::string Fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string SizeText(double size) {
  if (size == std::floor(size)) return Fixed(size, 0);
  return Fixed(size, 2);
}

std::string Percent(const std::optional<double>& x) {
  return x ? Fixed(100.0 * *x, 2) + "%" : "N.A.";
}

std::string MeanSd(double mean, const std::optional<double>& sd) {
  return Fixed(mean, 3) + " (" + (sd ? Fixed(*sd, 3) : "N.A.") + ")";
}

std::string Ratio(const std::optional<double>& x) {
  return x ? Fixed(*x, 6) : "";
}

}  // namespace

std::string ReportToJson(const EvaluationReport& report) {
  Json j;
  j["sample_size"] = report.sample_size;
  j["failures_found"] = report.failures_found;
  j["faults_found"] = report.faults_found;
  j["failure_efficiency"] = OptionalNumber(report.failure_efficiency);
  j["fault_efficiency"] = OptionalNumber(report.fault_efficiency);
  j["unattributed_failures"] = report.unattributed_failures;
  return j.dump(2) + "\n";
}

SummaryRow Summarize(std::string strategy,
                     const std::vector<EvaluationReport>& reports) {
  SummaryRow row;
  row.strategy = std::move(strategy);
  row.repetitions = reports.size();
  if (reports.empty()) return row;
  const double n = static_cast<double>(reports.size());
  double size = 0, fail = 0, faults = 0;
  for (const EvaluationReport& r : reports) {
    size += r.sample_size;
    fail += r.failures_found;
    faults += r.faults_found.size();
  }
  row.size = size / n;
  row.failures_mean = fail / n;
  row.faults_mean = faults / n;
  if (reports.size() > 1) {
    double sf = 0, sq = 0;
    for (const EvaluationReport& r : reports) {
      sf += std::pow(r.failures_found - row.failures_mean, 2);
      sq += std::pow(r.faults_found.size() - row.faults_mean, 2);
    }
    row.failures_sd = std::sqrt(sf / (n - 1));
    row.faults_sd = std::sqrt(sq / (n - 1));
  }
  if (row.size > 0) {
    row.failure_efficiency = row.failures_mean / row.size;
    row.fault_efficiency = row.faults_mean / row.size;
  }
  return row;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  WriteCsvRow(out, {"strategy", "repetitions", "size", "failures_mean",
                    "failures_sd", "failure_efficiency", "faults_mean",
                    "faults_sd", "fault_efficiency"});
  for (const SummaryRow& r : rows) {
    WriteCsvRow(out, {r.strategy, std::to_string(r.repetitions),
                      SizeText(r.size), Fixed(r.failures_mean, 3),
                      r.failures_sd ? Fixed(*r.failures_sd, 3) : "",
                      Ratio(r.failure_efficiency), Fixed(r.faults_mean, 3),
                      r.faults_sd ? Fixed(*r.faults_sd, 3) : "",
                      Ratio(r.fault_efficiency)});
  }
}

void WriteSummaryMarkdown(std::ostream& out,
                          const std::vector<SummaryRow>& rows) {
  out << "| Sampling technique | Sample size | Failures (sd) | "
         "Failure eff. | Faults (sd) | Fault eff. |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  for (const SummaryRow& r : rows) {
    out << "| " << r.strategy << " | " << SizeText(r.size) << " | "
        << MeanSd(r.failures_mean, r.failures_sd) << " | "
        << Percent(r.failure_efficiency) << " | "
        << MeanSd(r.faults_mean, r.faults_sd) << " | "
        << Percent(r.fault_efficiency) << " |\n";
  }
}

std::string SummaryJson(const std::vector<SummaryRow>& rows) {
  Json j = Json::array();
  for (const SummaryRow& r : rows) {
    Json e;
    e["strategy"] = r.strategy;
    e["repetitions"] = r.repetitions;
    e["size"] = r.size;
    e["failures_mean"] = r.failures_mean;
    e["failures_sd"] = OptionalNumber(r.failures_sd);
    e["failure_efficiency"] = OptionalNumber(r.failure_efficiency);
    e["faults_mean"] = r.faults_mean;
    e["faults_sd"] = OptionalNumber(r.faults_sd);
    e["fault_efficiency"] = OptionalNumber(r.fault_efficiency);
    j.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace fmlab

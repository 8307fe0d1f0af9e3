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

#ifndef FMLAB_EVALUATION_H_
#define FMLAB_EVALUATION_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fmlab/dataset.h"
#include "fmlab/feature_model.h"
#include "fmlab/sampling.h"

namespace fmlab {

// Conjunction of literals whose matching configurations all fail at
// `stage`.
struct FaultSignature {
  std::string id;
  std::vector<Literal> literals;
  Stage stage = Stage::kBuild;

  bool Matches(const Configuration& config) const;
};

// JSON list of {"id", "literals": ["Name", "!Name", ...], "stage"}.
std::vector<FaultSignature> SignaturesFromJson(std::string_view json,
                                               const FeatureModel& model);
std::vector<FaultSignature> LoadSignaturesFile(const std::string& path,
                                               const FeatureModel& model);
std::string SignaturesToJson(const std::vector<FaultSignature>& signatures,
                             const FeatureModel& model);
// "A & !B".
std::string FormatLiterals(const std::vector<Literal>& literals,
                           const FeatureModel& model);

struct FeatureFailureStat {
  FeatureId feature = 0;
  std::size_t selected = 0;
  std::size_t failed = 0;
  // failed / selected; none when never selected.
  std::optional<double> proportion;
};

std::vector<FeatureFailureStat> FeatureFailureStats(const Dataset& dataset,
                                                    const FeatureModel& model);

struct Attribution {
  // Failed record indices and, in parallel, the signatures each matches.
  std::vector<std::size_t> failed_records;
  std::vector<std::vector<std::size_t>> matches;
  // Per signature: all matching failed records.
  std::vector<std::size_t> raw_counts;
  // Per signature: records whose first match in list order is it.
  std::vector<std::size_t> exclusive_counts;
  std::size_t unattributed = 0;
  // Records matching more than one signature.
  std::size_t overlapping = 0;

  std::size_t attributed() const {
    return failed_records.size() - unattributed;
  }
};

// Throws ValidationError naming the first signature with a matching record
// that does not fail at its stage.
Attribution AttributeFaults(const Dataset& dataset,
                            const std::vector<FaultSignature>& signatures);

struct EvaluationOptions {
  // Treat records carrying the environment tag as passing.
  bool exclude_environment_failures = false;
  std::string environment_tag = "ISSUE:env";
};

struct EvaluationReport {
  std::size_t sample_size = 0;
  std::size_t failures_found = 0;
  // Signature ids in signature-list order.
  std::vector<std::string> faults_found;
  std::optional<double> failure_efficiency;
  std::optional<double> fault_efficiency;
  std::size_t unattributed_failures = 0;
};

// Scores many samples against one dataset.
class Evaluator {
 public:
  Evaluator(const Dataset& dataset, std::vector<FaultSignature> signatures,
            EvaluationOptions options = {});

  // Throws ValidationError when a configuration is not in the dataset.
  EvaluationReport Evaluate(const std::vector<Configuration>& configs) const;
  EvaluationReport Evaluate(const Sample& sample) const {
    return Evaluate(sample.configs);
  }

  const std::vector<FaultSignature>& signatures() const { return signatures_; }

 private:
  const Dataset& dataset_;
  std::vector<FaultSignature> signatures_;
  std::vector<bool> failed_;
  std::vector<std::vector<std::size_t>> matches_;
};

EvaluationReport Evaluate(const Sample& sample, const Dataset& dataset,
                          const std::vector<FaultSignature>& signatures,
                          const EvaluationOptions& options = {});

std::string ReportToJson(const EvaluationReport& report);

// One row of the strategy comparison: means over repetitions.
struct SummaryRow {
  std::string strategy;
  std::size_t repetitions = 0;
  double size = 0;
  double failures_mean = 0;
  // Sample standard deviation; none for a single repetition.
  std::optional<double> failures_sd;
  std::optional<double> failure_efficiency;
  double faults_mean = 0;
  std::optional<double> faults_sd;
  std::optional<double> fault_efficiency;
};

SummaryRow Summarize(std::string strategy,
                     const std::vector<EvaluationReport>& reports);

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);
void WriteSummaryMarkdown(std::ostream& out,
                          const std::vector<SummaryRow>& rows);
std::string SummaryJson(const std::vector<SummaryRow>& rows);

}  // namespace fmlab

#endif  // FMLAB_EVALUATION_H_

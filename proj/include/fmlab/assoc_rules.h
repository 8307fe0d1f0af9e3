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

#ifndef FMLAB_ASSOC_RULES_H_
#define FMLAB_ASSOC_RULES_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "fmlab/dataset.h"
#include "fmlab/evaluation.h"
#include "fmlab/feature_model.h"

namespace fmlab {

struct MiningConfig {
  std::size_t max_lhs = 4;
  double min_support = 0.004;
  double min_confidence = 1.0;

  // Throws std::invalid_argument.
  void Validate() const;
};

// lhs => rhs, where rhs means "failed at this stage".
struct Rule {
  std::vector<Literal> lhs;
  Stage rhs = Stage::kBuild;
  // Rows matching lhs and rhs.
  std::size_t matched_rows = 0;
  // Rows matching lhs.
  std::size_t lhs_rows = 0;
  std::size_t total_rows = 0;
  // matched_rows / total_rows.
  double support = 0;
  // matched_rows / lhs_rows.
  double confidence = 0;

  double lhs_support() const {
    return total_rows ? static_cast<double>(lhs_rows) / total_rows : 0.0;
  }
};

// Mapped literals of non-core, non-dead features: the items a row can be
// described with.
std::vector<Literal> MiningItems(const FeatureModel& model,
                                 const SchemaMapping& mapping);

// Level-wise search over item sets up to cfg.max_lhs, pruning on
// lhs-and-rhs support. Sorted by (lhs size, support desc, lhs, rhs).
std::vector<Rule> MineRules(const Dataset& dataset, const MiningConfig& cfg,
                            const std::vector<Literal>& items);
std::vector<Rule> MineRules(const Dataset& dataset, const FeatureModel& model,
                            const MiningConfig& cfg,
                            const SchemaMapping& mapping);

// Drops rules with an unsatisfiable lhs, and rules for which another rule
// with the same rhs and at least the same confidence has a more general lhs
// under the model (implied by this one but not implying it back). Among
// equivalent lhs the first in (size, support desc, lhs) order stays.
std::vector<Rule> PruneRedundant(std::vector<Rule> rules,
                                 const FeatureModel& model);

std::vector<FaultSignature> ToSignatures(const std::vector<Rule>& rules,
                                         const FeatureModel& model);

// Recomputes counts from the dataset; true when they equal the stored ones.
bool VerifyRule(const Rule& rule, const Dataset& dataset);

// Columns lhs, rhs, support, confidence, matched_rows; `verbose` adds
// lhs_rows and lhs_support.
void WriteRulesCsv(std::ostream& out, const std::vector<Rule>& rules,
                   const FeatureModel& model, bool verbose = false);

// "{MongoDB, SocialLogin}".
std::string FormatLhs(const std::vector<Literal>& lhs,
                      const FeatureModel& model);

}  // namespace fmlab

#endif  // FMLAB_ASSOC_RULES_H_

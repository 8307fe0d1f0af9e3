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

#ifndef FMLAB_FEATURE_MODEL_H_
#define FMLAB_FEATURE_MODEL_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fmlab/errors.h"
#include "fmlab/formula.h"

namespace fmlab {

class ModelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsatisfiableModelError : public ModelError {
 public:
  using ModelError::ModelError;
};

// How a feature hangs off its parent. The root is kMandatory.
enum class Decomposition { kMandatory, kOptional, kAlternativeMember, kOrMember };

// Group type formed by a feature's children.
enum class GroupKind { kNone, kAlternative, kOr };

struct Feature {
  FeatureId id = 0;
  std::string name;
  std::optional<FeatureId> parent;
  Decomposition decomposition = Decomposition::kMandatory;
  bool abstract_flag = false;
  GroupKind group = GroupKind::kNone;
  // Filled in by FeatureModel, declaration order.
  std::vector<FeatureId> children;

  friend bool operator==(const Feature&, const Feature&) = default;
};

class FeatureModel {
 public:
  // Validates the tree and constraints; throws ModelError. `features[i].id`
  // must equal i. Children lists are rebuilt from parent links.
  FeatureModel(std::string name, std::vector<Feature> features,
               std::vector<Formula> constraints);

  const std::string& name() const { return name_; }
  std::size_t feature_count() const { return features_.size(); }
  const std::vector<Feature>& features() const { return features_; }
  const Feature& feature(FeatureId id) const { return features_.at(id); }
  const std::vector<Formula>& constraints() const { return constraints_; }
  FeatureId root() const { return root_; }

  std::optional<FeatureId> Find(std::string_view name) const;
  // Throws ModelError for unknown names.
  FeatureId Id(std::string_view name) const;

  friend bool operator==(const FeatureModel& a, const FeatureModel& b) {
    return a.name_ == b.name_ && a.features_ == b.features_ &&
           a.constraints_ == b.constraints_;
  }

 private:
  std::string name_;
  std::vector<Feature> features_;
  std::vector<Formula> constraints_;
  FeatureId root_ = 0;
  std::unordered_map<std::string, FeatureId> by_name_;
};

// Direct semantic check on the tree and constraints. Throws
// std::invalid_argument when the width differs from the feature count.
bool IsValid(const FeatureModel& model, const Configuration& config);

struct CoreDead {
  std::vector<FeatureId> core;
  std::vector<FeatureId> dead;
};

// Per-feature satisfiability probes. Throws UnsatisfiableModelError.
CoreDead CoreAndDead(const FeatureModel& model);

// Features that are neither core nor dead, ascending.
std::vector<FeatureId> Toggleable(const FeatureModel& model,
                                  const CoreDead& core_dead);

}  // namespace fmlab

#endif  // FMLAB_FEATURE_MODEL_H_

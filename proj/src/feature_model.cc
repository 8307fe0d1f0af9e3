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

#include "fmlab/feature_model.h"

#include <stdexcept>

#include "fmlab/cnf.h"
#include "fmlab/solver.h"

namespace fmlab {
namespace {

Decomposition MemberKind(GroupKind g) {
  return g == GroupKind::kAlternative ? Decomposition::kAlternativeMember
                                      : Decomposition::kOrMember;
}

bool IsMember(Decomposition d) {
  return d == Decomposition::kAlternativeMember ||
         d == Decomposition::kOrMember;
}

}  // namespace

FeatureModel::FeatureModel(std::string name, std::vector<Feature> features,
                           std::vector<Formula> constraints)
    : name_(std::move(name)),
      features_(std::move(features)),
      constraints_(std::move(constraints)) {
  if (features_.empty()) throw ModelError("model has no features");
  std::optional<FeatureId> root;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    Feature& f = features_[i];
    if (f.id != i) throw ModelError("feature ids must be dense and ordered");
    if (f.name.empty()) throw ModelError("empty feature name");
    if (!by_name_.emplace(f.name, f.id).second) {
      throw ModelError("duplicate feature name '" + f.name + "'");
    }
    f.children.clear();
    if (!f.parent) {
      if (root) {
        throw ModelError("multiple roots: '" + features_[*root].name +
                         "' and '" + f.name + "'");
      }
      root = f.id;
    } else if (*f.parent >= features_.size() || *f.parent == f.id) {
      throw ModelError("feature '" + f.name + "' has an invalid parent");
    }
  }
  if (!root) throw ModelError("model has no root");
  root_ = *root;
  if (features_[root_].decomposition != Decomposition::kMandatory) {
    throw ModelError("root feature must be mandatory");
  }
  for (Feature& f : features_) {
    if (f.parent) features_[*f.parent].children.push_back(f.id);
  }
  // Every feature must reach the root without revisiting a node.
  for (const Feature& f : features_) {
    FeatureId cur = f.id;
    for (std::size_t steps = 0; features_[cur].parent; ++steps) {
      if (steps > features_.size()) {
        throw ModelError("cycle through feature '" + f.name + "'");
      }
      cur = *features_[cur].parent;
    }
  }
  for (const Feature& f : features_) {
    if (f.group == GroupKind::kNone) {
      for (FeatureId c : f.children) {
        if (IsMember(features_[c].decomposition)) {
          throw ModelError("group member '" + features_[c].name +
                           "' under non-group feature '" + f.name + "'");
        }
      }
      continue;
    }
    if (f.children.size() < 2) {
      throw ModelError("group '" + f.name + "' needs at least two members");
    }
    for (FeatureId c : f.children) {
      if (features_[c].decomposition != MemberKind(f.group)) {
        throw ModelError("child '" + features_[c].name + "' of group '" +
                         f.name + "' is not a member of that group");
      }
    }
  }
  for (const Formula& c : constraints_) {
    if (c.MaxVariable() >= features_.size()) {
      throw ModelError("constraint references an unknown feature");
    }
  }
}

std::optional<FeatureId> FeatureModel::Find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

FeatureId FeatureModel::Id(std::string_view name) const {
  if (std::optional<FeatureId> id = Find(name)) return *id;
  throw ModelError("unknown feature '" + std::string(name) + "'");
}

bool IsValid(const FeatureModel& model, const Configuration& config) {
  if (config.size() != model.feature_count()) {
    throw std::invalid_argument("configuration width " +
                                std::to_string(config.size()) +
                                " does not match feature count " +
                                std::to_string(model.feature_count()));
  }
  if (!config.test(model.root())) return false;
  for (const Feature& f : model.features()) {
    const bool on = config.test(f.id);
    if (f.parent && on && !config.test(*f.parent)) return false;
    if (f.parent && f.decomposition == Decomposition::kMandatory &&
        config.test(*f.parent) && !on) {
      return false;
    }
    if (f.group != GroupKind::kNone && on) {
      std::size_t selected = 0;
      for (FeatureId c : f.children) selected += config.test(c);
      if (selected == 0) return false;
      if (f.group == GroupKind::kAlternative && selected != 1) return false;
    }
  }
  for (const Formula& c : model.constraints()) {
    if (!c.Evaluate(config)) return false;
  }
  return true;
}

CoreDead CoreAndDead(const FeatureModel& model) {
  Solver solver(ToCnf(model));
  if (!solver.Solve()) {
    throw UnsatisfiableModelError("model '" + model.name() +
                                  "' has no valid configuration");
  }
  CoreDead out;
  for (const Feature& f : model.features()) {
    const int v = static_cast<int>(f.id) + 1;
    if (!solver.Solve({-v})) {
      out.core.push_back(f.id);
    } else if (!solver.Solve({v})) {
      out.dead.push_back(f.id);
    }
  }
  return out;
}

std::vector<FeatureId> Toggleable(const FeatureModel& model,
                                  const CoreDead& core_dead) {
  std::vector<bool> fixed(model.feature_count(), false);
  for (FeatureId f : core_dead.core) fixed[f] = true;
  for (FeatureId f : core_dead.dead) fixed[f] = true;
  std::vector<FeatureId> out;
  for (FeatureId f = 0; f < model.feature_count(); ++f) {
    if (!fixed[f]) out.push_back(f);
  }
  return out;
}

}  // namespace fmlab

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

// Brute-force reference implementations used by the tests and the acceptance
// check. Nothing here goes through the solver, the CNF encoder or the
// library's own validity check.

#ifndef FMLAB_TESTS_ORACLES_H_
#define FMLAB_TESTS_ORACLES_H_

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "fmlab/assoc_rules.h"
#include "fmlab/dataset.h"
#include "fmlab/feature_model.h"
#include "fmlab/formula.h"

namespace fmlab::oracle {

bool Eval(const Formula& f, const Configuration& c);
bool Valid(const FeatureModel& model, const Configuration& c);

// All valid configurations in ascending order, by trying every assignment.
// Only for small models.
std::vector<Configuration> Universe(const FeatureModel& model);

bool AnyMatches(const std::vector<Configuration>& universe,
                const std::vector<Literal>& literals);

// Features that take both values in the universe.
std::vector<FeatureId> Toggleable(const std::vector<Configuration>& universe,
                                  std::size_t width);

// Valid t-tuples over `features`, as literal lists in position order.
std::set<std::vector<Literal>> Tuples(
    const std::vector<Configuration>& universe,
    const std::vector<FeatureId>& features, int t);

std::size_t CountToggleable(const Configuration& c,
                            const std::vector<FeatureId>& toggleable);

// For each feature: indices with f = `value` minimizing (value = true) or
// maximizing (value = false) the number of selected toggleable features.
std::vector<std::vector<std::size_t>> CriterionSets(
    const std::vector<Configuration>& universe,
    const std::vector<FeatureId>& toggleable, bool value);

// Every lhs over `items` (no feature twice, at most cfg.max_lhs literals)
// and rhs stage meeting the thresholds, sorted by (lhs, rhs).
std::vector<Rule> Rules(const Dataset& dataset, const MiningConfig& cfg,
                        const std::vector<Literal>& items);

// Every universe member satisfying `a` satisfies `b`.
bool Implies(const std::vector<Configuration>& universe,
             const std::vector<Literal>& a, const std::vector<Literal>& b);

// Random feature model with 1..max_features features, at most
// max_constraints cross-tree constraints. May be unsatisfiable.
FeatureModel RandomModel(std::mt19937_64& rng, int max_features = 12,
                         int max_constraints = 4);

// Random formula over variables [0, width).
Formula RandomFormula(std::mt19937_64& rng, std::size_t width, int depth);

}  // namespace fmlab::oracle

#endif  // FMLAB_TESTS_ORACLES_H_

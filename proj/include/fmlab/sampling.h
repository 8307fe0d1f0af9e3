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

#ifndef FMLAB_SAMPLING_H_
#define FMLAB_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fmlab/enumeration.h"
#include "fmlab/feature_model.h"
#include "fmlab/tuple_space.h"

namespace fmlab {

struct Sample {
  std::vector<Configuration> configs;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;
};

// n distinct members drawn uniformly without replacement, in draw order.
// Throws std::invalid_argument when n > |universe|.
Sample RandomSample(const ConfigurationUniverse& universe, std::size_t n,
                    std::uint64_t seed);

struct TwiseOptions {
  // When set, ties between equal gains are broken by a seeded permutation
  // of the universe instead of the lowest index.
  std::optional<std::uint64_t> tie_break_seed;
};

// Greedy covering: repeatedly take the member covering the most uncovered
// tuples until none remain.
Sample TwiseSample(const ConfigurationUniverse& universe,
                   const TupleSpace& tuple_space,
                   const TwiseOptions& options = {});

// Jaccard distance over the selected concrete features; 0 when both are
// empty.
double JaccardDistance(const BitVector& a, const BitVector& b,
                       const BitVector& mask);
// Sum of pairwise distances over concrete features.
double SampleFitness(const FeatureModel& model,
                     const std::vector<Configuration>& configs);

// (1+1) evolutionary search for a maximally dissimilar sample. Precomputes
// the universe projection once so it can run many seeds cheaply.
class DissimilaritySampler {
 public:
  DissimilaritySampler(const FeatureModel& model,
                       const ConfigurationUniverse& universe);

  // Requires 2 <= n <= |universe|. When `accepted_fitness` is non-null it
  // receives the initial fitness followed by the fitness after every
  // accepted replacement.
  Sample Run(std::size_t n, std::uint64_t iterations, std::uint64_t seed,
             std::vector<double>* accepted_fitness = nullptr) const;

 private:
  const ConfigurationUniverse& universe_;
  std::vector<BitVector> projected_;
};

inline constexpr std::uint64_t kDefaultIterations = 10'000;

Sample DissimilaritySample(const FeatureModel& model,
                           const ConfigurationUniverse& universe,
                           std::size_t n, std::uint64_t iterations,
                           std::uint64_t seed);

// Criterion set per feature, as ascending universe indices.
struct CriterionSets {
  std::vector<FeatureId> features;
  std::vector<std::vector<std::size_t>> sets;
};

// S_f = members with f deselected that select the most toggleable features.
CriterionSets OneDisabledSets(const ConfigurationUniverse& universe,
                              const std::vector<FeatureId>& toggleable);
// S_f = members with f selected that select the fewest toggleable features.
CriterionSets OneEnabledSets(const ConfigurationUniverse& universe,
                             const std::vector<FeatureId>& toggleable);

// One uniform member of each non-empty set, in set order; repeated picks
// are dropped.
Sample PickOnePerSet(const ConfigurationUniverse& universe,
                     const CriterionSets& sets, std::string strategy,
                     std::uint64_t seed);
Sample OneDisabledSample(const ConfigurationUniverse& universe,
                         const std::vector<FeatureId>& toggleable,
                         std::uint64_t seed);
Sample AllOneDisabled(const ConfigurationUniverse& universe,
                      const std::vector<FeatureId>& toggleable);
Sample OneEnabledSample(const ConfigurationUniverse& universe,
                        const std::vector<FeatureId>& toggleable,
                        std::uint64_t seed);
Sample AllOneEnabled(const ConfigurationUniverse& universe,
                     const std::vector<FeatureId>& toggleable);

// Members with the most and the fewest selected features.
struct ExtremalSets {
  std::vector<std::size_t> most_enabled;
  std::vector<std::size_t> most_disabled;
};
ExtremalSets MostEnabledDisabledSets(const ConfigurationUniverse& universe);
Sample MostEnabledDisabledSample(const ConfigurationUniverse& universe,
                                 std::uint64_t seed);
Sample MostEnabledDisabledSample(const ConfigurationUniverse& universe,
                                 const ExtremalSets& sets,
                                 std::uint64_t seed);
Sample AllMostEnabledDisabled(const ConfigurationUniverse& universe);

// The whole universe.
Sample AllConfigurations(const ConfigurationUniverse& universe);

// Sample CSV uses the universe schema; the sidecar JSON holds strategy,
// seed, parameters and tool version.
void WriteSampleCsv(std::ostream& out, const FeatureModel& model,
                    const Sample& sample);
std::string ProvenanceJson(const Sample& sample);

}  // namespace fmlab

#endif  // FMLAB_SAMPLING_H_

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

#include "fmlab/sampling.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fmlab/random.h"

namespace fmlab {
namespace {

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string JoinIds(const std::vector<FeatureId>& ids) {
  std::string out;
  for (FeatureId id : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(id);
  }
  return out;
}

// Partial Fisher-Yates: the first n entries of a shuffled [0, size).
std::vector<std::size_t> DrawIndices(std::mt19937_64& rng, std::size_t size,
                                     std::size_t n) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + UniformIndex(rng, size - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  return idx;
}

Sample FromIndices(const ConfigurationUniverse& universe,
                   const std::vector<std::size_t>& indices,
                   std::string strategy, std::optional<std::uint64_t> seed) {
  Sample s;
  s.strategy = std::move(strategy);
  s.seed = seed;
  s.configs.reserve(indices.size());
  for (std::size_t i : indices) s.configs.push_back(universe[i]);
  return s;
}

std::vector<std::size_t> ToggleableCounts(
    const ConfigurationUniverse& universe,
    const std::vector<FeatureId>& toggleable) {
  std::vector<std::size_t> count(universe.size(), 0);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (FeatureId f : toggleable) count[i] += universe[i].test(f);
  }
  return count;
}

CriterionSets ExtremalPerFeature(const ConfigurationUniverse& universe,
                                 const std::vector<FeatureId>& toggleable,
                                 bool selected) {
  for (FeatureId f : toggleable) {
    if (f >= universe.width()) {
      throw std::invalid_argument("toggleable feature outside the universe");
    }
  }
  const std::vector<std::size_t> count = ToggleableCounts(universe, toggleable);
  CriterionSets out;
  out.features = toggleable;
  for (FeatureId f : toggleable) {
    std::vector<std::size_t> set;
    std::size_t best = 0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (universe[i].test(f) != selected) continue;
      // Disabled: maximize the count. Enabled: minimize it.
      const bool better = set.empty() ||
                          (selected ? count[i] < best : count[i] > best);
      if (better) {
        set.clear();
        best = count[i];
      }
      if (count[i] == best) set.push_back(i);
    }
    out.sets.push_back(std::move(set));
  }
  return out;
}

}  // namespace

Sample PickOnePerSet(const ConfigurationUniverse& universe,
                     const CriterionSets& sets, std::string strategy,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  std::vector<FeatureId> skipped;
  std::size_t duplicates = 0;
  for (std::size_t k = 0; k < sets.sets.size(); ++k) {
    const std::vector<std::size_t>& set = sets.sets[k];
    if (set.empty()) {
      skipped.push_back(sets.features[k]);
      continue;
    }
    const std::size_t i = set[UniformIndex(rng, set.size())];
    if (std::find(picked.begin(), picked.end(), i) != picked.end()) {
      ++duplicates;
    } else {
      picked.push_back(i);
    }
  }
  Sample s = FromIndices(universe, picked, std::move(strategy), seed);
  s.params["criteria"] = std::to_string(sets.sets.size());
  s.params["duplicates_dropped"] = std::to_string(duplicates);
  s.params["skipped_features"] = JoinIds(skipped);
  return s;
}

namespace {

Sample UnionOfSets(const ConfigurationUniverse& universe,
                   const CriterionSets& sets, std::string strategy) {
  std::vector<std::size_t> all;
  std::vector<FeatureId> skipped;
  for (std::size_t k = 0; k < sets.sets.size(); ++k) {
    if (sets.sets[k].empty()) skipped.push_back(sets.features[k]);
    all.insert(all.end(), sets.sets[k].begin(), sets.sets[k].end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Sample s = FromIndices(universe, all, std::move(strategy), std::nullopt);
  s.params["criteria"] = std::to_string(sets.sets.size());
  s.params["skipped_features"] = JoinIds(skipped);
  return s;
}

}  // namespace

Sample RandomSample(const ConfigurationUniverse& universe, std::size_t n,
                    std::uint64_t seed) {
  if (n > universe.size()) {
    throw std::invalid_argument("sample size " + std::to_string(n) +
                                " exceeds universe size " +
                                std::to_string(universe.size()));
  }
  std::mt19937_64 rng(seed);
  Sample s = FromIndices(universe, DrawIndices(rng, universe.size(), n),
                         "random", seed);
  s.params["n"] = std::to_string(n);
  return s;
}

Sample TwiseSample(const ConfigurationUniverse& universe,
                   const TupleSpace& tuple_space, const TwiseOptions& options) {
  const std::vector<FeatureId>& features = tuple_space.features();
  for (FeatureId f : features) {
    if (f >= universe.width()) {
      throw std::invalid_argument("tuple space does not match the universe");
    }
  }
  const int t = tuple_space.t();
  const int k = static_cast<int>(features.size());
  const std::size_t n = universe.size();
  const std::size_t words = (n + 63) / 64;
  const std::vector<std::uint8_t> bytes =
      internal::ProjectBytes(universe, features);
  std::vector<std::uint16_t> uncovered = tuple_space.valid_masks();
  std::size_t remaining = tuple_space.size();

  std::vector<std::uint64_t> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = i;
  if (options.tie_break_seed) {
    std::mt19937_64 rng(*options.tie_break_seed);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(key[i - 1], key[UniformIndex(rng, i)]);
    }
  }

  // members[2 * p + v]: universe members whose position p has value v.
  std::vector<std::vector<std::uint64_t>> members(
      2 * k, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (int p = 0; p < k; ++p) {
      members[2 * p + bytes[i * k + p]][i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }

  // Exact uncovered-tuple count per member. Every member covers C(k, t)
  // tuples, all valid by construction of the tuple space.
  std::vector<std::uint64_t> gain(n, tuple_space.combination_count());
  std::vector<std::uint64_t> scratch(words);
  std::vector<int> pos(t);
  std::vector<std::size_t> picked;
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (gain[i] > gain[best] || (gain[i] == gain[best] && key[i] < key[best])) {
        best = i;
      }
    }
    if (gain[best] == 0) {
      throw VerificationError("t-wise greedy stalled with uncovered tuples");
    }
    picked.push_back(best);
    const std::uint8_t* v = bytes.data() + best * k;
    // Walk the position sets in colex order; rank increases by one.
    for (int j = 0; j < t; ++j) pos[j] = j;
    for (std::size_t rank = 0;; ++rank) {
      unsigned mask = 0;
      for (int j = 0; j < t; ++j) mask |= unsigned{v[pos[j]]} << j;
      if ((uncovered[rank] >> mask) & 1u) {
        uncovered[rank] &= static_cast<std::uint16_t>(~(1u << mask));
        --remaining;
        const std::vector<std::uint64_t>& first = members[2 * pos[0] + v[pos[0]]];
        std::copy(first.begin(), first.end(), scratch.begin());
        for (int j = 1; j < t; ++j) {
          const std::vector<std::uint64_t>& m = members[2 * pos[j] + v[pos[j]]];
          for (std::size_t w = 0; w < words; ++w) scratch[w] &= m[w];
        }
        for (std::size_t w = 0; w < words; ++w) {
          for (std::uint64_t bits = scratch[w]; bits != 0; bits &= bits - 1) {
            --gain[(w << 6) | static_cast<std::size_t>(std::countr_zero(bits))];
          }
        }
      }
      int j = 0;
      while (j < t && pos[j] + 1 == (j + 1 < t ? pos[j + 1] : k)) ++j;
      if (j == t) break;
      ++pos[j];
      for (int i = 0; i < j; ++i) pos[i] = i;
    }
  }
  Sample s = FromIndices(universe, picked, "t-wise", std::nullopt);
  s.params["t"] = std::to_string(t);
  s.params["tuples"] = std::to_string(tuple_space.size());
  if (options.tie_break_seed) {
    s.params["tie_break_seed"] = std::to_string(*options.tie_break_seed);
  }
  return s;
}

double JaccardDistance(const BitVector& a, const BitVector& b,
                       const BitVector& mask) {
  BitVector x = a, y = b;
  x &= mask;
  y &= mask;
  const std::size_t uni = x.CountOr(y);
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(x.CountAnd(y)) / static_cast<double>(uni);
}

namespace {

BitVector ConcreteMask(const FeatureModel& model) {
  BitVector mask(model.feature_count());
  for (const Feature& f : model.features()) {
    if (!f.abstract_flag) mask.set(f.id);
  }
  return mask;
}

double Distance(const BitVector& a, const BitVector& b) {
  const std::size_t uni = a.CountOr(b);
  if (uni == 0) return 0.0;
  return 1.0 - static_cast<double>(a.CountAnd(b)) / static_cast<double>(uni);
}

}  // namespace

double SampleFitness(const FeatureModel& model,
                     const std::vector<Configuration>& configs) {
  const BitVector mask = ConcreteMask(model);
  double total = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t j = i + 1; j < configs.size(); ++j) {
      total += JaccardDistance(configs[i], configs[j], mask);
    }
  }
  return total;
}

DissimilaritySampler::DissimilaritySampler(
    const FeatureModel& model, const ConfigurationUniverse& universe)
    : universe_(universe) {
  if (universe.width() != model.feature_count()) {
    throw std::invalid_argument("universe does not belong to the model");
  }
  const BitVector mask = ConcreteMask(model);
  projected_.reserve(universe.size());
  for (const Configuration& c : universe.configs()) {
    BitVector p = c;
    p &= mask;
    projected_.push_back(std::move(p));
  }
}

Sample DissimilaritySampler::Run(std::size_t n, std::uint64_t iterations,
                                 std::uint64_t seed,
                                 std::vector<double>* accepted_fitness) const {
  const std::size_t size = universe_.size();
  if (n < 2 || n > size) {
    throw std::invalid_argument("dissimilarity sample size " +
                                std::to_string(n) + " outside [2, " +
                                std::to_string(size) + "]");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> member = DrawIndices(rng, size, n);
  std::vector<bool> in_sample(size, false);
  for (std::size_t i : member) in_sample[i] = true;

  std::vector<double> dist(n * n, 0.0);
  double fitness = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = Distance(projected_[member[i]], projected_[member[j]]);
      dist[i * n + j] = dist[j * n + i] = d;
      fitness += d;
    }
  }
  const double initial = fitness;
  if (accepted_fitness) accepted_fitness->assign(1, fitness);

  std::vector<double> fresh(n);
  std::uint64_t accepted = 0;
  for (std::uint64_t it = 0; it < iterations; ++it) {
    const std::size_t slot = UniformIndex(rng, n);
    const std::size_t mutant = UniformIndex(rng, size);
    // A member already in the sample would create a duplicate.
    if (in_sample[mutant]) continue;
    double delta = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == slot) continue;
      fresh[j] = Distance(projected_[mutant], projected_[member[j]]);
      delta += fresh[j] - dist[slot * n + j];
    }
    if (delta < 0) continue;
    in_sample[member[slot]] = false;
    in_sample[mutant] = true;
    member[slot] = mutant;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == slot) continue;
      dist[slot * n + j] = dist[j * n + slot] = fresh[j];
    }
    fitness += delta;
    ++accepted;
    if (accepted_fitness) accepted_fitness->push_back(fitness);
  }

  Sample s = FromIndices(universe_, member, "dissimilarity", seed);
  s.params["n"] = std::to_string(n);
  s.params["iterations"] = std::to_string(iterations);
  s.params["accepted"] = std::to_string(accepted);
  s.params["initial_fitness"] = FormatDouble(initial);
  s.params["final_fitness"] = FormatDouble(fitness);
  return s;
}

Sample DissimilaritySample(const FeatureModel& model,
                           const ConfigurationUniverse& universe,
                           std::size_t n, std::uint64_t iterations,
                           std::uint64_t seed) {
  return DissimilaritySampler(model, universe).Run(n, iterations, seed);
}

CriterionSets OneDisabledSets(const ConfigurationUniverse& universe,
                              const std::vector<FeatureId>& toggleable) {
  return ExtremalPerFeature(universe, toggleable, false);
}

CriterionSets OneEnabledSets(const ConfigurationUniverse& universe,
                             const std::vector<FeatureId>& toggleable) {
  return ExtremalPerFeature(universe, toggleable, true);
}

Sample OneDisabledSample(const ConfigurationUniverse& universe,
                         const std::vector<FeatureId>& toggleable,
                         std::uint64_t seed) {
  return PickOnePerSet(universe, OneDisabledSets(universe, toggleable),
                       "one-disabled", seed);
}

Sample AllOneDisabled(const ConfigurationUniverse& universe,
                      const std::vector<FeatureId>& toggleable) {
  return UnionOfSets(universe, OneDisabledSets(universe, toggleable),
                     "all-one-disabled");
}

Sample OneEnabledSample(const ConfigurationUniverse& universe,
                        const std::vector<FeatureId>& toggleable,
                        std::uint64_t seed) {
  return PickOnePerSet(universe, OneEnabledSets(universe, toggleable),
                       "one-enabled", seed);
}

Sample AllOneEnabled(const ConfigurationUniverse& universe,
                     const std::vector<FeatureId>& toggleable) {
  return UnionOfSets(universe, OneEnabledSets(universe, toggleable),
                     "all-one-enabled");
}

ExtremalSets MostEnabledDisabledSets(const ConfigurationUniverse& universe) {
  ExtremalSets out;
  if (universe.size() == 0) return out;
  std::size_t lo = universe[0].count(), hi = lo;
  for (const Configuration& c : universe.configs()) {
    lo = std::min(lo, c.count());
    hi = std::max(hi, c.count());
  }
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const std::size_t c = universe[i].count();
    if (c == hi) out.most_enabled.push_back(i);
    if (c == lo) out.most_disabled.push_back(i);
  }
  return out;
}

Sample MostEnabledDisabledSample(const ConfigurationUniverse& universe,
                                 std::uint64_t seed) {
  return MostEnabledDisabledSample(universe, MostEnabledDisabledSets(universe),
                                   seed);
}

Sample MostEnabledDisabledSample(const ConfigurationUniverse& universe,
                                 const ExtremalSets& sets,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  if (!sets.most_enabled.empty()) {
    picked.push_back(
        sets.most_enabled[UniformIndex(rng, sets.most_enabled.size())]);
    const std::size_t d =
        sets.most_disabled[UniformIndex(rng, sets.most_disabled.size())];
    if (d != picked[0]) picked.push_back(d);
  }
  return FromIndices(universe, picked, "most-enabled-disabled", seed);
}

Sample AllMostEnabledDisabled(const ConfigurationUniverse& universe) {
  const ExtremalSets sets = MostEnabledDisabledSets(universe);
  std::vector<std::size_t> all = sets.most_enabled;
  all.insert(all.end(), sets.most_disabled.begin(), sets.most_disabled.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return FromIndices(universe, all, "all-most-enabled-disabled", std::nullopt);
}

Sample AllConfigurations(const ConfigurationUniverse& universe) {
  Sample s;
  s.strategy = "all";
  s.configs = universe.configs();
  return s;
}

void WriteSampleCsv(std::ostream& out, const FeatureModel& model,
                    const Sample& sample) {
  WriteConfigurationsCsv(out, model, sample.configs);
}

std::string ProvenanceJson(const Sample& sample) {
  nlohmann::ordered_json j;
  j["strategy"] = sample.strategy;
  j["seed"] = sample.seed ? nlohmann::ordered_json(*sample.seed)
                          : nlohmann::ordered_json(nullptr);
  j["size"] = sample.configs.size();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : sample.params) params[k] = v;
  j["params"] = params;
  j["tool"] = "fmlab";
  j["version"] = FMLAB_VERSION;
  return j.dump(2) + "\n";
}

}  // namespace fmlab

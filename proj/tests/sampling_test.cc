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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fmlab/enumeration.h"
#include "fmlab/model_parser.h"
#include "fmlab/sampling.h"
#include "fmlab/tuple_space.h"
#include "oracles.h"

namespace fmlab {
namespace {

// Random satisfiable toy models with their universes.
struct Toy {
  FeatureModel model;
  ConfigurationUniverse universe;
  std::vector<FeatureId> toggleable;
};

std::vector<Toy> Toys(std::uint64_t seed, int count, int max_features = 12) {
  std::mt19937_64 rng(seed);
  std::vector<Toy> out;
  while (static_cast<int>(out.size()) < count) {
    FeatureModel m = oracle::RandomModel(rng, max_features, 4);
    if (CountValid(m) == 0) continue;
    ConfigurationUniverse u = EnumerateAll(m);
    std::vector<FeatureId> t = Toggleable(m, CoreAndDead(m));
    out.push_back({std::move(m), std::move(u), std::move(t)});
  }
  return out;
}

std::set<std::vector<Literal>> Covered(const std::vector<Configuration>& s,
                                       const std::set<std::vector<Literal>>& all) {
  std::set<std::vector<Literal>> out;
  for (const auto& tuple : all) {
    if (oracle::AnyMatches(s, tuple)) out.insert(tuple);
  }
  return out;
}

TEST(TupleSpace, Choose) {
  EXPECT_EQ(Choose(5, 2), 10u);
  EXPECT_EQ(Choose(38, 4), 73815u);
  EXPECT_EQ(Choose(3, 4), 0u);
}

TEST(TupleSpace, ValidTuplesMatchOracle) {
  for (const Toy& toy : Toys(31, 200)) {
    for (int t = 1; t <= std::min<int>(3, toy.toggleable.size()); ++t) {
      const TupleSpace space = BuildTupleSpace(toy.model, toy.universe, t);
      const auto expected =
          oracle::Tuples(toy.universe.configs(), toy.toggleable, t);
      const auto tuples = space.Tuples();
      ASSERT_EQ(std::set<std::vector<Literal>>(tuples.begin(), tuples.end()),
                expected);
      EXPECT_EQ(space.size(), expected.size());
      for (const auto& tuple : expected) EXPECT_TRUE(space.Contains(tuple));
      EXPECT_EQ(CountCovered(space, toy.universe.configs()), space.size());
    }
  }
}

TEST(TupleSpace, RanksAreColexicographic) {
  const TupleSpace space(2, {0, 1, 2, 3}, std::vector<std::uint16_t>(6, 15));
  EXPECT_EQ(space.Positions(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(space.Positions(1), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(space.Positions(2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(space.Positions(5), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(space.TupleAt(1, 2),
            (std::vector<Literal>{{0, false}, {2, true}}));
  EXPECT_FALSE(space.Contains({{0, true}}));
}

TEST(RandomSample, DistinctDeterministicAndSeedSensitive) {
  for (const Toy& toy : Toys(41, 50)) {
    const std::size_t n = toy.universe.size() / 2;
    const Sample a = RandomSample(toy.universe, n, 9);
    const Sample b = RandomSample(toy.universe, n, 9);
    EXPECT_EQ(a.configs, b.configs);
    EXPECT_EQ(a.configs.size(), n);
    std::set<Configuration> distinct(a.configs.begin(), a.configs.end());
    EXPECT_EQ(distinct.size(), n);
    for (const Configuration& c : a.configs) {
      EXPECT_TRUE(toy.universe.IndexOf(c).has_value());
    }
  }
  const Toy big = Toys(42, 1)[0];
  EXPECT_TRUE(RandomSample(big.universe, 0, 1).configs.empty());
  EXPECT_THROW(RandomSample(big.universe, big.universe.size() + 1, 1),
               std::invalid_argument);
}

TEST(RandomSample, CoversUniverseUniformly) {
  const FeatureModel m = ParseModel("model U { optional A optional B }");
  const ConfigurationUniverse u = EnumerateAll(m);
  std::vector<int> first(u.size(), 0);
  for (std::uint64_t s = 0; s < 4000; ++s) {
    ++first[*u.IndexOf(RandomSample(u, 1, s).configs[0])];
  }
  // 1000 expected per cell, sd about 27.
  for (int c : first) EXPECT_NEAR(c, 1000, 150);
}

TEST(TwiseSample, CoversEveryValidTupleAndLowerStrengths) {
  for (const Toy& toy : Toys(51, 200)) {
    for (int t = 1; t <= std::min<int>(3, toy.toggleable.size()); ++t) {
      const TupleSpace space = BuildTupleSpace(toy.model, toy.universe, t);
      const Sample s = TwiseSample(toy.universe, space);
      const auto all =
          oracle::Tuples(toy.universe.configs(), toy.toggleable, t);
      ASSERT_EQ(Covered(s.configs, all), all);
      if (t > 1) {
        const auto lower =
            oracle::Tuples(toy.universe.configs(), toy.toggleable, t - 1);
        EXPECT_EQ(Covered(s.configs, lower), lower);
      }
      std::set<Configuration> distinct(s.configs.begin(), s.configs.end());
      EXPECT_EQ(distinct.size(), s.configs.size());
      EXPECT_EQ(TwiseSample(toy.universe, space).configs, s.configs);
    }
  }
}

TEST(TwiseSample, SeededTieBreakingStillCovers) {
  for (const Toy& toy : Toys(52, 40)) {
    if (toy.toggleable.size() < 2) continue;
    const TupleSpace space = BuildTupleSpace(toy.model, toy.universe, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Sample s = TwiseSample(toy.universe, space, {seed});
      EXPECT_EQ(CountCovered(space, s.configs), space.size());
      EXPECT_EQ(s.params.at("tie_break_seed"), std::to_string(seed));
    }
  }
}

TEST(Dissimilarity, FitnessNeverDecreasesAndIsDeterministic) {
  for (const Toy& toy : Toys(61, 60)) {
    if (toy.universe.size() < 4) continue;
    const std::size_t n = toy.universe.size() / 2;
    const DissimilaritySampler sampler(toy.model, toy.universe);
    std::vector<double> trace;
    const Sample s = sampler.Run(n, 300, 5, &trace);
    ASSERT_FALSE(trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) {
      EXPECT_GE(trace[i], trace[i - 1] - 1e-12);
    }
    EXPECT_NEAR(trace.back(), SampleFitness(toy.model, s.configs), 1e-9);
    EXPECT_EQ(s.configs.size(), n);
    std::set<Configuration> distinct(s.configs.begin(), s.configs.end());
    EXPECT_EQ(distinct.size(), n);
    EXPECT_EQ(DissimilaritySample(toy.model, toy.universe, n, 300, 5).configs,
              s.configs);
  }
}

TEST(Dissimilarity, JaccardDistance) {
  BitVector a(4), b(4), mask(4);
  for (int i = 0; i < 4; ++i) mask.set(i);
  a.set(0);
  a.set(1);
  b.set(1);
  b.set(2);
  EXPECT_DOUBLE_EQ(JaccardDistance(a, b, mask), 1.0 - 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(JaccardDistance(a, a, mask), 0.0);
  EXPECT_DOUBLE_EQ(JaccardDistance(BitVector(4), BitVector(4), mask), 0.0);
}

TEST(CriterionSets, MatchOracle) {
  for (const Toy& toy : Toys(71, 200)) {
    const auto& configs = toy.universe.configs();
    const CriterionSets dis = OneDisabledSets(toy.universe, toy.toggleable);
    const CriterionSets en = OneEnabledSets(toy.universe, toy.toggleable);
    EXPECT_EQ(dis.features, toy.toggleable);
    EXPECT_EQ(dis.sets, oracle::CriterionSets(configs, toy.toggleable, false));
    EXPECT_EQ(en.sets, oracle::CriterionSets(configs, toy.toggleable, true));

    std::set<std::size_t> all_dis;
    for (const auto& s : dis.sets) all_dis.insert(s.begin(), s.end());
    EXPECT_EQ(AllOneDisabled(toy.universe, toy.toggleable).configs.size(),
              all_dis.size());

    const Sample pick = OneDisabledSample(toy.universe, toy.toggleable, 3);
    EXPECT_LE(pick.configs.size(), toy.toggleable.size());
    std::set<std::size_t> chosen;
    for (const Configuration& c : pick.configs) {
      chosen.insert(*toy.universe.IndexOf(c));
    }
    EXPECT_EQ(chosen.size(), pick.configs.size());
    for (const auto& s : dis.sets) {
      EXPECT_TRUE(std::any_of(s.begin(), s.end(),
                              [&](std::size_t i) { return chosen.count(i); }));
    }
    EXPECT_EQ(OneEnabledSample(toy.universe, toy.toggleable, 3).configs,
              OneEnabledSample(toy.universe, toy.toggleable, 3).configs);
  }
}

TEST(CriterionSets, ExtremalMatchOracle) {
  for (const Toy& toy : Toys(72, 100)) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const Configuration& c : toy.universe.configs()) {
      lo = std::min(lo, c.count());
      hi = std::max(hi, c.count());
    }
    const ExtremalSets sets = MostEnabledDisabledSets(toy.universe);
    for (std::size_t i = 0; i < toy.universe.size(); ++i) {
      const std::size_t c = toy.universe[i].count();
      EXPECT_EQ(std::count(sets.most_enabled.begin(), sets.most_enabled.end(),
                           i),
                c == hi ? 1 : 0);
      EXPECT_EQ(std::count(sets.most_disabled.begin(),
                           sets.most_disabled.end(), i),
                c == lo ? 1 : 0);
    }
    const Sample s = MostEnabledDisabledSample(toy.universe, 4);
    ASSERT_FALSE(s.configs.empty());
    EXPECT_EQ(s.configs[0].count(), hi);
    EXPECT_EQ(s.configs.back().count(), lo);
    EXPECT_LE(s.configs.size(), 2u);
  }
}

TEST(Sample, CsvAndProvenance) {
  const FeatureModel m = ParseModel("model P { optional A optional B }");
  const ConfigurationUniverse u = EnumerateAll(m);
  const Sample s = RandomSample(u, 2, 17);
  std::ostringstream csv;
  WriteSampleCsv(csv, m, s);
  std::istringstream in(csv.str());
  EXPECT_EQ(ReadConfigurationsCsv(in, m), s.configs);
  const std::string prov = ProvenanceJson(s);
  EXPECT_NE(prov.find("\"strategy\": \"random\""), std::string::npos);
  EXPECT_NE(prov.find("\"seed\": 17"), std::string::npos);
  EXPECT_EQ(AllConfigurations(u).configs, u.configs());
}

}  // namespace
}  // namespace fmlab

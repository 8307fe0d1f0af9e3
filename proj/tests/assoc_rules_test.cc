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
#include <sstream>

#include <gtest/gtest.h>

#include "fmlab/assoc_rules.h"
#include "fmlab/enumeration.h"
#include "fmlab/model_parser.h"
#include "oracles.h"

namespace fmlab {
namespace {

// The universe as a dataset; rows matching `planted` fail at its stage and
// other rows fail at a random stage with probability `noise`.
Dataset Planted(const ConfigurationUniverse& u, const FaultSignature& planted,
                double noise, std::mt19937_64& rng) {
  std::bernoulli_distribution flaky(noise), coin(0.5);
  std::vector<TestRecord> records;
  for (const Configuration& c : u.configs()) {
    TestRecord r;
    r.config = c;
    std::optional<Stage> stage;
    if (planted.Matches(c)) {
      stage = planted.stage;
    } else if (flaky(rng)) {
      stage = coin(rng) ? Stage::kCompile : Stage::kBuild;
    }
    if (stage == Stage::kCompile) {
      r.compile_ok = false;
      r.build_ok = false;
    } else if (stage == Stage::kBuild) {
      r.build_ok = false;
    }
    records.push_back(r);
  }
  return Dataset(u.width(), std::move(records));
}

std::vector<Literal> BothPolarities(const std::vector<FeatureId>& features) {
  std::vector<Literal> out;
  for (FeatureId f : features) {
    out.push_back({f, false});
    out.push_back({f, true});
  }
  return out;
}

std::vector<Rule> SortedByLhs(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs);
  });
  return rules;
}

TEST(AssocRules, WorkedExample) {
  // Six of the eight configurations of three optional features; rows with
  // both A and B fail to build.
  const FeatureModel m =
      ParseModel("model R { optional A optional B optional C }");
  std::istringstream csv(
      "R,A,B,C,Compile,Build,tags\n"
      "1,0,0,0,OK,OK,\n"
      "1,1,0,0,OK,OK,\n"
      "1,0,1,0,OK,OK,\n"
      "1,1,1,0,OK,KO,\n"
      "1,1,1,1,OK,KO,\n"
      "1,0,0,1,OK,OK,\n");
  const SchemaMapping mapping = SchemaMapping::Identity(m);
  const Dataset d = LoadDataset(csv, mapping, m);

  MiningConfig cfg;
  cfg.min_support = 0.3;
  const std::vector<Rule> rules = MineRules(d, m, cfg, mapping);
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(FormatLhs(rules[0].lhs, m), "{A, B}");
  EXPECT_EQ(rules[0].rhs, Stage::kBuild);
  EXPECT_EQ(rules[0].matched_rows, 2u);
  EXPECT_EQ(rules[0].lhs_rows, 2u);
  EXPECT_DOUBLE_EQ(rules[0].support, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(rules[0].confidence, 1.0);

  cfg.min_support = 0.1;
  const std::vector<Rule> all = MineRules(d, m, cfg, mapping);
  // {A,B}, {A,C}, {B,C}, {A,B,C}, {A,B,!C}.
  EXPECT_EQ(all.size(), 5u);
  const std::vector<Rule> pruned = PruneRedundant(all, m);
  ASSERT_EQ(pruned.size(), 3u);
  EXPECT_EQ(FormatLhs(pruned[0].lhs, m), "{A, B}");
  EXPECT_EQ(FormatLhs(pruned[1].lhs, m), "{A, C}");
  EXPECT_EQ(FormatLhs(pruned[2].lhs, m), "{B, C}");

  std::ostringstream out;
  WriteRulesCsv(out, {rules[0]}, m);
  EXPECT_EQ(out.str(),
            "lhs,rhs,support,confidence,matched_rows\n"
            "\"{A, B}\",Build=KO,0.333333,1.000000,2\n");
  const auto sigs = ToSignatures({rules[0]}, m);
  EXPECT_EQ(sigs[0].id, "A & B => Build");
}

TEST(AssocRules, MatchesBruteForceOnRandomModels) {
  std::mt19937_64 rng(120);
  int checked = 0;
  while (checked < 200) {
    const FeatureModel m = oracle::RandomModel(rng, 9, 3);
    if (CountValid(m) < 4) continue;
    const ConfigurationUniverse u = EnumerateAll(m);
    const std::vector<FeatureId> tog = Toggleable(m, CoreAndDead(m));
    if (tog.empty()) continue;
    FaultSignature planted;
    planted.stage = std::bernoulli_distribution(0.5)(rng) ? Stage::kBuild
                                                          : Stage::kCompile;
    planted.literals.push_back(
        {tog[std::uniform_int_distribution<std::size_t>(0, tog.size() - 1)(
             rng)],
         true});
    const Dataset d = Planted(u, planted, 0.15, rng);
    MiningConfig cfg;
    cfg.max_lhs = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    cfg.min_support = std::uniform_real_distribution<double>(0.0, 0.2)(rng);
    cfg.min_confidence = checked % 2 ? 1.0 : 0.6;
    const std::vector<Literal> items = BothPolarities(tog);
    const std::vector<Rule> mined = SortedByLhs(MineRules(d, cfg, items));
    const std::vector<Rule> expected = oracle::Rules(d, cfg, items);
    ASSERT_EQ(mined.size(), expected.size());
    for (std::size_t i = 0; i < mined.size(); ++i) {
      EXPECT_EQ(mined[i].lhs, expected[i].lhs);
      EXPECT_EQ(mined[i].rhs, expected[i].rhs);
      EXPECT_EQ(mined[i].matched_rows, expected[i].matched_rows);
      EXPECT_EQ(mined[i].lhs_rows, expected[i].lhs_rows);
      EXPECT_TRUE(VerifyRule(mined[i], d));
    }
    ++checked;
  }
}

TEST(AssocRules, SupportIsAntiMonotone) {
  std::mt19937_64 rng(121);
  for (int i = 0; i < 60; ++i) {
    const FeatureModel m = oracle::RandomModel(rng, 9, 2);
    if (CountValid(m) < 4) continue;
    const ConfigurationUniverse u = EnumerateAll(m);
    const std::vector<FeatureId> tog = Toggleable(m, CoreAndDead(m));
    const Dataset d = Planted(u, {"none", {{0, false}}, Stage::kBuild}, 0.4,
                              rng);
    MiningConfig cfg;
    cfg.min_support = 0;
    cfg.min_confidence = 0;
    cfg.max_lhs = 3;
    const std::vector<Rule> rules = MineRules(d, cfg, BothPolarities(tog));
    for (const Rule& r : rules) {
      for (const Rule& s : rules) {
        if (s.rhs != r.rhs || s.lhs.size() >= r.lhs.size()) continue;
        if (std::includes(r.lhs.begin(), r.lhs.end(), s.lhs.begin(),
                          s.lhs.end())) {
          EXPECT_GE(s.matched_rows, r.matched_rows);
          EXPECT_GE(s.lhs_rows, r.lhs_rows);
        }
      }
    }
  }
}

TEST(AssocRules, PrunedRulesFormAnAntichain) {
  std::mt19937_64 rng(122);
  int checked = 0;
  while (checked < 100) {
    const FeatureModel m = oracle::RandomModel(rng, 9, 3);
    if (CountValid(m) < 4) continue;
    const ConfigurationUniverse u = EnumerateAll(m);
    const std::vector<FeatureId> tog = Toggleable(m, CoreAndDead(m));
    if (tog.size() < 2) continue;
    const FaultSignature planted{
        "p", {{tog[0], true}, {tog[1], false}}, Stage::kBuild};
    if (!oracle::AnyMatches(u.configs(), planted.literals)) continue;
    const Dataset d = Planted(u, planted, 0.1, rng);
    MiningConfig cfg;
    cfg.min_support = 0.01;
    const std::vector<Rule> all = MineRules(d, cfg, BothPolarities(tog));
    const std::vector<Rule> kept = PruneRedundant(all, m);
    const auto& universe = u.configs();
    for (const Rule& a : kept) {
      EXPECT_TRUE(oracle::AnyMatches(universe, a.lhs));
      for (const Rule& b : kept) {
        if (&a == &b || a.rhs != b.rhs) continue;
        EXPECT_FALSE(oracle::Implies(universe, a.lhs, b.lhs) &&
                     a.confidence <= b.confidence)
            << FormatLhs(a.lhs, m) << " vs " << FormatLhs(b.lhs, m);
      }
    }
    // Every dropped rule is implied by a kept one.
    for (const Rule& r : all) {
      const bool is_kept = std::any_of(kept.begin(), kept.end(), [&](const Rule& k) {
        return k.lhs == r.lhs && k.rhs == r.rhs;
      });
      if (is_kept) continue;
      const bool covered =
          std::any_of(kept.begin(), kept.end(), [&](const Rule& k) {
            return k.rhs == r.rhs && k.confidence >= r.confidence &&
                   oracle::Implies(universe, r.lhs, k.lhs);
          });
      EXPECT_TRUE(covered) << FormatLhs(r.lhs, m);
    }
    // The planted lhs, or something it implies, survives.
    EXPECT_TRUE(std::any_of(kept.begin(), kept.end(), [&](const Rule& k) {
      return k.rhs == Stage::kBuild &&
             oracle::Implies(universe, planted.literals, k.lhs);
    }));
    ++checked;
  }
}

TEST(AssocRules, RecoversPlantedThreeLiteralFault) {
  const FeatureModel m = ParseModel(R"(model P {
    optional A optional B optional C optional D optional E optional F
  })");
  const ConfigurationUniverse u = EnumerateAll(m);
  const FaultSignature planted{
      "abc",
      {{m.Id("A"), true}, {m.Id("B"), false}, {m.Id("C"), true}},
      Stage::kCompile};
  std::mt19937_64 rng(0);
  const Dataset d = Planted(u, planted, 0.0, rng);
  MiningConfig cfg;
  cfg.min_support = 0.01;
  const std::vector<Rule> rules =
      PruneRedundant(MineRules(d, m, cfg, SchemaMapping::Identity(m)), m);
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules[0].lhs, planted.literals);
  EXPECT_EQ(rules[0].rhs, Stage::kCompile);
  EXPECT_EQ(rules[0].matched_rows, 8u);
  EXPECT_DOUBLE_EQ(rules[0].support, 8.0 / 64.0);

  // Limiting the lhs size hides it.
  cfg.max_lhs = 2;
  EXPECT_TRUE(MineRules(d, m, cfg, SchemaMapping::Identity(m)).empty());
}

TEST(AssocRules, AllPassingDatasetHasNoRules) {
  const FeatureModel m = ParseModel("model P { optional A optional B }");
  const ConfigurationUniverse u = EnumerateAll(m);
  std::mt19937_64 rng(0);
  const Dataset d = Planted(u, {"none", {{1, true}, {1, false}}}, 0.0, rng);
  MiningConfig cfg;
  cfg.min_support = 0;
  cfg.min_confidence = 0;
  EXPECT_TRUE(MineRules(d, m, cfg, SchemaMapping::Identity(m)).empty());
}

TEST(AssocRules, ItemsAndValidation) {
  const FeatureModel m =
      ParseModel("model P { mandatory A optional B optional C }");
  SchemaMapping mapping = SchemaMapping::Identity(m);
  // A is core; its literals are not items.
  EXPECT_EQ(MiningItems(m, mapping).size(), 4u);
  mapping.entries.erase(
      std::remove_if(mapping.entries.begin(), mapping.entries.end(),
                     [&](const MappingEntry& e) {
                       return e.feature == m.Id("C") && !e.selected;
                     }),
      mapping.entries.end());
  EXPECT_EQ(MiningItems(m, mapping).size(), 3u);

  MiningConfig bad;
  bad.max_lhs = 0;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = {};
  bad.min_support = 1.5;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
  bad = {};
  bad.min_confidence = -0.1;
  EXPECT_THROW(bad.Validate(), std::invalid_argument);
}

TEST(AssocRules, VerifyRuleDetectsTampering) {
  const FeatureModel m = ParseModel("model P { optional A optional B }");
  const ConfigurationUniverse u = EnumerateAll(m);
  std::mt19937_64 rng(0);
  const Dataset d = Planted(u, {"a", {{1, true}}, Stage::kBuild}, 0.0, rng);
  MiningConfig cfg;
  std::vector<Rule> rules = MineRules(d, m, cfg, SchemaMapping::Identity(m));
  ASSERT_FALSE(rules.empty());
  EXPECT_TRUE(VerifyRule(rules[0], d));
  rules[0].matched_rows += 1;
  EXPECT_FALSE(VerifyRule(rules[0], d));
}

}  // namespace
}  // namespace fmlab

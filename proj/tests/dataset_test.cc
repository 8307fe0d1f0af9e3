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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fmlab/dataset.h"
#include "fmlab/enumeration.h"
#include "fmlab/evaluation.h"
#include "fmlab/model_parser.h"
#include "oracles.h"

namespace fmlab {
namespace {

constexpr char kShop[] = R"(model Shop abstract {
  mandatory alt Payment abstract {
    Card
    Cash
  }
  optional Search
  optional or Extras abstract {
    Wishlist
    Reviews
  }
  constraint Reviews => Search;
})";

// Columns: payment (card/cash), search (yes/no), extras (';' list).
constexpr char kShopMapping[] = R"({
  "status": {
    "compile": {"column": "Compile", "ok": ["OK"], "fail": ["KO"]},
    "build": {"column": "Build", "ok": ["OK"], "fail": ["KO"],
              "not_run": ["ND"]}
  },
  "tag_column": "bug",
  "features": [
    {"feature": "Card", "column": "payment", "equals": "card"},
    {"feature": "Cash", "column": "payment", "equals": "cash"},
    {"feature": "Search", "column": "search", "equals": "yes"},
    {"feature": "Search", "selected": false, "column": "search",
     "equals": "no"},
    {"feature": "Wishlist", "column": "extras", "contains": "wishlist"},
    {"feature": "Reviews", "column": "extras", "contains": "reviews"}
  ]
})";

constexpr char kShopHeader[] = "payment,search,extras,Compile,Build,bug\n";

Dataset LoadShop(const std::string& rows) {
  const FeatureModel m = ParseModel(kShop);
  std::istringstream in(std::string(kShopHeader) + rows);
  return LoadDataset(in, SchemaMapping::FromJson(kShopMapping, m), m);
}

TEST(Dataset, DecodesMappedAndDerivedFeatures) {
  const FeatureModel m = ParseModel(kShop);
  const Dataset d = LoadShop(
      "card,no,,OK,OK,\n"
      "cash,yes,reviews;wishlist,KO,ND,ISSUE:env;x\n"
      "card,yes,reviews,OK,KO,\n");
  ASSERT_EQ(d.size(), 3u);
  const Configuration& c = d[1].config;
  EXPECT_TRUE(c.test(m.Id("Shop")));
  EXPECT_TRUE(c.test(m.Id("Payment")));
  EXPECT_TRUE(c.test(m.Id("Cash")));
  EXPECT_TRUE(c.test(m.Id("Extras")));
  EXPECT_TRUE(c.test(m.Id("Wishlist")));
  EXPECT_FALSE(d[0].config.test(m.Id("Extras")));
  EXPECT_FALSE(d[1].compile_ok);
  EXPECT_EQ(d[1].failure_stage(), Stage::kCompile);
  EXPECT_EQ(d[2].failure_stage(), Stage::kBuild);
  EXPECT_FALSE(d[0].failure_stage().has_value());
  EXPECT_TRUE(d[1].HasTag("ISSUE:env"));
  EXPECT_TRUE(d[1].HasTag("x"));
  EXPECT_EQ(d.failed_count(), 2u);
  EXPECT_EQ(d.Find(d[2].config), 2u);
  EXPECT_EQ(d[2].line, 4u);
}

TEST(Dataset, RejectsBadRows) {
  // Reviews without Search violates the model.
  EXPECT_THROW(LoadShop("card,no,reviews,OK,OK,\n"), ValidationError);
  EXPECT_THROW(LoadShop("card,no,,OK,OK,\ncard,no,,OK,KO,\n"),
               ValidationError);
  EXPECT_THROW(LoadShop("card,no,,OK,MAYBE,\n"), ValidationError);
  EXPECT_THROW(LoadShop("card,no,,OK,ND,\n"), ValidationError);
  EXPECT_THROW(LoadShop("card,no,,KO,OK,\n"), ValidationError);
  EXPECT_THROW(LoadShop("card,maybe,,OK,OK,\n"), ValidationError);
  EXPECT_THROW(LoadShop("card,no,,OK\n"), ValidationError);
  try {
    LoadShop("card,no,,OK,OK,\nvisa,no,,OK,OK,\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  const FeatureModel m = ParseModel(kShop);
  std::istringstream no_column("payment,Compile,Build,bug\n");
  EXPECT_THROW(
      LoadDataset(no_column, SchemaMapping::FromJson(kShopMapping, m), m),
      ValidationError);
  EXPECT_THROW(SchemaMapping::FromJson("{\"status\": 1}", m), ValidationError);
}

TEST(Dataset, MappingRoundTrip) {
  const FeatureModel m = ParseModel(kShop);
  const SchemaMapping a = SchemaMapping::FromJson(kShopMapping, m);
  const SchemaMapping b = SchemaMapping::FromJson(a.ToJson(m), m);
  EXPECT_EQ(b.ToJson(m), a.ToJson(m));
  EXPECT_EQ(a.ItemLiterals().size(), 6u);
}

TEST(Dataset, IdentityMappingLoadsUniverse) {
  std::mt19937_64 rng(90);
  for (int i = 0; i < 50; ++i) {
    const FeatureModel m = oracle::RandomModel(rng, 8, 3);
    const auto universe = oracle::Universe(m);
    if (universe.empty()) continue;
    std::ostringstream csv;
    csv << m.feature(0).name;
    for (std::size_t f = 1; f < m.feature_count(); ++f) {
      csv << "," << m.feature(f).name;
    }
    csv << ",Compile,Build,tags\n";
    for (const Configuration& c : universe) {
      for (std::size_t f = 0; f < m.feature_count(); ++f) {
        csv << (f ? "," : "") << c.test(f);
      }
      csv << ",OK,OK,\n";
    }
    std::istringstream in(csv.str());
    const Dataset d = LoadDataset(in, SchemaMapping::Identity(m), m);
    ASSERT_EQ(d.size(), universe.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      EXPECT_EQ(d[k].config, universe[k]);
    }
  }
}

// Dataset over a whole universe where `fails(c)` decides a Build failure.
template <typename F>
Dataset Synthetic(const ConfigurationUniverse& u, F fails) {
  std::vector<TestRecord> records;
  for (const Configuration& c : u.configs()) {
    TestRecord r;
    r.config = c;
    r.build_ok = !fails(c);
    records.push_back(r);
  }
  return Dataset(u.width(), std::move(records));
}

TEST(Evaluation, ReportsAndMonotonicity) {
  std::mt19937_64 rng(100);
  for (int i = 0; i < 100; ++i) {
    const FeatureModel m = oracle::RandomModel(rng, 10, 3);
    if (CountValid(m) < 4) continue;
    const ConfigurationUniverse u = EnumerateAll(m);
    const FeatureId f = std::uniform_int_distribution<FeatureId>(
        0, m.feature_count() - 1)(rng);
    std::bernoulli_distribution noise(0.2);
    const Dataset d = Synthetic(
        u, [&](const Configuration& c) { return c.test(f) || noise(rng); });
    const std::vector<FaultSignature> sigs = {
        {"F", {{f, true}}, Stage::kBuild}};
    const Evaluator ev(d, sigs);
    const Sample small = RandomSample(u, u.size() / 2, i);
    const Sample big = RandomSample(u, u.size(), i);
    const EvaluationReport rs = ev.Evaluate(small);
    const EvaluationReport rb = ev.Evaluate(big);
    EXPECT_EQ(rb.failures_found, d.failed_count());
    // `big` is a permutation of the universe whose prefix is `small`.
    EXPECT_LE(rs.failures_found, rb.failures_found);
    EXPECT_LE(rs.faults_found.size(), rb.faults_found.size());
    std::size_t failures = 0;
    bool found = false;
    for (const Configuration& c : small.configs) {
      const bool failed = d[*d.Find(c)].failed();
      failures += failed;
      found |= failed && c.test(f);
    }
    EXPECT_EQ(rs.failures_found, failures);
    EXPECT_EQ(rs.faults_found.size(), found ? 1u : 0u);
    ASSERT_TRUE(rs.failure_efficiency.has_value());
    EXPECT_DOUBLE_EQ(*rs.failure_efficiency,
                     static_cast<double>(failures) / small.configs.size());
  }
}

TEST(Evaluation, EmptySampleAndEnvironmentExclusion) {
  const FeatureModel m = ParseModel("model E { optional A optional B }");
  const ConfigurationUniverse u = EnumerateAll(m);
  std::vector<TestRecord> records;
  for (const Configuration& c : u.configs()) {
    TestRecord r;
    r.config = c;
    r.build_ok = !c.test(1);
    if (c.test(2) && !c.test(1)) {
      r.compile_ok = false;
      r.build_ok = false;
      r.tags = {"ISSUE:env"};
    }
    records.push_back(r);
  }
  const Dataset d(u.width(), records);
  const std::vector<FaultSignature> sigs = {{"A", {{1, true}}, Stage::kBuild}};
  const EvaluationReport empty = Evaluator(d, sigs).Evaluate(Sample{});
  EXPECT_FALSE(empty.failure_efficiency.has_value());
  EXPECT_FALSE(empty.fault_efficiency.has_value());
  const Sample all = AllConfigurations(u);
  const EvaluationReport with = Evaluator(d, sigs).Evaluate(all);
  EXPECT_EQ(with.failures_found, 3u);
  EXPECT_EQ(with.unattributed_failures, 1u);
  EvaluationOptions opts;
  opts.exclude_environment_failures = true;
  const EvaluationReport without = Evaluator(d, sigs, opts).Evaluate(all);
  EXPECT_EQ(without.failures_found, 2u);
  EXPECT_EQ(without.unattributed_failures, 0u);
  EXPECT_NE(ReportToJson(empty).find("\"failure_efficiency\": null"),
            std::string::npos);

  Configuration stranger(5);
  EXPECT_THROW(Evaluator(d, sigs).Evaluate(std::vector<Configuration>{stranger}),
               ValidationError);
  // A signature matching a passing record is not a fault signature.
  EXPECT_THROW(Evaluator(d, {{"B", {{2, true}}, Stage::kBuild}}),
               ValidationError);
}

TEST(Evaluation, AttributionCounts) {
  const FeatureModel m =
      ParseModel("model E { optional A optional B optional C }");
  const ConfigurationUniverse u = EnumerateAll(m);
  const Dataset d = Synthetic(u, [](const Configuration& c) {
    return c.test(1) || c.test(2) || (c.test(3) && !c.test(1));
  });
  const std::vector<FaultSignature> sigs = {
      {"A", {{1, true}}, Stage::kBuild}, {"B", {{2, true}}, Stage::kBuild}};
  const Attribution a = AttributeFaults(d, sigs);
  EXPECT_EQ(a.failed_records.size(), 7u);
  EXPECT_EQ(a.raw_counts, (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(a.exclusive_counts, (std::vector<std::size_t>{4, 2}));
  EXPECT_EQ(a.overlapping, 2u);
  EXPECT_EQ(a.unattributed, 1u);
  EXPECT_EQ(a.attributed(), 6u);
}

TEST(Evaluation, SummaryUsesSampleStandardDeviation) {
  std::vector<EvaluationReport> reps(3);
  const std::size_t failures[] = {1, 2, 6};
  for (int i = 0; i < 3; ++i) {
    reps[i].sample_size = 4;
    reps[i].failures_found = failures[i];
    reps[i].faults_found.assign(i, "x");
  }
  const SummaryRow row = Summarize("R", reps);
  EXPECT_DOUBLE_EQ(row.failures_mean, 3.0);
  EXPECT_DOUBLE_EQ(*row.failures_sd, std::sqrt(7.0));
  EXPECT_DOUBLE_EQ(*row.faults_sd, 1.0);
  EXPECT_DOUBLE_EQ(*row.failure_efficiency, 0.75);
  const SummaryRow one = Summarize("D", {reps[0]});
  EXPECT_FALSE(one.failures_sd.has_value());

  std::ostringstream md, csv;
  WriteSummaryMarkdown(md, {one});
  WriteSummaryCsv(csv, {one});
  EXPECT_NE(md.str().find("1.000 (N.A.)"), std::string::npos);
  EXPECT_NE(csv.str().find("D,1,4,1.000,,"), std::string::npos);
}

TEST(Evaluation, SignaturesJsonRoundTrip) {
  const FeatureModel m = ParseModel(kShop);
  const std::vector<FaultSignature> sigs = {
      {"x", {{m.Id("Card"), true}, {m.Id("Search"), false}}, Stage::kCompile}};
  const std::string json = SignaturesToJson(sigs, m);
  const auto back = SignaturesFromJson(json, m);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].literals, sigs[0].literals);
  EXPECT_EQ(back[0].stage, Stage::kCompile);
  EXPECT_EQ(FormatLiterals(back[0].literals, m), "Card & !Search");
  EXPECT_THROW(SignaturesFromJson(R"([{"id":"y","literals":["Nope"],
      "stage":"Build"}])", m), ValidationError);
}

}  // namespace
}  // namespace fmlab

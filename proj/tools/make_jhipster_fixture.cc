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

// Writes the JHipster ground-truth fixture: dataset CSV, schema mapping and
// fault signatures. The published results file is not vendored, so the
// dataset is synthesized deterministically from the enumerated universe:
// the six published fault signatures fail by construction, an unreproducible
// OAuth2/SQL/Docker failure mode fills part of its slice, and a set of rows
// carries the environment tag. Totals follow the published ones (26,256
// rows, 9,376 failures, 224 compilation failures, 242 environment issues).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fmlab/csv.h"
#include "fmlab/dataset.h"
#include "fmlab/enumeration.h"
#include "fmlab/evaluation.h"
#include "fmlab/model_parser.h"
#include "fmlab/random.h"

namespace {

using namespace fmlab;

constexpr std::uint64_t kSeed = 361;
constexpr std::size_t kFailures = 9376;
constexpr std::size_t kEnvironment = 242;
constexpr std::size_t kCompileFailures = 224;

struct Column {
  std::string name;
  // (feature, cell value) pairs; the first selected feature wins.
  std::vector<std::pair<std::string, std::string>> values;
  std::string otherwise;
  // Boolean column: "true" when the feature is selected.
  std::string flag;
};

std::vector<Column> Columns() {
  return {
      {"applicationType",
       {{"MicroserviceApplication", "microservice"},
        {"UaaServer", "uaa"},
        {"MicroserviceGateway", "gateway"},
        {"Monolithic", "monolith"}},
       "",
       ""},
      {"authenticationType",
       {{"HTTPSession", "session"},
        {"OAuth2", "oauth2"},
        {"Uaa", "uaa"},
        {"JWT", "jwt"}},
       "",
       ""},
      {"databaseType",
       {{"SQL", "sql"}, {"Cassandra", "cassandra"}, {"MongoDB", "mongodb"}},
       "no",
       ""},
      {"devDatabaseType",
       {{"DiskBased", "h2Disk"},
        {"InMemory", "h2Memory"},
        {"PostgreSQLDev", "postgresql"},
        {"MariaDBDev", "mariadb"},
        {"MySql", "mysql"},
        {"Cassandra", "cassandra"},
        {"MongoDB", "mongodb"}},
       "no",
       ""},
      {"prodDatabaseType",
       {{"MySQL", "mysql"},
        {"MariaDB", "mariadb"},
        {"PostgreSQL", "postgresql"},
        {"Cassandra", "cassandra"},
        {"MongoDB", "mongodb"}},
       "no",
       ""},
      {"hibernateCache",
       {{"HazelCast", "hazelcast"}, {"EhCache", "ehcache"}},
       "no",
       ""},
      {"searchEngine", {{"ElasticSearch", "elasticsearch"}}, "no", ""},
      {"enableSocialSignIn", {}, "", "SocialLogin"},
      {"websocket", {{"SpringWebSockets", "spring-websocket"}}, "no", ""},
      {"clusteredHttpSession", {{"ClusteredSession", "hazelcast"}}, "no", ""},
      {"buildTool", {{"Gradle", "gradle"}, {"Maven", "maven"}}, "", ""},
      {"useSass", {}, "", "Libsass"},
      {"enableTranslation", {}, "", "InternationalizationSupport"},
      {"Docker", {}, "", "Docker"},
  };
}

SchemaMapping BuildMapping(const FeatureModel& model) {
  SchemaMapping m;
  auto add = [&](const std::string& feature, bool selected,
                 const std::string& column, ColumnPredicate::Op op,
                 const std::string& value) {
    m.entries.push_back({model.Id(feature), selected, {column, op, value}});
  };
  const auto eq = ColumnPredicate::Op::kEquals;
  for (const Column& c : Columns()) {
    if (!c.flag.empty()) {
      add(c.flag, true, c.name, eq, "true");
      add(c.flag, false, c.name, eq, "false");
      continue;
    }
    if (c.name == "devDatabaseType" || c.name == "prodDatabaseType") {
      for (const auto& [f, v] : c.values) {
        if (f != "Cassandra" && f != "MongoDB") add(f, true, c.name, eq, v);
      }
      continue;
    }
    for (const auto& [f, v] : c.values) add(f, true, c.name, eq, v);
  }
  add("Database", false, "databaseType", eq, "no");
  add("Hibernate2ndLvlCache", false, "hibernateCache", eq, "no");
  add("ElasticSearch", false, "searchEngine", eq, "no");
  add("SpringWebSockets", false, "websocket", eq, "no");
  add("ClusteredSession", false, "clusteredHttpSession", eq, "no");
  for (const char* f : {"Protractor", "Gatling", "Cucumber"}) {
    std::string v = f;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    add(f, true, "testFrameworks", ColumnPredicate::Op::kContains, v);
  }
  m.compile = {"Compile", {"OK"}, {"KO"}, {}};
  m.build = {"Build", {"OK"}, {"KO"}, {"ND"}};
  m.tag_column = "bug";
  return m;
}

std::vector<FaultSignature> PublishedSignatures(const FeatureModel& model) {
  auto lit = [&](const char* name, bool value = true) {
    return Literal{model.Id(name), value};
  };
  return {
      {"MoSo", {lit("MongoDB"), lit("SocialLogin")}, Stage::kCompile},
      {"MaGr", {lit("MariaDB"), lit("Gradle")}, Stage::kBuild},
      {"UaDo", {lit("Uaa"), lit("Docker")}, Stage::kBuild},
      {"OASQL", {lit("Uaa"), lit("Hibernate2ndLvlCache", false)},
       Stage::kBuild},
      {"UaEh", {lit("Uaa"), lit("EhCache")}, Stage::kBuild},
      {"MaDo",
       {lit("MariaDB"), lit("Monolithic"), lit("ElasticSearch", false),
        lit("Docker")},
       Stage::kBuild},
  };
}

void Shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[UniformIndex(rng, i)]);
  }
}

int Run(const std::string& model_path, const std::string& out_dir) {
  const FeatureModel model = LoadModelFile(model_path);
  const ConfigurationUniverse universe = EnumerateAll(model);
  const std::vector<FaultSignature> signatures = PublishedSignatures(model);
  const std::size_t n = universe.size();

  enum class Status { kPass, kCompile, kBuild };
  std::vector<Status> status(n, Status::kPass);
  std::vector<bool> env(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (const FaultSignature& s : signatures) {
      if (!s.Matches(universe[i])) continue;
      // A compilation failure hides any later build failure.
      if (s.stage == Stage::kCompile) {
        status[i] = Status::kCompile;
      } else if (status[i] == Status::kPass) {
        status[i] = Status::kBuild;
      }
    }
  }
  std::size_t planted = 0, planted_compile = 0;
  for (Status s : status) {
    planted += s != Status::kPass;
    planted_compile += s == Status::kCompile;
  }

  std::mt19937_64 rng(kSeed);
  const Literal oauth2{model.Id("OAuth2"), true};
  const Literal sql{model.Id("SQL"), true};
  const Literal docker{model.Id("Docker"), true};
  std::vector<std::size_t> flaky_pool, env_pool;
  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] != Status::kPass) continue;
    const Configuration& c = universe[i];
    if (oauth2.SatisfiedBy(c) && sql.SatisfiedBy(c) && docker.SatisfiedBy(c)) {
      flaky_pool.push_back(i);
    }
  }
  const std::size_t flaky = kFailures - kEnvironment - planted;
  if (flaky > flaky_pool.size()) {
    std::cerr << "not enough OAuth2/SQL/Docker rows for the flaky mode\n";
    return 3;
  }
  Shuffle(flaky_pool, rng);
  for (std::size_t k = 0; k < flaky; ++k) status[flaky_pool[k]] = Status::kBuild;

  for (std::size_t i = 0; i < n; ++i) {
    if (status[i] == Status::kPass) env_pool.push_back(i);
  }
  Shuffle(env_pool, rng);
  const std::size_t env_compile = kCompileFailures - planted_compile;
  for (std::size_t k = 0; k < kEnvironment; ++k) {
    status[env_pool[k]] = k < env_compile ? Status::kCompile : Status::kBuild;
    env[env_pool[k]] = true;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Shuffle(order, rng);

  const std::vector<Column> columns = Columns();
  std::ofstream csv(out_dir + "/jhipster_dataset.csv", std::ios::binary);
  std::vector<std::string> row = {"Id"};
  for (const Column& c : columns) row.push_back(c.name);
  for (const char* c : {"testFrameworks", "Compile", "Build", "bug"}) {
    row.push_back(c);
  }
  WriteCsvRow(csv, row);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    const Configuration& c = universe[i];
    auto on = [&](const std::string& f) { return c.test(model.Id(f)); };
    row.assign(1, std::to_string(k + 1));
    for (const Column& col : columns) {
      if (!col.flag.empty()) {
        row.push_back(on(col.flag) ? "true" : "false");
        continue;
      }
      std::string cell = col.otherwise;
      for (const auto& [f, v] : col.values) {
        if (on(f)) {
          cell = v;
          break;
        }
      }
      row.push_back(cell);
    }
    std::string tests;
    for (const char* f : {"Protractor", "Gatling", "Cucumber"}) {
      if (!on(f)) continue;
      std::string v = f;
      std::transform(v.begin(), v.end(), v.begin(), ::tolower);
      tests += (tests.empty() ? "" : ";") + v;
    }
    row.push_back(tests);
    row.push_back(status[i] == Status::kCompile ? "KO" : "OK");
    row.push_back(status[i] == Status::kCompile ? "ND"
                  : status[i] == Status::kBuild ? "KO"
                                                : "OK");
    row.push_back(env[i] ? "ISSUE:env" : "");
    WriteCsvRow(csv, row);
  }
  csv.close();

  std::ofstream(out_dir + "/jhipster_dataset.mapping.json", std::ios::binary)
      << BuildMapping(model).ToJson(model);
  std::ofstream(out_dir + "/jhipster_signatures.json", std::ios::binary)
      << SignaturesToJson(signatures, model);

  std::cout << "rows " << n << ", planted " << planted << ", flaky " << flaky
            << ", environment " << kEnvironment << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_jhipster_fixture MODEL OUT_DIR\n";
    return 1;
  }
  try {
    return Run(argv[1], argv[2]);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

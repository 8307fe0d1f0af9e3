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

#include "fmlab/dataset.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fmlab/csv.h"

namespace fmlab {

std::string_view StageName(Stage stage) {
  return stage == Stage::kCompile ? "Compile" : "Build";
}

std::optional<Stage> ParseStage(std::string_view name) {
  if (name == "Compile") return Stage::kCompile;
  if (name == "Build") return Stage::kBuild;
  return std::nullopt;
}

std::optional<Stage> TestRecord::failure_stage() const {
  if (!compile_ok) return Stage::kCompile;
  if (!build_ok) return Stage::kBuild;
  return std::nullopt;
}

bool TestRecord::HasTag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string> StringList(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const Json& v : j.at(key)) out.push_back(v.get<std::string>());
  return out;
}

StatusColumn ParseStatus(const Json& j) {
  StatusColumn s;
  s.column = j.at("column").get<std::string>();
  s.ok_values = StringList(j, "ok");
  s.fail_values = StringList(j, "fail");
  s.not_run_values = StringList(j, "not_run");
  if (s.ok_values.empty() || s.fail_values.empty()) {
    throw ValidationError("status column '" + s.column +
                          "' needs ok and fail values");
  }
  return s;
}

Json StatusToJson(const StatusColumn& s) {
  Json j;
  j["column"] = s.column;
  j["ok"] = s.ok_values;
  j["fail"] = s.fail_values;
  if (!s.not_run_values.empty()) j["not_run"] = s.not_run_values;
  return j;
}

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view cell, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(sep, start);
    if (end == std::string_view::npos) end = cell.size();
    std::string item = Trim(cell.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

}  // namespace

SchemaMapping SchemaMapping::FromJson(std::string_view json,
                                      const FeatureModel& model) {
  SchemaMapping m;
  try {
    const Json j = Json::parse(json);
    const Json& status = j.at("status");
    m.compile = ParseStatus(status.at("compile"));
    m.build = ParseStatus(status.at("build"));
    if (j.contains("tag_column") && !j.at("tag_column").is_null()) {
      m.tag_column = j.at("tag_column").get<std::string>();
    }
    if (j.contains("environment_tag")) {
      m.environment_tag = j.at("environment_tag").get<std::string>();
    }
    if (j.contains("list_separator")) {
      const std::string sep = j.at("list_separator").get<std::string>();
      if (sep.size() != 1) {
        throw ValidationError("list_separator must be one character");
      }
      m.list_separator = sep[0];
    }
    for (const Json& e : j.at("features")) {
      MappingEntry entry;
      const std::string name = e.at("feature").get<std::string>();
      const std::optional<FeatureId> id = model.Find(name);
      if (!id) {
        throw ValidationError("mapping names unknown feature '" + name + "'");
      }
      entry.feature = *id;
      entry.selected = e.value("selected", true);
      entry.predicate.column = e.at("column").get<std::string>();
      if (e.contains("equals") == e.contains("contains")) {
        throw ValidationError("mapping entry for '" + name +
                              "' needs exactly one of equals/contains");
      }
      if (e.contains("equals")) {
        entry.predicate.op = ColumnPredicate::Op::kEquals;
        entry.predicate.value = e.at("equals").get<std::string>();
      } else {
        entry.predicate.op = ColumnPredicate::Op::kContains;
        entry.predicate.value = e.at("contains").get<std::string>();
      }
      m.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("schema mapping: ") + e.what());
  }
  return m;
}

SchemaMapping SchemaMapping::LoadFile(const std::string& path,
                                      const FeatureModel& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open mapping file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str(), model);
}

std::string SchemaMapping::ToJson(const FeatureModel& model) const {
  Json j;
  j["format"] = "fmlab-schema-mapping";
  j["version"] = 1;
  j["list_separator"] = std::string(1, list_separator);
  j["status"]["compile"] = StatusToJson(compile);
  j["status"]["build"] = StatusToJson(build);
  j["tag_column"] = tag_column ? Json(*tag_column) : Json(nullptr);
  j["environment_tag"] = environment_tag;
  Json features = Json::array();
  for (const MappingEntry& e : entries) {
    Json je;
    je["feature"] = model.feature(e.feature).name;
    if (!e.selected) je["selected"] = false;
    je["column"] = e.predicate.column;
    je[e.predicate.op == ColumnPredicate::Op::kEquals ? "equals"
                                                      : "contains"] =
        e.predicate.value;
    features.push_back(std::move(je));
  }
  j["features"] = std::move(features);
  return j.dump(2) + "\n";
}

SchemaMapping SchemaMapping::Identity(const FeatureModel& model) {
  SchemaMapping m;
  for (const Feature& f : model.features()) {
    for (bool selected : {true, false}) {
      MappingEntry e;
      e.feature = f.id;
      e.selected = selected;
      e.predicate.column = f.name;
      e.predicate.value = selected ? "1" : "0";
      m.entries.push_back(std::move(e));
    }
  }
  m.compile = {"Compile", {"OK"}, {"KO"}, {}};
  m.build = {"Build", {"OK"}, {"KO"}, {"ND"}};
  m.tag_column = "tags";
  return m;
}

std::vector<Literal> SchemaMapping::ItemLiterals() const {
  std::vector<Literal> out;
  for (const MappingEntry& e : entries) out.push_back({e.feature, e.selected});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Dataset::Dataset(std::size_t width, std::vector<TestRecord> records)
    : width_(width), records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].config.size() != width_) {
      throw ValidationError("record width does not match the model");
    }
    auto [it, inserted] = index_.emplace(records_[i].config, i);
    if (!inserted) {
      throw ValidationError(
          "line " + std::to_string(records_[i].line) +
          ": duplicate configuration (first seen on line " +
          std::to_string(records_[it->second].line) + ")");
    }
  }
}

std::size_t Dataset::failed_count() const {
  return std::count_if(records_.begin(), records_.end(),
                       [](const TestRecord& r) { return r.failed(); });
}

std::optional<std::size_t> Dataset::Find(const Configuration& config) const {
  auto it = index_.find(config);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct BoundPredicate {
  std::size_t column;
  ColumnPredicate::Op op;
  std::string value;
};

// How one feature's value is obtained from a row.
struct FeatureRule {
  enum class Kind { kPositive, kNegative, kGroup, kMandatoryChild, kConstant };
  Kind kind = Kind::kConstant;
  std::vector<BoundPredicate> positive;
  std::vector<BoundPredicate> negative;
  std::vector<FeatureId> sources;
  bool constant = false;
};

class RowDecoder {
 public:
  RowDecoder(const SchemaMapping& mapping, const FeatureModel& model,
             const std::vector<std::string>& header)
      : mapping_(mapping), model_(model), rules_(model.feature_count()) {
    auto column = [&](const std::string& name) {
      std::optional<std::size_t> c = FindColumn(header, name);
      if (!c) throw ValidationError("dataset has no column '" + name + "'");
      return *c;
    };
    for (const MappingEntry& e : mapping.entries) {
      BoundPredicate p{column(e.predicate.column), e.predicate.op,
                       e.predicate.value};
      (e.selected ? rules_[e.feature].positive : rules_[e.feature].negative)
          .push_back(std::move(p));
    }
    compile_col_ = column(mapping.compile.column);
    build_col_ = column(mapping.build.column);
    if (mapping.tag_column) tag_col_ = column(*mapping.tag_column);

    std::optional<CoreDead> core_dead;
    for (const Feature& f : model.features()) {
      FeatureRule& r = rules_[f.id];
      if (!r.positive.empty()) {
        r.kind = FeatureRule::Kind::kPositive;
      } else if (!r.negative.empty()) {
        r.kind = FeatureRule::Kind::kNegative;
      } else if (f.group != GroupKind::kNone) {
        r.kind = FeatureRule::Kind::kGroup;
        r.sources = f.children;
      } else if (auto m = MandatoryChild(f)) {
        r.kind = FeatureRule::Kind::kMandatoryChild;
        r.sources = {*m};
      } else {
        if (!core_dead) core_dead = CoreAndDead(model);
        const auto& core = core_dead->core;
        const auto& dead = core_dead->dead;
        r.kind = FeatureRule::Kind::kConstant;
        if (std::find(core.begin(), core.end(), f.id) != core.end()) {
          r.constant = true;
        } else if (std::find(dead.begin(), dead.end(), f.id) == dead.end()) {
          throw ValidationError("feature '" + f.name +
                                "' has no mapping entry and cannot be derived");
        }
      }
    }
  }

  TestRecord Decode(const std::vector<std::string>& row, std::size_t line) {
    TestRecord rec;
    rec.line = line;
    rec.config = BitVector(model_.feature_count());
    state_.assign(model_.feature_count(), kUnknown);
    for (FeatureId f = 0; f < model_.feature_count(); ++f) {
      rec.config.set(f, Value(f, row, line, 0));
    }
    const std::string& compile = row[compile_col_];
    const std::string& build = row[build_col_];
    if (Contains(mapping_.compile.ok_values, compile)) {
      rec.compile_ok = true;
    } else if (Contains(mapping_.compile.fail_values, compile)) {
      rec.compile_ok = false;
    } else {
      Fail(line, "unknown compile status '" + compile + "'");
    }
    if (Contains(mapping_.build.ok_values, build)) {
      rec.build_ok = true;
    } else if (Contains(mapping_.build.fail_values, build)) {
      rec.build_ok = false;
    } else if (Contains(mapping_.build.not_run_values, build)) {
      if (rec.compile_ok) {
        Fail(line, "build did not run although compilation succeeded");
      }
      rec.build_ok = false;
    } else {
      Fail(line, "unknown build status '" + build + "'");
    }
    if (!rec.compile_ok && Contains(mapping_.build.ok_values, build)) {
      Fail(line, "build succeeded although compilation failed");
    }
    if (tag_col_) rec.tags = SplitList(row[*tag_col_], mapping_.list_separator);
    return rec;
  }

 private:
  enum : std::int8_t { kUnknown = -1, kVisiting = 2 };

  [[noreturn]] static void Fail(std::size_t line, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ": " + what);
  }

  std::optional<FeatureId> MandatoryChild(const Feature& f) const {
    for (FeatureId c : f.children) {
      if (model_.feature(c).decomposition == Decomposition::kMandatory) {
        return c;
      }
    }
    return std::nullopt;
  }

  bool Holds(const BoundPredicate& p, const std::vector<std::string>& row) {
    const std::string& cell = row[p.column];
    if (p.op == ColumnPredicate::Op::kEquals) return cell == p.value;
    return Contains(SplitList(cell, mapping_.list_separator), p.value);
  }

  bool Value(FeatureId f, const std::vector<std::string>& row,
             std::size_t line, int depth) {
    if (state_[f] == 0 || state_[f] == 1) return state_[f] == 1;
    if (state_[f] == kVisiting) {
      Fail(line, "cyclic derivation for '" + model_.feature(f).name + "'");
    }
    state_[f] = kVisiting;
    const FeatureRule& r = rules_[f];
    bool v = false;
    switch (r.kind) {
      case FeatureRule::Kind::kPositive: {
        for (const BoundPredicate& p : r.positive) v = v || Holds(p, row);
        for (const BoundPredicate& p : r.negative) {
          if (Holds(p, row) == v) {
            Fail(line, "columns for '" + model_.feature(f).name +
                           "' are contradictory or incomplete");
          }
        }
        break;
      }
      case FeatureRule::Kind::kNegative: {
        v = true;
        for (const BoundPredicate& p : r.negative) v = v && !Holds(p, row);
        break;
      }
      case FeatureRule::Kind::kGroup:
      case FeatureRule::Kind::kMandatoryChild:
        for (FeatureId s : r.sources) v = Value(s, row, line, depth + 1) || v;
        break;
      case FeatureRule::Kind::kConstant:
        v = r.constant;
        break;
    }
    state_[f] = v ? 1 : 0;
    return v;
  }

  const SchemaMapping& mapping_;
  const FeatureModel& model_;
  std::vector<FeatureRule> rules_;
  std::size_t compile_col_ = 0;
  std::size_t build_col_ = 0;
  std::optional<std::size_t> tag_col_;
  std::vector<std::int8_t> state_;
};

}  // namespace

Dataset LoadDataset(std::istream& csv, const SchemaMapping& mapping,
                    const FeatureModel& model) {
  CsvReader reader(csv);
  std::vector<std::string> header, row;
  if (!reader.ReadRow(header)) {
    throw ValidationError("dataset CSV is empty (no header)");
  }
  RowDecoder decoder(mapping, model, header);
  std::vector<TestRecord> records;
  while (reader.ReadRow(row)) {
    if (row.size() != header.size()) {
      throw ValidationError("line " + std::to_string(reader.line()) +
                            ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(row.size()));
    }
    TestRecord rec = decoder.Decode(row, reader.line());
    if (!IsValid(model, rec.config)) {
      throw ValidationError("line " + std::to_string(reader.line()) +
                            ": row decodes to an invalid configuration");
    }
    records.push_back(std::move(rec));
  }
  return Dataset(model.feature_count(), std::move(records));
}

Dataset LoadDatasetFile(const std::string& path, const SchemaMapping& mapping,
                        const FeatureModel& model) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open dataset '" + path + "'");
  try {
    return LoadDataset(in, mapping, model);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace fmlab

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

#ifndef FMLAB_DATASET_H_
#define FMLAB_DATASET_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fmlab/bit_vector.h"
#include "fmlab/feature_model.h"

namespace fmlab {

enum class Stage { kCompile, kBuild };

// "Compile" / "Build".
std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);

struct TestRecord {
  Configuration config;
  bool compile_ok = true;
  // False when the build failed or did not run.
  bool build_ok = true;
  std::vector<std::string> tags;
  // 1-based line in the source CSV, 0 when built in memory.
  std::size_t line = 0;

  bool failed() const { return !compile_ok || !build_ok; }
  // Compile when compilation failed, otherwise Build when the build failed.
  std::optional<Stage> failure_stage() const;
  bool HasTag(std::string_view tag) const;
};

// Cell test: equality, or membership in a separator-delimited list.
struct ColumnPredicate {
  enum class Op { kEquals, kContains };
  std::string column;
  Op op = Op::kEquals;
  std::string value;
};

// The literal (feature, selected) holds on a row iff the predicate does.
struct MappingEntry {
  FeatureId feature = 0;
  bool selected = true;
  ColumnPredicate predicate;
};

struct StatusColumn {
  std::string column;
  std::vector<std::string> ok_values;
  std::vector<std::string> fail_values;
  // Allowed only when an earlier stage failed.
  std::vector<std::string> not_run_values;
};

// Bridges dataset columns to features. A feature's value comes from its
// positive entries (any holds), else from its negative entries (none
// holds), else from its group members or a mandatory child, else from its
// core/dead status.
struct SchemaMapping {
  std::vector<MappingEntry> entries;
  StatusColumn compile;
  StatusColumn build;
  std::optional<std::string> tag_column;
  std::string environment_tag = "ISSUE:env";
  char list_separator = ';';

  // Throws ValidationError on malformed JSON or unknown features.
  static SchemaMapping FromJson(std::string_view json,
                                const FeatureModel& model);
  static SchemaMapping LoadFile(const std::string& path,
                                const FeatureModel& model);
  std::string ToJson(const FeatureModel& model) const;

  // One 0/1 column per feature named after it, both polarities mapped;
  // status columns "Compile" and "Build" (OK/KO, build also ND); tag
  // column "tags".
  static SchemaMapping Identity(const FeatureModel& model);

  // Distinct literals that some entry maps, ascending.
  std::vector<Literal> ItemLiterals() const;
};

class Dataset {
 public:
  Dataset() = default;
  // Throws ValidationError on duplicate configurations.
  Dataset(std::size_t width, std::vector<TestRecord> records);

  std::size_t width() const { return width_; }
  std::size_t size() const { return records_.size(); }
  const std::vector<TestRecord>& records() const { return records_; }
  const TestRecord& operator[](std::size_t i) const { return records_[i]; }
  std::size_t failed_count() const;

  std::optional<std::size_t> Find(const Configuration& config) const;

 private:
  std::size_t width_ = 0;
  std::vector<TestRecord> records_;
  std::unordered_map<Configuration, std::size_t, BitVectorHash> index_;
};

// One record per CSV row. Every row must decode to a distinct valid
// configuration; errors carry the line number.
Dataset LoadDataset(std::istream& csv, const SchemaMapping& mapping,
                    const FeatureModel& model);
Dataset LoadDatasetFile(const std::string& path, const SchemaMapping& mapping,
                        const FeatureModel& model);

}  // namespace fmlab

#endif  // FMLAB_DATASET_H_

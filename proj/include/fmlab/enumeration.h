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

#ifndef FMLAB_ENUMERATION_H_
#define FMLAB_ENUMERATION_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fmlab/feature_model.h"
#include "fmlab/solver.h"

namespace fmlab {

inline constexpr std::size_t kDefaultUniverseCap = 10'000'000;

class UniverseTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Set of literals; constructing one with both polarities of a feature
// throws std::invalid_argument.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }

 private:
  std::vector<Literal> literals_;
};

// All valid configurations of a model in lexicographic order.
class ConfigurationUniverse {
 public:
  ConfigurationUniverse() = default;
  // Throws std::invalid_argument unless sorted, duplicate-free and of the
  // given width.
  ConfigurationUniverse(std::string model_name, std::size_t width,
                        std::vector<Configuration> configs);

  const std::string& model_name() const { return model_name_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return configs_.size(); }
  const Configuration& operator[](std::size_t i) const { return configs_[i]; }
  const std::vector<Configuration>& configs() const { return configs_; }

  std::optional<std::size_t> IndexOf(const Configuration& config) const;

 private:
  std::string model_name_;
  std::size_t width_ = 0;
  std::vector<Configuration> configs_;
  std::unordered_map<Configuration, std::size_t, BitVectorHash> index_;
};

// Throws UnsatisfiableModelError or UniverseTooLargeError.
ConfigurationUniverse EnumerateAll(const FeatureModel& model,
                                   std::size_t cap = kDefaultUniverseCap);

// Model count without materializing; 0 for unsatisfiable models.
std::uint64_t CountValid(const FeatureModel& model);

bool SatisfiableWith(const FeatureModel& model,
                     const PartialAssignment& partial);

// Reusable satisfiability oracle for many queries on one model.
class SatOracle {
 public:
  explicit SatOracle(const FeatureModel& model);
  bool SatisfiableWith(const PartialAssignment& partial);
  bool SatisfiableWith(const std::vector<Literal>& literals);

 private:
  std::size_t feature_count_;
  Solver solver_;
};

// One 0/1 column per feature, header = feature names in declaration order.
void WriteConfigurationsCsv(std::ostream& out, const FeatureModel& model,
                            const std::vector<Configuration>& configs);
// Accepts the columns in any order; every feature must have a column.
// Throws ValidationError with the offending line.
std::vector<Configuration> ReadConfigurationsCsv(std::istream& in,
                                                 const FeatureModel& model);

}  // namespace fmlab

#endif  // FMLAB_ENUMERATION_H_

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

#include "fmlab/enumeration.h"

#include <algorithm>

#include "fmlab/cnf.h"
#include "fmlab/csv.h"

namespace fmlab {

PartialAssignment::PartialAssignment(std::vector<Literal> literals)
    : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()),
                  literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i].feature == literals_[i - 1].feature) {
      throw std::invalid_argument("feature " +
                                  std::to_string(literals_[i].feature) +
                                  " assigned both polarities");
    }
  }
}

ConfigurationUniverse::ConfigurationUniverse(std::string model_name,
                                             std::size_t width,
                                             std::vector<Configuration> configs)
    : model_name_(std::move(model_name)),
      width_(width),
      configs_(std::move(configs)) {
  index_.reserve(configs_.size());
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    if (configs_[i].size() != width_) {
      throw std::invalid_argument("universe member has the wrong width");
    }
    if (i > 0 && !(configs_[i - 1] < configs_[i])) {
      throw std::invalid_argument("universe is not strictly sorted");
    }
    index_.emplace(configs_[i], i);
  }
}

std::optional<std::size_t> ConfigurationUniverse::IndexOf(
    const Configuration& config) const {
  auto it = index_.find(config);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ConfigurationUniverse EnumerateAll(const FeatureModel& model,
                                   std::size_t cap) {
  Solver solver(ToCnf(model));
  std::vector<Configuration> configs;
  bool too_large = false;
  solver.Enumerate([&](const BitVector& c) {
    if (configs.size() >= cap) {
      too_large = true;
      return false;
    }
    configs.push_back(c);
    return true;
  });
  if (too_large) {
    throw UniverseTooLargeError("model '" + model.name() +
                                "' has more than " + std::to_string(cap) +
                                " valid configurations");
  }
  if (configs.empty()) {
    throw UnsatisfiableModelError("model '" + model.name() +
                                  "' has no valid configuration");
  }
  return ConfigurationUniverse(model.name(), model.feature_count(),
                               std::move(configs));
}

std::uint64_t CountValid(const FeatureModel& model) {
  Solver solver(ToCnf(model));
  return solver.Count();
}

SatOracle::SatOracle(const FeatureModel& model)
    : feature_count_(model.feature_count()), solver_(ToCnf(model)) {}

bool SatOracle::SatisfiableWith(const std::vector<Literal>& literals) {
  std::vector<int> assumptions;
  assumptions.reserve(literals.size());
  for (const Literal& l : literals) {
    if (l.feature >= feature_count_) {
      throw std::invalid_argument("literal references unknown feature");
    }
    assumptions.push_back(ToDimacs(l));
  }
  return solver_.Solve(assumptions);
}

bool SatOracle::SatisfiableWith(const PartialAssignment& partial) {
  return SatisfiableWith(partial.literals());
}

bool SatisfiableWith(const FeatureModel& model,
                     const PartialAssignment& partial) {
  SatOracle oracle(model);
  return oracle.SatisfiableWith(partial);
}

void WriteConfigurationsCsv(std::ostream& out, const FeatureModel& model,
                            const std::vector<Configuration>& configs) {
  std::vector<std::string> row;
  for (const Feature& f : model.features()) row.push_back(f.name);
  WriteCsvRow(out, row);
  std::string line;
  for (const Configuration& c : configs) {
    line.clear();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0) line += ',';
      line += c.test(i) ? '1' : '0';
    }
    line += '\n';
    out << line;
  }
}

std::vector<Configuration> ReadConfigurationsCsv(std::istream& in,
                                                 const FeatureModel& model) {
  CsvReader reader(in);
  std::vector<std::string> header, row;
  if (!reader.ReadRow(header)) {
    throw ValidationError("configuration CSV is empty (no header)");
  }
  std::vector<std::size_t> column(model.feature_count());
  for (const Feature& f : model.features()) {
    std::optional<std::size_t> c = FindColumn(header, f.name);
    if (!c) {
      throw ValidationError("configuration CSV has no column for feature '" +
                            f.name + "'");
    }
    column[f.id] = *c;
  }
  std::vector<Configuration> out;
  while (reader.ReadRow(row)) {
    if (row.size() != header.size()) {
      throw ValidationError("line " + std::to_string(reader.line()) +
                            ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(row.size()));
    }
    Configuration c(model.feature_count());
    for (FeatureId f = 0; f < model.feature_count(); ++f) {
      const std::string& v = row[column[f]];
      if (v == "1") {
        c.set(f);
      } else if (v != "0") {
        throw ValidationError("line " + std::to_string(reader.line()) +
                              ": feature '" + model.feature(f).name +
                              "' must be 0 or 1, found '" + v + "'");
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace fmlab

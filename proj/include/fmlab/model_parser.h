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

#ifndef FMLAB_MODEL_PARSER_H_
#define FMLAB_MODEL_PARSER_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "fmlab/feature_model.h"

namespace fmlab {

class ParseError : public ModelError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Model files:
//
//   model [alt|or] NAME [abstract] { element* }   ("root" works too)
//   element := [mandatory|optional] [alt|or] NAME [abstract] [{ element* }]
//            | constraint FORMULA ;
//
// NAME is the root feature. Outside a group block an element needs a
// decomposition keyword, a group keyword, or both; a bare group keyword
// means mandatory. Inside an alt/or block every element is a member and
// decomposition keywords are ignored. Formula operators, loosest first:
// <=> (left), => (right), |, &, !. Comments run from '#' to end of line.
FeatureModel ParseModel(std::string_view text);
FeatureModel LoadModelFile(const std::string& path);

// Formula over the model's feature names, same syntax as in model files.
Formula ParseFormula(std::string_view text, const FeatureModel& model);

// Canonical text form; ParseModel(SerializeModel(m)) == m.
std::string SerializeModel(const FeatureModel& model);
std::string FormatFormula(const Formula& formula, const FeatureModel& model);

}  // namespace fmlab

#endif  // FMLAB_MODEL_PARSER_H_

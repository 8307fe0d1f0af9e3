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

#ifndef FMLAB_CNF_H_
#define FMLAB_CNF_H_

#include <cstddef>
#include <vector>

#include "fmlab/feature_model.h"

namespace fmlab {

// Clauses over signed 1-based variables (DIMACS style): +v means variable
// v-1 is true. Variables [0, feature_count) are features; the rest are
// auxiliary Tseitin variables and never appear in a Configuration.
struct CnfFormula {
  std::size_t feature_count = 0;
  std::size_t var_count = 0;
  std::vector<std::vector<int>> clauses;
};

// Constraints whose distributed CNF has at most this many literal
// occurrences are distributed directly; larger ones use Tseitin.
inline constexpr std::size_t kMaxDistributedLiterals = 16;

CnfFormula ToCnf(const FeatureModel& model);

inline int ToDimacs(const Literal& l) {
  const int v = static_cast<int>(l.feature) + 1;
  return l.value ? v : -v;
}

bool Satisfies(const CnfFormula& cnf, const BitVector& assignment);

}  // namespace fmlab

#endif  // FMLAB_CNF_H_

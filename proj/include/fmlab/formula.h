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

#ifndef FMLAB_FORMULA_H_
#define FMLAB_FORMULA_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include "fmlab/bit_vector.h"

namespace fmlab {

// Dense index of a feature in declaration order, [0, feature_count).
using FeatureId = std::uint32_t;

// A configuration selects (1) or deselects (0) each feature.
using Configuration = BitVector;

struct Literal {
  FeatureId feature = 0;
  bool value = true;

  Literal Negated() const { return {feature, !value}; }
  bool SatisfiedBy(const BitVector& config) const {
    return config.test(feature) == value;
  }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Propositional formula over features. Immutable; copies share nodes.
class Formula {
 public:
  enum class Kind { kVar, kNot, kAnd, kOr, kImplies, kIff };

  static Formula Var(FeatureId id);
  static Formula Not(Formula operand);
  static Formula And(Formula a, Formula b);
  static Formula Or(Formula a, Formula b);
  static Formula Implies(Formula a, Formula b);
  static Formula Iff(Formula a, Formula b);
  static Formula Binary(Kind kind, Formula a, Formula b);

  Kind kind() const;
  // Only for kVar.
  FeatureId var() const;
  // kNot has one operand, binary kinds have two.
  const Formula& operand(int i) const;

  bool Evaluate(const BitVector& assignment) const;
  // Variables in first-occurrence order, without repeats.
  std::vector<FeatureId> Variables() const;
  FeatureId MaxVariable() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace fmlab

#endif  // FMLAB_FORMULA_H_

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

#include "fmlab/formula.h"

#include <algorithm>
#include <stdexcept>

namespace fmlab {

struct Formula::Node {
  Kind kind;
  FeatureId var = 0;
  std::vector<Formula> operands;
};

Formula Formula::Var(FeatureId id) {
  return Formula(std::make_shared<const Node>(Node{Kind::kVar, id, {}}));
}

Formula Formula::Not(Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kNot, 0, {std::move(operand)}}));
}

Formula Formula::Binary(Kind kind, Formula a, Formula b) {
  if (kind == Kind::kVar || kind == Kind::kNot) {
    throw std::invalid_argument("Formula::Binary needs a binary connective");
  }
  return Formula(std::make_shared<const Node>(
      Node{kind, 0, {std::move(a), std::move(b)}}));
}

Formula Formula::And(Formula a, Formula b) {
  return Binary(Kind::kAnd, std::move(a), std::move(b));
}
Formula Formula::Or(Formula a, Formula b) {
  return Binary(Kind::kOr, std::move(a), std::move(b));
}
Formula Formula::Implies(Formula a, Formula b) {
  return Binary(Kind::kImplies, std::move(a), std::move(b));
}
Formula Formula::Iff(Formula a, Formula b) {
  return Binary(Kind::kIff, std::move(a), std::move(b));
}

Formula::Kind Formula::kind() const { return node_->kind; }

FeatureId Formula::var() const { return node_->var; }

const Formula& Formula::operand(int i) const { return node_->operands.at(i); }

bool Formula::Evaluate(const BitVector& assignment) const {
  switch (node_->kind) {
    case Kind::kVar:
      return assignment.test(node_->var);
    case Kind::kNot:
      return !operand(0).Evaluate(assignment);
    case Kind::kAnd:
      return operand(0).Evaluate(assignment) && operand(1).Evaluate(assignment);
    case Kind::kOr:
      return operand(0).Evaluate(assignment) || operand(1).Evaluate(assignment);
    case Kind::kImplies:
      return !operand(0).Evaluate(assignment) ||
             operand(1).Evaluate(assignment);
    case Kind::kIff:
      return operand(0).Evaluate(assignment) ==
             operand(1).Evaluate(assignment);
  }
  return false;
}

namespace {

void Collect(const Formula& f, std::vector<FeatureId>& out) {
  if (f.kind() == Formula::Kind::kVar) {
    if (std::find(out.begin(), out.end(), f.var()) == out.end()) {
      out.push_back(f.var());
    }
    return;
  }
  Collect(f.operand(0), out);
  if (f.kind() != Formula::Kind::kNot) Collect(f.operand(1), out);
}

}  // namespace

std::vector<FeatureId> Formula::Variables() const {
  std::vector<FeatureId> out;
  Collect(*this, out);
  return out;
}

FeatureId Formula::MaxVariable() const {
  const std::vector<FeatureId> vars = Variables();
  return *std::max_element(vars.begin(), vars.end());
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::kVar) return a.var() == b.var();
  if (!(a.operand(0) == b.operand(0))) return false;
  return a.kind() == Formula::Kind::kNot || a.operand(1) == b.operand(1);
}

}  // namespace fmlab

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

#include "fmlab/cnf.h"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace fmlab {
namespace {

using Clause = std::vector<int>;
using Clauses = std::vector<Clause>;

// Sorts, drops duplicate literals; returns false for tautologies.
bool Normalize(Clause& c) {
  std::sort(c.begin(), c.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] == -c[i - 1]) return false;
  }
  return true;
}

std::size_t LiteralCount(const Clauses& cs) {
  std::size_t n = 0;
  for (const Clause& c : cs) n += c.size();
  return n;
}

// CNF of `f` (negated when `negate`) by distribution, or nullopt once the
// literal count exceeds the limit.
std::optional<Clauses> Distribute(const Formula& f, bool negate) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kVar: {
      const int v = static_cast<int>(f.var()) + 1;
      return Clauses{{negate ? -v : v}};
    }
    case K::kNot:
      return Distribute(f.operand(0), !negate);
    default:
      break;
  }
  const Formula& a = f.operand(0);
  const Formula& b = f.operand(1);
  // Rewrite into a conjunction or disjunction of signed operands.
  struct Part {
    const Formula* f;
    bool neg;
  };
  auto conj = [](std::optional<Clauses> x,
                 std::optional<Clauses> y) -> std::optional<Clauses> {
    if (!x || !y) return std::nullopt;
    x->insert(x->end(), y->begin(), y->end());
    if (LiteralCount(*x) > kMaxDistributedLiterals) return std::nullopt;
    return x;
  };
  auto disj = [](std::optional<Clauses> x,
                 std::optional<Clauses> y) -> std::optional<Clauses> {
    if (!x || !y) return std::nullopt;
    Clauses out;
    std::size_t lits = 0;
    for (const Clause& cx : *x) {
      for (const Clause& cy : *y) {
        Clause c = cx;
        c.insert(c.end(), cy.begin(), cy.end());
        lits += c.size();
        if (lits > kMaxDistributedLiterals) return std::nullopt;
        out.push_back(std::move(c));
      }
    }
    return out;
  };
  auto both = [&](bool is_and, Part p, Part q) {
    return is_and ? conj(Distribute(*p.f, p.neg), Distribute(*q.f, q.neg))
                  : disj(Distribute(*p.f, p.neg), Distribute(*q.f, q.neg));
  };
  switch (f.kind()) {
    case K::kAnd:
      return both(!negate, {&a, negate}, {&b, negate});
    case K::kOr:
      return both(negate, {&a, negate}, {&b, negate});
    case K::kImplies:
      // a => b is !a | b; its negation is a & !b.
      return negate ? both(true, {&a, false}, {&b, true})
                    : both(false, {&a, true}, {&b, false});
    case K::kIff:
      // a <=> b is (!a | b) & (a | !b); negated, (a | b) & (!a | !b).
      return negate ? conj(both(false, {&a, false}, {&b, false}),
                           both(false, {&a, true}, {&b, true}))
                    : conj(both(false, {&a, true}, {&b, false}),
                           both(false, {&a, false}, {&b, true}));
    default:
      return std::nullopt;
  }
}

// Full-equivalence Tseitin encoding; every auxiliary variable is a function
// of the feature variables, so projected model counts are preserved.
class Tseitin {
 public:
  Tseitin(CnfFormula& cnf) : cnf_(cnf) {}

  int Encode(const Formula& f) {
    using K = Formula::Kind;
    if (f.kind() == K::kVar) return static_cast<int>(f.var()) + 1;
    if (f.kind() == K::kNot) return -Encode(f.operand(0));
    const int x = Encode(f.operand(0));
    const int y = Encode(f.operand(1));
    const int a = static_cast<int>(++cnf_.var_count);
    switch (f.kind()) {
      case K::kAnd:
        Add({-a, x});
        Add({-a, y});
        Add({a, -x, -y});
        break;
      case K::kOr:
        Add({a, -x});
        Add({a, -y});
        Add({-a, x, y});
        break;
      case K::kImplies:
        Add({a, x});
        Add({a, -y});
        Add({-a, -x, y});
        break;
      case K::kIff:
        Add({-a, -x, y});
        Add({-a, x, -y});
        Add({a, x, y});
        Add({a, -x, -y});
        break;
      default:
        break;
    }
    return a;
  }

  void Add(Clause c) {
    if (Normalize(c)) cnf_.clauses.push_back(std::move(c));
  }

 private:
  CnfFormula& cnf_;
};

}  // namespace

CnfFormula ToCnf(const FeatureModel& model) {
  CnfFormula cnf;
  cnf.feature_count = model.feature_count();
  cnf.var_count = model.feature_count();
  Tseitin tseitin(cnf);
  auto var = [](FeatureId id) { return static_cast<int>(id) + 1; };

  tseitin.Add({var(model.root())});
  for (const Feature& f : model.features()) {
    if (!f.parent) continue;
    const int c = var(f.id);
    const int p = var(*f.parent);
    tseitin.Add({-c, p});
    if (f.decomposition == Decomposition::kMandatory) tseitin.Add({-p, c});
  }
  for (const Feature& f : model.features()) {
    if (f.group == GroupKind::kNone) continue;
    Clause at_least = {-var(f.id)};
    for (FeatureId m : f.children) at_least.push_back(var(m));
    tseitin.Add(at_least);
    if (f.group == GroupKind::kAlternative) {
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        for (std::size_t j = i + 1; j < f.children.size(); ++j) {
          tseitin.Add({-var(f.children[i]), -var(f.children[j])});
        }
      }
    }
  }
  for (const Formula& constraint : model.constraints()) {
    if (std::optional<Clauses> cs = Distribute(constraint, false)) {
      for (Clause& c : *cs) tseitin.Add(std::move(c));
    } else {
      tseitin.Add({tseitin.Encode(constraint)});
    }
  }
  return cnf;
}

bool Satisfies(const CnfFormula& cnf, const BitVector& assignment) {
  for (const Clause& c : cnf.clauses) {
    bool sat = false;
    for (int l : c) {
      if (assignment.test(std::abs(l) - 1) == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace fmlab

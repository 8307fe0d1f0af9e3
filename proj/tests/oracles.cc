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

#include "oracles.h"

#include <algorithm>
#include <map>
#include <string>

namespace fmlab::oracle {

bool Eval(const Formula& f, const Configuration& c) {
  switch (f.kind()) {
    case Formula::Kind::kVar:
      return c.test(f.var());
    case Formula::Kind::kNot:
      return !Eval(f.operand(0), c);
    case Formula::Kind::kAnd:
      return Eval(f.operand(0), c) && Eval(f.operand(1), c);
    case Formula::Kind::kOr:
      return Eval(f.operand(0), c) || Eval(f.operand(1), c);
    case Formula::Kind::kImplies:
      return !Eval(f.operand(0), c) || Eval(f.operand(1), c);
    case Formula::Kind::kIff:
      return Eval(f.operand(0), c) == Eval(f.operand(1), c);
  }
  return false;
}

bool Valid(const FeatureModel& model, const Configuration& c) {
  if (!c.test(model.root())) return false;
  for (const Feature& f : model.features()) {
    const bool on = c.test(f.id);
    if (f.parent) {
      const bool parent_on = c.test(*f.parent);
      if (on && !parent_on) return false;
      if (f.decomposition == Decomposition::kMandatory && parent_on && !on) {
        return false;
      }
    }
    if (on && f.group != GroupKind::kNone) {
      int selected = 0;
      for (FeatureId ch : f.children) selected += c.test(ch);
      if (f.group == GroupKind::kAlternative && selected != 1) return false;
      if (f.group == GroupKind::kOr && selected < 1) return false;
    }
  }
  for (const Formula& k : model.constraints()) {
    if (!Eval(k, c)) return false;
  }
  return true;
}

std::vector<Configuration> Universe(const FeatureModel& model) {
  const std::size_t n = model.feature_count();
  std::vector<Configuration> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Configuration c(n);
    for (std::size_t i = 0; i < n; ++i) c.set(i, (m >> i) & 1);
    if (Valid(model, c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool AnyMatches(const std::vector<Configuration>& universe,
                const std::vector<Literal>& literals) {
  for (const Configuration& c : universe) {
    bool all = true;
    for (const Literal& l : literals) all = all && c.test(l.feature) == l.value;
    if (all) return true;
  }
  return false;
}

std::vector<FeatureId> Toggleable(const std::vector<Configuration>& universe,
                                  std::size_t width) {
  std::vector<FeatureId> out;
  for (FeatureId f = 0; f < width; ++f) {
    bool seen[2] = {false, false};
    for (const Configuration& c : universe) seen[c.test(f)] = true;
    if (seen[0] && seen[1]) out.push_back(f);
  }
  return out;
}

std::set<std::vector<Literal>> Tuples(
    const std::vector<Configuration>& universe,
    const std::vector<FeatureId>& features, int t) {
  std::set<std::vector<Literal>> out;
  const int k = static_cast<int>(features.size());
  if (t > k) return out;
  std::vector<int> pos(t);
  for (int i = 0; i < t; ++i) pos[i] = i;
  while (true) {
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
      std::vector<Literal> tuple;
      for (int j = 0; j < t; ++j) {
        tuple.push_back({features[pos[j]], ((mask >> j) & 1u) != 0});
      }
      if (AnyMatches(universe, tuple)) out.insert(tuple);
    }
    int j = t - 1;
    while (j >= 0 && pos[j] == k - t + j) --j;
    if (j < 0) break;
    ++pos[j];
    for (int i = j + 1; i < t; ++i) pos[i] = pos[i - 1] + 1;
  }
  return out;
}

std::size_t CountToggleable(const Configuration& c,
                            const std::vector<FeatureId>& toggleable) {
  std::size_t n = 0;
  for (FeatureId f : toggleable) n += c.test(f);
  return n;
}

std::vector<std::vector<std::size_t>> CriterionSets(
    const std::vector<Configuration>& universe,
    const std::vector<FeatureId>& toggleable, bool value) {
  std::vector<std::vector<std::size_t>> out;
  for (FeatureId f : toggleable) {
    std::vector<std::size_t> best;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (universe[i].test(f) != value) continue;
      const std::size_t n = CountToggleable(universe[i], toggleable);
      const bool better = value ? n < best_count : n > best_count;
      if (best.empty() || better) {
        best = {i};
        best_count = n;
      } else if (n == best_count) {
        best.push_back(i);
      }
    }
    out.push_back(best);
  }
  return out;
}

namespace {

void Subsets(const std::vector<Literal>& items, std::size_t start,
             std::size_t max, std::vector<Literal>& cur,
             std::vector<std::vector<Literal>>& out) {
  if (!cur.empty()) out.push_back(cur);
  if (cur.size() == max) return;
  for (std::size_t i = start; i < items.size(); ++i) {
    bool clash = false;
    for (const Literal& l : cur) clash |= l.feature == items[i].feature;
    if (clash) continue;
    cur.push_back(items[i]);
    Subsets(items, i + 1, max, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Rule> Rules(const Dataset& dataset, const MiningConfig& cfg,
                        const std::vector<Literal>& items) {
  std::vector<Literal> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Literal>> sets;
  std::vector<Literal> cur;
  Subsets(sorted, 0, cfg.max_lhs, cur, sets);
  const std::size_t n = dataset.size();
  std::vector<Rule> out;
  for (const auto& lhs : sets) {
    for (Stage stage : {Stage::kCompile, Stage::kBuild}) {
      std::size_t lhs_rows = 0, matched = 0;
      for (const TestRecord& r : dataset.records()) {
        bool holds = true;
        for (const Literal& l : lhs) {
          holds = holds && r.config.test(l.feature) == l.value;
        }
        if (!holds) continue;
        ++lhs_rows;
        const bool fails = stage == Stage::kCompile
                               ? !r.compile_ok
                               : r.compile_ok && !r.build_ok;
        matched += fails;
      }
      if (matched == 0) continue;
      const double support = static_cast<double>(matched) / n;
      const double confidence = static_cast<double>(matched) / lhs_rows;
      if (support < cfg.min_support || confidence < cfg.min_confidence) {
        continue;
      }
      Rule r;
      r.lhs = lhs;
      r.rhs = stage;
      r.matched_rows = matched;
      r.lhs_rows = lhs_rows;
      r.total_rows = n;
      r.support = support;
      r.confidence = confidence;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs);
  });
  return out;
}

bool Implies(const std::vector<Configuration>& universe,
             const std::vector<Literal>& a, const std::vector<Literal>& b) {
  for (const Configuration& c : universe) {
    bool ha = true, hb = true;
    for (const Literal& l : a) ha = ha && c.test(l.feature) == l.value;
    for (const Literal& l : b) hb = hb && c.test(l.feature) == l.value;
    if (ha && !hb) return false;
  }
  return true;
}

Formula RandomFormula(std::mt19937_64& rng, std::size_t width, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 0);
  std::uniform_int_distribution<std::size_t> var(0, width - 1);
  switch (kind(rng)) {
    case 0:
    case 1:
      return Formula::Var(static_cast<FeatureId>(var(rng)));
    case 2:
      return Formula::Not(RandomFormula(rng, width, depth - 1));
    case 3:
      return Formula::And(RandomFormula(rng, width, depth - 1),
                          RandomFormula(rng, width, depth - 1));
    case 4:
      return Formula::Or(RandomFormula(rng, width, depth - 1),
                         RandomFormula(rng, width, depth - 1));
    case 5:
      return Formula::Implies(RandomFormula(rng, width, depth - 1),
                              RandomFormula(rng, width, depth - 1));
    default:
      return Formula::Iff(RandomFormula(rng, width, depth - 1),
                          RandomFormula(rng, width, depth - 1));
  }
}

namespace {

Formula Remap(const Formula& f, const std::vector<FeatureId>& to) {
  switch (f.kind()) {
    case Formula::Kind::kVar:
      return Formula::Var(to[f.var()]);
    case Formula::Kind::kNot:
      return Formula::Not(Remap(f.operand(0), to));
    default:
      return Formula::Binary(f.kind(), Remap(f.operand(0), to),
                             Remap(f.operand(1), to));
  }
}

void Preorder(const std::vector<std::vector<FeatureId>>& children,
              FeatureId f, std::vector<FeatureId>& order) {
  order.push_back(f);
  for (FeatureId c : children[f]) Preorder(children, c, order);
}

}  // namespace

FeatureModel RandomModel(std::mt19937_64& rng, int max_features,
                         int max_constraints) {
  const int n = std::uniform_int_distribution<int>(1, max_features)(rng);
  std::vector<FeatureId> parent(n, 0);
  std::vector<std::vector<FeatureId>> children(n);
  for (int i = 1; i < n; ++i) {
    parent[i] = std::uniform_int_distribution<int>(0, i - 1)(rng);
    children[parent[i]].push_back(i);
  }
  // Ids follow declaration (preorder) order, as a parsed model would.
  std::vector<FeatureId> order, to(n);
  Preorder(children, 0, order);
  for (int i = 0; i < n; ++i) to[order[i]] = i;

  std::vector<Feature> features(n);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < n; ++i) {
    Feature& f = features[to[i]];
    f.id = to[i];
    f.name = "F" + std::to_string(to[i]);
    f.abstract_flag = coin(rng) && coin(rng);
    if (i > 0) f.parent = to[parent[i]];
  }
  for (int i = 0; i < n; ++i) {
    GroupKind g = GroupKind::kNone;
    if (children[i].size() >= 2) {
      const int r = pick(rng);
      g = r == 0 ? GroupKind::kAlternative
          : r == 1 ? GroupKind::kOr
                   : GroupKind::kNone;
    }
    features[to[i]].group = g;
    for (FeatureId ch : children[i]) {
      features[to[ch]].decomposition =
          g == GroupKind::kAlternative ? Decomposition::kAlternativeMember
          : g == GroupKind::kOr        ? Decomposition::kOrMember
          : coin(rng)                  ? Decomposition::kMandatory
                                       : Decomposition::kOptional;
    }
  }
  std::vector<Formula> constraints;
  const int k = std::uniform_int_distribution<int>(0, max_constraints)(rng);
  for (int i = 0; i < k; ++i) {
    constraints.push_back(Remap(RandomFormula(rng, n, 2), to));
  }
  return FeatureModel("F0", std::move(features), std::move(constraints));
}

}  // namespace fmlab::oracle

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

#include "fmlab/assoc_rules.h"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "fmlab/csv.h"
#include "fmlab/enumeration.h"

namespace fmlab {

void MiningConfig::Validate() const {
  if (max_lhs < 1) throw std::invalid_argument("max_lhs must be at least 1");
  if (!(min_support >= 0 && min_support <= 1)) {
    throw std::invalid_argument("min_support must be in [0, 1]");
  }
  if (!(min_confidence >= 0 && min_confidence <= 1)) {
    throw std::invalid_argument("min_confidence must be in [0, 1]");
  }
}

std::vector<Literal> MiningItems(const FeatureModel& model,
                                 const SchemaMapping& mapping) {
  const std::vector<FeatureId> toggleable =
      Toggleable(model, CoreAndDead(model));
  std::vector<Literal> out;
  for (const Literal& l : mapping.ItemLiterals()) {
    if (std::binary_search(toggleable.begin(), toggleable.end(), l.feature)) {
      out.push_back(l);
    }
  }
  return out;
}

namespace {

using Rows = std::vector<std::uint64_t>;

std::size_t Popcount(const Rows& r) {
  std::size_t n = 0;
  for (std::uint64_t w : r) n += std::popcount(w);
  return n;
}

std::size_t PopcountAnd(const Rows& a, const Rows& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

struct ItemSet {
  std::vector<std::size_t> items;
  Rows rows;
};

bool RuleOrder(const Rule& a, const Rule& b) {
  if (a.lhs.size() != b.lhs.size()) return a.lhs.size() < b.lhs.size();
  if (a.matched_rows != b.matched_rows) return a.matched_rows > b.matched_rows;
  if (a.lhs != b.lhs) return a.lhs < b.lhs;
  return a.rhs < b.rhs;
}

}  // namespace

std::vector<Rule> MineRules(const Dataset& dataset, const MiningConfig& cfg,
                            const std::vector<Literal>& items) {
  cfg.Validate();
  std::vector<Rule> out;
  const std::size_t n = dataset.size();
  if (n == 0) return out;
  const std::size_t words = (n + 63) / 64;
  auto passes_support = [&](std::size_t count) {
    return count > 0 &&
           static_cast<double>(count) / static_cast<double>(n) >=
               cfg.min_support;
  };

  std::vector<Rows> item_rows(items.size(), Rows(words, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].SatisfiedBy(dataset[r].config)) {
        item_rows[i][r >> 6] |= std::uint64_t{1} << (r & 63);
      }
    }
  }

  for (Stage stage : {Stage::kCompile, Stage::kBuild}) {
    Rows rhs(words, 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (dataset[r].failure_stage() == stage) {
        rhs[r >> 6] |= std::uint64_t{1} << (r & 63);
      }
    }
    auto consider = [&](const std::vector<std::size_t>& set, const Rows& rows,
                        std::vector<ItemSet>& frequent) {
      const std::size_t joint = PopcountAnd(rows, rhs);
      if (!passes_support(joint)) return;
      const std::size_t lhs = Popcount(rows);
      const double confidence = static_cast<double>(joint) / lhs;
      if (confidence >= cfg.min_confidence) {
        Rule rule;
        for (std::size_t i : set) rule.lhs.push_back(items[i]);
        rule.rhs = stage;
        rule.matched_rows = joint;
        rule.lhs_rows = lhs;
        rule.total_rows = n;
        rule.support = static_cast<double>(joint) / n;
        rule.confidence = confidence;
        out.push_back(std::move(rule));
      }
      frequent.push_back({set, rows});
    };

    std::vector<ItemSet> level;
    for (std::size_t i = 0; i < items.size(); ++i) {
      consider({i}, item_rows[i], level);
    }
    for (std::size_t size = 2; size <= cfg.max_lhs && !level.empty(); ++size) {
      std::set<std::vector<std::size_t>> known;
      for (const ItemSet& s : level) known.insert(s.items);
      std::vector<ItemSet> next;
      // Sets in `level` are sorted, so sets sharing a prefix are adjacent.
      for (std::size_t a = 0; a < level.size(); ++a) {
        const std::vector<std::size_t>& pa = level[a].items;
        for (std::size_t b = a + 1; b < level.size(); ++b) {
          const std::vector<std::size_t>& pb = level[b].items;
          if (!std::equal(pa.begin(), pa.end() - 1, pb.begin())) break;
          const std::size_t last = pb.back();
          bool same_feature = false;
          for (std::size_t i : pa) {
            same_feature |= items[i].feature == items[last].feature;
          }
          if (same_feature) continue;
          std::vector<std::size_t> cand = pa;
          cand.push_back(last);
          bool all_frequent = true;
          for (std::size_t drop = 0; drop + 2 < cand.size() && all_frequent;
               ++drop) {
            std::vector<std::size_t> sub = cand;
            sub.erase(sub.begin() + drop);
            all_frequent = known.count(sub) > 0;
          }
          if (!all_frequent) continue;
          Rows rows = level[a].rows;
          for (std::size_t w = 0; w < words; ++w) rows[w] &= item_rows[last][w];
          consider(cand, rows, next);
        }
      }
      level = std::move(next);
    }
  }
  std::sort(out.begin(), out.end(), RuleOrder);
  return out;
}

std::vector<Rule> MineRules(const Dataset& dataset, const FeatureModel& model,
                            const MiningConfig& cfg,
                            const SchemaMapping& mapping) {
  return MineRules(dataset, cfg, MiningItems(model, mapping));
}

std::vector<Rule> PruneRedundant(std::vector<Rule> rules,
                                 const FeatureModel& model) {
  std::sort(rules.begin(), rules.end(), RuleOrder);
  SatOracle oracle(model);
  rules.erase(std::remove_if(rules.begin(), rules.end(),
                             [&](const Rule& r) {
                               return !oracle.SatisfiableWith(r.lhs);
                             }),
              rules.end());

  std::vector<Literal> literals;
  for (const Rule& r : rules) {
    literals.insert(literals.end(), r.lhs.begin(), r.lhs.end());
  }
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()),
                 literals.end());
  auto index = [&](const Literal& l) {
    return static_cast<std::size_t>(
        std::lower_bound(literals.begin(), literals.end(), l) -
        literals.begin());
  };
  const std::size_t words = (literals.size() + 63) / 64;

  // implied[i]: literals entailed by rule i's lhs under the model.
  std::vector<Rows> implied(rules.size(), Rows(words, 0));
  std::vector<Rows> own(rules.size(), Rows(words, 0));
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (const Literal& l : rules[i].lhs) {
      const std::size_t k = index(l);
      own[i][k >> 6] |= std::uint64_t{1} << (k & 63);
    }
    for (std::size_t k = 0; k < literals.size(); ++k) {
      bool entailed = (own[i][k >> 6] >> (k & 63)) & 1;
      if (!entailed) {
        std::vector<Literal> probe = rules[i].lhs;
        probe.push_back(literals[k].Negated());
        entailed = !oracle.SatisfiableWith(probe);
      }
      if (entailed) implied[i][k >> 6] |= std::uint64_t{1} << (k & 63);
    }
  }
  auto implies = [&](std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < words; ++w) {
      if (own[b][w] & ~implied[a][w]) return false;
    }
    return true;
  };

  // Drop a rule when another one with the same rhs and at least its
  // confidence is strictly more general, or equivalent and earlier.
  std::vector<Rule> kept;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < rules.size() && !redundant; ++j) {
      if (j == i || rules[j].rhs != rules[i].rhs ||
          rules[j].confidence < rules[i].confidence || !implies(i, j)) {
        continue;
      }
      redundant = j < i || !implies(j, i);
    }
    if (!redundant) kept.push_back(rules[i]);
  }
  return kept;
}

std::string FormatLhs(const std::vector<Literal>& lhs,
                      const FeatureModel& model) {
  std::string out = "{";
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (i > 0) out += ", ";
    if (!lhs[i].value) out += '!';
    out += model.feature(lhs[i].feature).name;
  }
  return out + "}";
}

std::vector<FaultSignature> ToSignatures(const std::vector<Rule>& rules,
                                         const FeatureModel& model) {
  std::vector<FaultSignature> out;
  for (const Rule& r : rules) {
    FaultSignature s;
    s.id = FormatLiterals(r.lhs, model) + " => " + std::string(StageName(r.rhs));
    s.literals = r.lhs;
    s.stage = r.rhs;
    out.push_back(std::move(s));
  }
  return out;
}

bool VerifyRule(const Rule& rule, const Dataset& dataset) {
  std::size_t lhs = 0, joint = 0;
  for (const TestRecord& r : dataset.records()) {
    bool match = true;
    for (const Literal& l : rule.lhs) match = match && l.SatisfiedBy(r.config);
    if (!match) continue;
    ++lhs;
    if (r.failure_stage() == rule.rhs) ++joint;
  }
  const std::size_t n = dataset.size();
  return lhs == rule.lhs_rows && joint == rule.matched_rows &&
         n == rule.total_rows && lhs > 0 &&
         rule.support == static_cast<double>(joint) / n &&
         rule.confidence == static_cast<double>(joint) / lhs;
}

void WriteRulesCsv(std::ostream& out, const std::vector<Rule>& rules,
                   const FeatureModel& model, bool verbose) {
  std::vector<std::string> header = {"lhs", "rhs", "support", "confidence",
                                     "matched_rows"};
  if (verbose) {
    header.push_back("lhs_rows");
    header.push_back("lhs_support");
  }
  WriteCsvRow(out, header);
  char buf[64];
  for (const Rule& r : rules) {
    std::vector<std::string> row;
    row.push_back(FormatLhs(r.lhs, model));
    row.push_back(std::string(StageName(r.rhs)) + "=KO");
    std::snprintf(buf, sizeof(buf), "%.6f", r.support);
    row.push_back(buf);
    std::snprintf(buf, sizeof(buf), "%.6f", r.confidence);
    row.push_back(buf);
    row.push_back(std::to_string(r.matched_rows));
    if (verbose) {
      row.push_back(std::to_string(r.lhs_rows));
      std::snprintf(buf, sizeof(buf), "%.6f", r.lhs_support());
      row.push_back(buf);
    }
    WriteCsvRow(out, row);
  }
}

}  // namespace fmlab

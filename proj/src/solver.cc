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

#include "fmlab/solver.h"

#include <cstdlib>
#include <stdexcept>

namespace fmlab {
namespace {

std::size_t OccIndex(int lit) {
  return 2 * static_cast<std::size_t>(std::abs(lit) - 1) + (lit > 0 ? 0 : 1);
}

}  // namespace

Solver::Solver(const CnfFormula& cnf)
    : feature_count_(cnf.feature_count),
      var_count_(cnf.var_count),
      clauses_(cnf.clauses),
      occ_(2 * cnf.var_count),
      value_(cnf.var_count, kUnset),
      sat_count_(cnf.clauses.size(), 0),
      false_count_(cnf.clauses.size(), 0) {
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    if (clauses_[c].empty()) root_unsat_ = true;
    for (int lit : clauses_[c]) occ_[OccIndex(lit)].push_back(c);
  }
  for (const auto& c : clauses_) {
    if (c.size() == 1 && !Assign(c[0])) root_unsat_ = true;
  }
  if (!root_unsat_ && !Propagate()) root_unsat_ = true;
  base_trail_ = trail_.size();
}

bool Solver::Assign(int lit) {
  const std::size_t v = static_cast<std::size_t>(std::abs(lit) - 1);
  const std::int8_t val = lit > 0 ? 1 : 0;
  if (value_[v] != kUnset) {
    if (value_[v] != val) conflict_ = true;
    return !conflict_;
  }
  value_[v] = val;
  trail_.push_back(lit);
  for (std::uint32_t c : occ_[OccIndex(lit)]) {
    if (sat_count_[c]++ == 0) ++satisfied_;
  }
  for (std::uint32_t c : occ_[OccIndex(-lit)]) {
    ++false_count_[c];
    if (sat_count_[c] == 0 && false_count_[c] == clauses_[c].size()) {
      conflict_ = true;
    }
  }
  return !conflict_;
}

bool Solver::Propagate() {
  while (!conflict_ && propagated_ < trail_.size()) {
    const int lit = trail_[propagated_++];
    for (std::uint32_t c : occ_[OccIndex(-lit)]) {
      if (sat_count_[c] != 0 || false_count_[c] + 1 != clauses_[c].size()) {
        continue;
      }
      for (int other : clauses_[c]) {
        if (value_[std::abs(other) - 1] == kUnset) {
          Assign(other);
          break;
        }
      }
      if (conflict_) break;
    }
  }
  return !conflict_;
}

void Solver::Backtrack(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    const int lit = trail_.back();
    trail_.pop_back();
    value_[std::abs(lit) - 1] = kUnset;
    for (std::uint32_t c : occ_[OccIndex(lit)]) {
      if (--sat_count_[c] == 0) --satisfied_;
    }
    for (std::uint32_t c : occ_[OccIndex(-lit)]) --false_count_[c];
  }
  if (propagated_ > trail_.size()) propagated_ = trail_.size();
  conflict_ = false;
}

void Solver::Reset() { Backtrack(base_trail_); }

int Solver::LowestUnassigned(std::size_t limit) const {
  for (std::size_t v = 0; v < limit; ++v) {
    if (value_[v] == kUnset) return static_cast<int>(v);
  }
  return -1;
}

bool Solver::SearchAny() {
  if (AllSatisfied()) return true;
  const int v = LowestUnassigned(var_count_);
  if (v < 0) return false;
  const std::size_t mark = trail_.size();
  for (int lit : {-(v + 1), v + 1}) {
    if (Assign(lit) && Propagate() && SearchAny()) return true;
    Backtrack(mark);
  }
  return false;
}

bool Solver::Solve(const std::vector<int>& assumptions) {
  if (root_unsat_) return false;
  Reset();
  bool ok = true;
  for (int lit : assumptions) {
    if (!Assign(lit)) {
      ok = false;
      break;
    }
  }
  ok = ok && Propagate() && SearchAny();
  Reset();
  return ok;
}

bool Solver::EnumerateRec(BitVector& scratch,
                          const std::function<bool(const BitVector&)>& visit) {
  const bool all_sat = AllSatisfied();
  const int v = LowestUnassigned(feature_count_);
  if (all_sat || v < 0) {
    if (!all_sat) {
      // Features fixed but auxiliaries open: one extension is enough.
      const std::size_t mark = trail_.size();
      const bool sat = SearchAny();
      Backtrack(mark);
      if (!sat) return true;
    }
    std::vector<std::size_t> free_vars;
    for (std::size_t i = 0; i < feature_count_; ++i) {
      if (value_[i] == kUnset) {
        free_vars.push_back(i);
      } else {
        scratch.set(i, value_[i] == 1);
      }
    }
    if (free_vars.size() >= 64) {
      throw std::overflow_error("too many free variables to enumerate");
    }
    // The lowest free variable is the most significant counter bit.
    const std::uint64_t n = std::uint64_t{1} << free_vars.size();
    const std::size_t k = free_vars.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      for (std::size_t i = 0; i < k; ++i) {
        scratch.set(free_vars[i], (mask >> (k - 1 - i)) & 1);
      }
      if (!visit(scratch)) return false;
    }
    return true;
  }
  const std::size_t mark = trail_.size();
  for (int lit : {-(v + 1), v + 1}) {
    if (Assign(lit) && Propagate()) {
      if (!EnumerateRec(scratch, visit)) {
        Backtrack(mark);
        return false;
      }
    }
    Backtrack(mark);
  }
  return true;
}

void Solver::Enumerate(const std::function<bool(const BitVector&)>& visit) {
  if (root_unsat_) return;
  Reset();
  BitVector scratch(feature_count_);
  EnumerateRec(scratch, visit);
  Reset();
}

std::uint64_t Solver::CountRec() {
  const bool all_sat = AllSatisfied();
  const int v = LowestUnassigned(feature_count_);
  if (all_sat || v < 0) {
    if (!all_sat) {
      const std::size_t mark = trail_.size();
      const bool sat = SearchAny();
      Backtrack(mark);
      if (!sat) return 0;
    }
    std::size_t free_vars = 0;
    for (std::size_t i = 0; i < feature_count_; ++i) {
      if (value_[i] == kUnset) ++free_vars;
    }
    if (free_vars >= 63) throw std::overflow_error("model count overflow");
    return std::uint64_t{1} << free_vars;
  }
  std::uint64_t total = 0;
  const std::size_t mark = trail_.size();
  for (int lit : {-(v + 1), v + 1}) {
    if (Assign(lit) && Propagate()) {
      const std::uint64_t sub = CountRec();
      if (total > (std::uint64_t{1} << 63) - sub) {
        throw std::overflow_error("model count overflow");
      }
      total += sub;
    }
    Backtrack(mark);
  }
  return total;
}

std::uint64_t Solver::Count() {
  if (root_unsat_) return 0;
  Reset();
  const std::uint64_t n = CountRec();
  Reset();
  return n;
}

}  // namespace fmlab

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

#ifndef FMLAB_SOLVER_H_
#define FMLAB_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fmlab/bit_vector.h"
#include "fmlab/cnf.h"

namespace fmlab {

// Plain DPLL with unit propagation by occurrence counting. Branches on the
// lowest unassigned variable, false first, so enumeration follows the
// lexicographic order of the projected feature assignment. Not thread-safe;
// build one per thread.
class Solver {
 public:
  explicit Solver(const CnfFormula& cnf);

  // True iff some model extends `assumptions` (DIMACS literals).
  bool Solve(const std::vector<int>& assumptions = {});

  // Visits each model projected onto the feature variables, in
  // lexicographic order. `visit` returns false to stop early.
  void Enumerate(const std::function<bool(const BitVector&)>& visit);

  // Number of projected models. Throws std::overflow_error past 2^63.
  std::uint64_t Count();

 private:
  enum : std::int8_t { kUnset = -1 };

  bool Assign(int lit);
  bool Propagate();
  void Backtrack(std::size_t trail_size);
  void Reset();
  int LowestUnassigned(std::size_t limit) const;
  bool AllSatisfied() const { return satisfied_ == clauses_.size(); }
  bool SearchAny();
  bool EnumerateRec(BitVector& scratch,
                    const std::function<bool(const BitVector&)>& visit);
  std::uint64_t CountRec();

  std::size_t feature_count_;
  std::size_t var_count_;
  std::vector<std::vector<int>> clauses_;
  // occ_[2*v + (positive ? 0 : 1)] lists clauses containing that literal.
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::int8_t> value_;
  std::vector<std::uint32_t> sat_count_;
  std::vector<std::uint32_t> false_count_;
  std::size_t satisfied_ = 0;
  std::vector<int> trail_;
  std::size_t propagated_ = 0;
  std::size_t base_trail_ = 0;
  bool conflict_ = false;
  bool root_unsat_ = false;
};

}  // namespace fmlab

#endif  // FMLAB_SOLVER_H_

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

#ifndef FMLAB_TUPLE_SPACE_H_
#define FMLAB_TUPLE_SPACE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fmlab/enumeration.h"
#include "fmlab/feature_model.h"

namespace fmlab {

inline constexpr int kMaxStrength = 4;

// Binomial coefficient; saturates at SIZE_MAX.
std::size_t Choose(std::size_t n, std::size_t k);

// Valid t-tuples over a fixed feature list (the toggleable features).
//
// A tuple is a set of t positions p0 < ... < p(t-1) into features() plus a
// polarity mask whose bit j is the value of position pj. Position sets are
// ranked in colexicographic order, rank = sum_j C(pj, j + 1), and
// valid_mask(rank) has bit m set when polarity m is satisfiable.
class TupleSpace {
 public:
  TupleSpace(int t, std::vector<FeatureId> features,
             std::vector<std::uint16_t> valid_masks);

  int t() const { return t_; }
  const std::vector<FeatureId>& features() const { return features_; }
  std::size_t combination_count() const { return valid_.size(); }
  std::uint16_t valid_mask(std::size_t rank) const { return valid_[rank]; }
  const std::vector<std::uint16_t>& valid_masks() const { return valid_; }
  // Number of valid tuples.
  std::size_t size() const { return size_; }

  std::vector<std::size_t> Positions(std::size_t rank) const;
  std::vector<Literal> TupleAt(std::size_t rank, unsigned mask) const;
  // False for tuples of the wrong size or over features outside the list.
  bool Contains(std::vector<Literal> tuple) const;
  // All valid tuples, by rank then mask.
  std::vector<std::vector<Literal>> Tuples() const;

 private:
  int t_;
  std::vector<FeatureId> features_;
  std::vector<std::uint16_t> valid_;
  std::size_t size_ = 0;
};

// Tuples over non-core, non-dead features in both polarities; a tuple is
// valid iff some universe member matches it. Requires 1 <= t <= 4.
TupleSpace BuildTupleSpace(const FeatureModel& model,
                           const ConfigurationUniverse& universe, int t);

// Same, with the feature list given.
TupleSpace BuildTupleSpace(const ConfigurationUniverse& universe,
                           std::vector<FeatureId> features, int t);

// Number of valid tuples of `space` that some configuration matches.
std::size_t CountCovered(const TupleSpace& space,
                         const std::vector<Configuration>& configs);

namespace internal {

// Calls f(rank, mask) for every t-subset of positions in colex order, where
// mask packs v[p0] | v[p1] << 1 | ... for the 0/1 bytes in v.
template <int T, typename F>
inline void ForEachMask(const std::uint8_t* v, int k, F&& f) {
  std::size_t rank = 0;
  if constexpr (T == 1) {
    for (int a = 0; a < k; ++a) f(rank++, unsigned{v[a]});
  } else if constexpr (T == 2) {
    for (int b = 1; b < k; ++b) {
      const unsigned mb = unsigned{v[b]} << 1;
      for (int a = 0; a < b; ++a) f(rank++, mb | v[a]);
    }
  } else if constexpr (T == 3) {
    for (int c = 2; c < k; ++c) {
      const unsigned mc = unsigned{v[c]} << 2;
      for (int b = 1; b < c; ++b) {
        const unsigned mb = mc | unsigned{v[b]} << 1;
        for (int a = 0; a < b; ++a) f(rank++, mb | v[a]);
      }
    }
  } else {
    static_assert(T == 4);
    for (int d = 3; d < k; ++d) {
      const unsigned md = unsigned{v[d]} << 3;
      for (int c = 2; c < d; ++c) {
        const unsigned mc = md | unsigned{v[c]} << 2;
        for (int b = 1; b < c; ++b) {
          const unsigned mb = mc | unsigned{v[b]} << 1;
          for (int a = 0; a < b; ++a) f(rank++, mb | v[a]);
        }
      }
    }
  }
}

template <typename F>
inline void ForEachMask(int t, const std::uint8_t* v, int k, F&& f) {
  switch (t) {
    case 1:
      ForEachMask<1>(v, k, f);
      break;
    case 2:
      ForEachMask<2>(v, k, f);
      break;
    case 3:
      ForEachMask<3>(v, k, f);
      break;
    case 4:
      ForEachMask<4>(v, k, f);
      break;
  }
}

// Row-major 0/1 bytes of each universe member restricted to `features`.
std::vector<std::uint8_t> ProjectBytes(const ConfigurationUniverse& universe,
                                       const std::vector<FeatureId>& features);

}  // namespace internal
}  // namespace fmlab

#endif  // FMLAB_TUPLE_SPACE_H_

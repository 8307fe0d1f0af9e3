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

#include "fmlab/tuple_space.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fmlab {

std::size_t Choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = n - k + i;
    if (r > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    r = r * num / i;
  }
  return r;
}

TupleSpace::TupleSpace(int t, std::vector<FeatureId> features,
                       std::vector<std::uint16_t> valid_masks)
    : t_(t), features_(std::move(features)), valid_(std::move(valid_masks)) {
  if (t_ < 1 || t_ > kMaxStrength) {
    throw std::invalid_argument("interaction strength must be in [1, 4]");
  }
  if (valid_.size() != Choose(features_.size(), t_)) {
    throw std::invalid_argument("valid mask table has the wrong size");
  }
  const unsigned limit = 1u << t_;
  for (std::uint16_t m : valid_) {
    if (m >> limit) throw std::invalid_argument("polarity mask out of range");
    size_ += std::popcount(m);
  }
}

std::vector<std::size_t> TupleSpace::Positions(std::size_t rank) const {
  std::vector<std::size_t> pos(t_);
  std::size_t upper = features_.size();
  for (int j = t_ - 1; j >= 0; --j) {
    std::size_t p = upper - 1;
    while (Choose(p, j + 1) > rank) --p;
    pos[j] = p;
    rank -= Choose(p, j + 1);
    upper = p;
  }
  return pos;
}

std::vector<Literal> TupleSpace::TupleAt(std::size_t rank,
                                         unsigned mask) const {
  std::vector<Literal> out;
  const std::vector<std::size_t> pos = Positions(rank);
  for (int j = 0; j < t_; ++j) {
    out.push_back({features_[pos[j]], static_cast<bool>((mask >> j) & 1)});
  }
  return out;
}

bool TupleSpace::Contains(std::vector<Literal> tuple) const {
  if (static_cast<int>(tuple.size()) != t_) return false;
  std::vector<std::pair<std::size_t, bool>> pos;
  for (const Literal& l : tuple) {
    auto it = std::lower_bound(features_.begin(), features_.end(), l.feature);
    if (it == features_.end() || *it != l.feature) return false;
    pos.emplace_back(it - features_.begin(), l.value);
  }
  std::sort(pos.begin(), pos.end());
  std::size_t rank = 0;
  unsigned mask = 0;
  for (int j = 0; j < t_; ++j) {
    if (j > 0 && pos[j].first == pos[j - 1].first) return false;
    rank += Choose(pos[j].first, j + 1);
    mask |= unsigned{pos[j].second} << j;
  }
  return (valid_[rank] >> mask) & 1;
}

std::vector<std::vector<Literal>> TupleSpace::Tuples() const {
  std::vector<std::vector<Literal>> out;
  out.reserve(size_);
  for (std::size_t r = 0; r < valid_.size(); ++r) {
    for (unsigned m = 0; m < (1u << t_); ++m) {
      if ((valid_[r] >> m) & 1) out.push_back(TupleAt(r, m));
    }
  }
  return out;
}

namespace internal {

std::vector<std::uint8_t> ProjectBytes(const ConfigurationUniverse& universe,
                                       const std::vector<FeatureId>& features) {
  const std::size_t k = features.size();
  std::vector<std::uint8_t> out(universe.size() * k);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out[i * k + j] = universe[i].test(features[j]);
    }
  }
  return out;
}

}  // namespace internal

TupleSpace BuildTupleSpace(const ConfigurationUniverse& universe,
                           std::vector<FeatureId> features, int t) {
  if (t < 1 || t > kMaxStrength) {
    throw std::invalid_argument("interaction strength must be in [1, 4]");
  }
  if (!std::is_sorted(features.begin(), features.end()) ||
      std::adjacent_find(features.begin(), features.end()) != features.end()) {
    throw std::invalid_argument("tuple features must be strictly ascending");
  }
  const int k = static_cast<int>(features.size());
  std::vector<std::uint16_t> valid(Choose(k, t), 0);
  const std::vector<std::uint8_t> bytes =
      internal::ProjectBytes(universe, features);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    internal::ForEachMask(t, bytes.data() + i * k, k,
                          [&](std::size_t rank, unsigned mask) {
                            valid[rank] |= static_cast<std::uint16_t>(1u << mask);
                          });
  }
  return TupleSpace(t, std::move(features), std::move(valid));
}

TupleSpace BuildTupleSpace(const FeatureModel& model,
                           const ConfigurationUniverse& universe, int t) {
  if (universe.width() != model.feature_count()) {
    throw std::invalid_argument("universe does not belong to the model");
  }
  return BuildTupleSpace(universe, Toggleable(model, CoreAndDead(model)), t);
}

std::size_t CountCovered(const TupleSpace& space,
                         const std::vector<Configuration>& configs) {
  const std::vector<FeatureId>& features = space.features();
  const int k = static_cast<int>(features.size());
  std::vector<std::uint16_t> seen(space.combination_count(), 0);
  std::vector<std::uint8_t> v(k);
  for (const Configuration& c : configs) {
    for (int j = 0; j < k; ++j) v[j] = c.test(features[j]);
    internal::ForEachMask(space.t(), v.data(), k,
                          [&](std::size_t rank, unsigned mask) {
                            seen[rank] |= static_cast<std::uint16_t>(1u << mask);
                          });
  }
  std::size_t n = 0;
  for (std::size_t r = 0; r < seen.size(); ++r) {
    n += std::popcount(static_cast<unsigned>(seen[r] & space.valid_mask(r)));
  }
  return n;
}

}  // namespace fmlab

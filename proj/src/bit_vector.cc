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

#include "fmlab/bit_vector.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fmlab {

BitVector::BitVector(std::size_t width)
    : width_(width), words_((width + 63) / 64, 0) {}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::size_t BitVector::CountAnd(const BitVector& other) const {
  if (other.width_ != width_) throw std::invalid_argument("width mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += std::popcount(words_[i] & other.words_[i]);
  }
  return n;
}

std::size_t BitVector::CountOr(const BitVector& other) const {
  if (other.width_ != width_) throw std::invalid_argument("width mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += std::popcount(words_[i] | other.words_[i]);
  }
  return n;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.width_ != width_) throw std::invalid_argument("width mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  if (other.width_ != width_) throw std::invalid_argument("width mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::string BitVector::ToString() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    // The lowest differing position decides; whoever has 0 there is smaller.
    const std::uint64_t low = diff & (~diff + 1);
    return (a.words_[i] & low) ? std::strong_ordering::greater
                               : std::strong_ordering::less;
  }
  return a.width_ <=> b.width_;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
  for (std::uint64_t w : v.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace fmlab

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

#ifndef FMLAB_BIT_VECTOR_H_
#define FMLAB_BIT_VECTOR_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fmlab {

// Fixed-width bit vector. Ordering is lexicographic on bit positions, bit 0
// first, with 0 < 1.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t width);

  std::size_t size() const { return width_; }
  bool empty() const { return width_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void reset(std::size_t i) { set(i, false); }

  std::size_t count() const;
  // Number of positions set in both vectors. Widths must match.
  std::size_t CountAnd(const BitVector& other) const;
  std::size_t CountOr(const BitVector& other) const;

  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);

  const std::vector<std::uint64_t>& words() const { return words_; }

  // "0101..." with position 0 first.
  std::string ToString() const;

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitVector& a,
                                          const BitVector& b);

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const;
};

}  // namespace fmlab

#endif  // FMLAB_BIT_VECTOR_H_

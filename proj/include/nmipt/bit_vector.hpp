// Copyright 2026 The nmipt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nmipt {

/// Fixed-length bit vector packed into 64-bit words. Bits past size() in the
/// last word are always zero.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t num_bits)
      : num_bits_(num_bits), words_(num_words_for(num_bits), 0) {}

  static constexpr std::size_t num_words_for(std::size_t num_bits) {
    return (num_bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return num_bits_; }
  std::size_t num_words() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value) {
    Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }

  bool any() const {
    for (Word w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  std::size_t popcount() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t num_bits_ = 0;
  std::vector<Word> words_;
};

/// Parity of the bitwise AND of two equally sized bit vectors.
inline bool dot_parity(const BitVector& a, const BitVector& b) {
  BitVector::Word acc = 0;
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) acc ^= wa[w] & wb[w];
  return (std::popcount(acc) & 1) != 0;
}

}  // namespace nmipt

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

#include "nmipt/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace nmipt {

std::size_t rank_gf2(std::vector<BitVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t num_cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != num_cols) throw std::invalid_argument("rank_gf2: ragged rows");
  }
  std::size_t rank = 0;
  const std::size_t num_words = BitVector::num_words_for(num_cols);
  for (std::size_t w = 0; w < num_words && rank < rows.size(); ++w) {
    for (std::size_t b = 0; b < BitVector::kWordBits && rank < rows.size(); ++b) {
      const BitVector::Word mask = BitVector::Word{1} << b;
      std::size_t pivot = rank;
      while (pivot < rows.size() && (rows[pivot].words()[w] & mask) == 0) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[rank], rows[pivot]);
      auto pivot_words = rows[rank].words();
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        auto row_words = rows[r].words();
        if ((row_words[w] & mask) == 0) continue;
        for (std::size_t v = w; v < num_words; ++v) row_words[v] ^= pivot_words[v];
      }
      ++rank;
    }
  }
  return rank;
}

}  // namespace nmipt

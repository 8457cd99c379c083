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

#include <cstddef>
#include <random>
#include <vector>

#include "nmipt/bit_vector.hpp"
#include "nmipt/clifford.hpp"
#include "nmipt/measurement.hpp"
#include "nmipt/pauli.hpp"
#include "nmipt/stabilizer_state.hpp"

namespace nmipt::testing {

// Elementwise Gaussian elimination over std::vector<int>; shares nothing with
// the packed implementation.
inline std::size_t naive_rank(std::vector<std::vector<int>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % 2 == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][c] % 2 != 0) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = (m[r][k] + m[rank][k]) % 2;
      }
    }
    ++rank;
  }
  return rank;
}

inline PauliOperator random_pauli(std::size_t n, std::mt19937_64& rng, bool hermitian = false) {
  PauliOperator p(n);
  for (std::size_t j = 0; j < n; ++j) {
    p.x.set(j, (rng() & 1U) != 0);
    p.z.set(j, (rng() & 1U) != 0);
  }
  p.phase = static_cast<std::uint8_t>(hermitian ? (rng() & 1U) * 2 : rng() & 3U);
  return p;
}

// Random mixed stabilizer state: scramble a product state and dephase a
// random subset of sites, then scramble again.
inline StabilizerState random_stabilizer_state(std::size_t n, std::mt19937_64& rng) {
  StabilizerState s = (rng() & 1U) ? StabilizerState::product_zero(n) : StabilizerState::maximally_mixed(n);
  auto scramble = [&]() {
    for (int layer = 0; layer < 2 * static_cast<int>(n); ++layer) {
      const std::size_t i = rng() % n;
      std::size_t j = rng() % n;
      if (n == 1) return;
      while (j == i) j = rng() % n;
      apply(sample_uniform(rng), s, i, j);
    }
  };
  scramble();
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = rng() % 4;
    if (r == 0) measure_unmonitored(s, j);
    if (r == 1) measure_monitored(s, j, rng);
  }
  scramble();
  return s;
}

}  // namespace nmipt::testing

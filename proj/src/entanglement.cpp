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

#include "nmipt/entanglement.hpp"

#include <stdexcept>

#include "nmipt/gf2.hpp"

namespace nmipt {

Region Region::interval(std::size_t num_sites, std::size_t begin, std::size_t end) {
  if (begin > end || end > num_sites) throw std::out_of_range("bad region interval");
  Region r(num_sites);
  for (std::size_t i = begin; i < end; ++i) r.members_[i] = true;
  return r;
}

Region Region::from_mask(std::size_t num_sites, unsigned long long mask) {
  if (num_sites < 64 && (mask >> num_sites) != 0) throw std::out_of_range("mask exceeds chain");
  Region r(num_sites);
  for (std::size_t i = 0; i < num_sites && i < 64; ++i) r.members_[i] = ((mask >> i) & 1ULL) != 0;
  return r;
}

std::size_t Region::size() const {
  std::size_t n = 0;
  for (bool b : members_) n += b ? 1 : 0;
  return n;
}

Region Region::complement() const {
  Region r(num_sites());
  for (std::size_t i = 0; i < num_sites(); ++i) r.members_[i] = !members_[i];
  return r;
}

Region Region::united(const Region& other) const {
  if (other.num_sites() != num_sites()) throw LengthMismatch("regions on different chains");
  Region r(num_sites());
  for (std::size_t i = 0; i < num_sites(); ++i) r.members_[i] = members_[i] || other.members_[i];
  return r;
}

bool Region::overlaps(const Region& other) const {
  if (other.num_sites() != num_sites()) throw LengthMismatch("regions on different chains");
  for (std::size_t i = 0; i < num_sites(); ++i) {
    if (members_[i] && other.members_[i]) return true;
  }
  return false;
}

int entropy_of_region(const StabilizerState& state, const Region& region) {
  const std::size_t n = state.num_sites();
  if (region.num_sites() != n) throw LengthMismatch("region and state differ in length");
  std::vector<std::size_t> outside;
  for (std::size_t j = 0; j < n; ++j) {
    if (!region.contains(j)) outside.push_back(j);
  }
  const std::size_t m = outside.size();
  std::vector<BitVector> rows;
  rows.reserve(state.rank());
  for (const auto& g : state.generators()) {
    BitVector row(2 * m);
    for (std::size_t c = 0; c < m; ++c) {
      if (g.x.get(outside[c])) row.set(c, true);
      if (g.z.get(outside[c])) row.set(m + c, true);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t rank_outside = m == 0 ? 0 : rank_gf2(std::move(rows));
  return static_cast<int>(n - m) - static_cast<int>(state.rank()) + static_cast<int>(rank_outside);
}

int mutual_information(const StabilizerState& state, const Region& a, const Region& b) {
  if (a.overlaps(b)) throw std::invalid_argument("mutual information needs disjoint regions");
  return entropy_of_region(state, a) + entropy_of_region(state, b) -
         entropy_of_region(state, a.united(b));
}

EntropyReport half_chain_report(const StabilizerState& state) {
  const std::size_t n = state.num_sites();
  if (n % 2 != 0) throw std::invalid_argument("half-chain cut needs an even number of sites");
  const Region a = Region::interval(n, 0, n / 2);
  const Region b = Region::interval(n, n / 2, n);
  EntropyReport r;
  r.s_a = entropy_of_region(state, a);
  r.s_b = entropy_of_region(state, b);
  r.s_ab = entropy_of_region(state, Region::interval(n, 0, n));
  r.i_ab = r.s_a + r.s_b - r.s_ab;
  r.rank_k = static_cast<int>(state.rank());
  return r;
}

}  // namespace nmipt

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
#include <vector>

#include "nmipt/stabilizer_state.hpp"

namespace nmipt {

/// Subset of the sites [0, L) of a chain.
class Region {
 public:
  explicit Region(std::size_t num_sites) : members_(num_sites, false) {}
  /// Sites [begin, end).
  static Region interval(std::size_t num_sites, std::size_t begin, std::size_t end);
  static Region from_mask(std::size_t num_sites, unsigned long long mask);

  std::size_t num_sites() const { return members_.size(); }
  bool contains(std::size_t site) const { return members_[site]; }
  void insert(std::size_t site) { members_.at(site) = true; }
  std::size_t size() const;

  Region complement() const;
  Region united(const Region& other) const;
  bool overlaps(const Region& other) const;

 private:
  std::vector<bool> members_;
};

/// Entropies are in bits; they are integers for stabilizer states and all
/// Renyi indices agree because the entanglement spectrum is flat.
struct EntropyReport {
  int s_a = 0;
  int s_b = 0;
  int s_ab = 0;
  int i_ab = 0;
  int rank_k = 0;

  bool operator==(const EntropyReport&) const = default;
};

/// S_A = |A| - (k - rank of the generators restricted to the complement).
int entropy_of_region(const StabilizerState& state, const Region& region);

/// S_A + S_B - S_{A u B}; A and B must be disjoint.
int mutual_information(const StabilizerState& state, const Region& a, const Region& b);

/// Report for the cut A = [0, L/2), B = [L/2, L). L must be even.
EntropyReport half_chain_report(const StabilizerState& state);

}  // namespace nmipt

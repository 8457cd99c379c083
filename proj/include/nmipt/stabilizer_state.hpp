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
#include <optional>
#include <stdexcept>
#include <vector>

#include "nmipt/pauli.hpp"

namespace nmipt {

/// Raised when an operation would break the stabilizer-group invariants.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A (generally mixed) stabilizer state on L qubits,
///
///   rho = 2^-L * prod_{i<k} (1 + g_i),
///
/// described by k <= L independent, commuting, Hermitian generators g_i.
/// k = 0 is the maximally mixed state and k = L a pure state. Generators are
/// kept in no particular order.
class StabilizerState {
 public:
  static StabilizerState product_zero(std::size_t num_sites);
  static StabilizerState maximally_mixed(std::size_t num_sites);
  /// Builds a state from explicit generators, checking all invariants.
  static StabilizerState from_generators(std::size_t num_sites,
                                         std::vector<PauliOperator> generators);

  std::size_t num_sites() const { return num_sites_; }
  std::size_t rank() const { return generators_.size(); }
  const std::vector<PauliOperator>& generators() const { return generators_; }

  /// Appends g. Throws ContractViolation unless g is Hermitian, commutes with
  /// every generator and is independent of them.
  void insert_generator(PauliOperator g);

  /// If +-P (letters of p, phase ignored) lies in the stabilizer group,
  /// returns the phase (0 or 2) of the group element with those letters.
  std::optional<std::uint8_t> group_sign_of(const PauliOperator& p) const;
  /// True if p's letters (up to sign) are in the span of the generators.
  bool spans(const PauliOperator& p) const { return group_sign_of(p).has_value(); }

  /// Throws ContractViolation describing the first broken invariant.
  void validate() const;

  /// Mutable access for the gate and channel kernels. Callers must restore the
  /// invariants before returning control.
  std::vector<PauliOperator>& mutable_generators() { return generators_; }

  bool operator==(const StabilizerState&) const = default;

 private:
  explicit StabilizerState(std::size_t num_sites) : num_sites_(num_sites) {}

  std::size_t num_sites_ = 0;
  std::vector<PauliOperator> generators_;
};

#ifdef NDEBUG
inline void debug_validate(const StabilizerState&) {}
#else
inline void debug_validate(const StabilizerState& s) { s.validate(); }
#endif

}  // namespace nmipt

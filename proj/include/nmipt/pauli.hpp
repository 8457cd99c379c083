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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nmipt/bit_vector.hpp"

namespace nmipt {

/// Thrown when two operands disagree on the number of sites.
class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Pauli string i^phase * P_0 (x) ... (x) P_{L-1} with P_j in {I, X, Y, Z}.
///
/// Site j carries (x_j, z_j): (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. With Y as a
/// letter of its own, a Hermitian operator has phase 0 or 2.
struct PauliOperator {
  BitVector x;
  BitVector z;
  std::uint8_t phase = 0;  // exponent of i, mod 4

  PauliOperator() = default;
  explicit PauliOperator(std::size_t num_sites) : x(num_sites), z(num_sites) {}

  static PauliOperator identity(std::size_t num_sites) { return PauliOperator(num_sites); }
  static PauliOperator single(std::size_t num_sites, std::size_t site, char letter,
                              bool negative = false);
  /// Parses strings like "+XZ_Y", "-ZZ", "iXY". '_' and 'I' are identity.
  static PauliOperator parse(std::string_view text);

  std::size_t num_sites() const { return x.size(); }
  bool is_hermitian() const { return (phase & 1U) == 0; }
  bool is_identity_up_to_phase() const { return !x.any() && !z.any(); }
  /// One of 'I', 'X', 'Y', 'Z'.
  char letter(std::size_t site) const;
  std::size_t weight() const;

  std::string str() const;

  bool operator==(const PauliOperator&) const = default;
};

/// True iff the symplectic product x_a.z_b + z_a.x_b vanishes mod 2.
bool commutes(const PauliOperator& a, const PauliOperator& b);

/// Exact operator product a*b, including the phase mod 4.
PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);

/// Replaces `target` with `target * source`.
void right_multiply_into(PauliOperator& target, const PauliOperator& source);

}  // namespace nmipt

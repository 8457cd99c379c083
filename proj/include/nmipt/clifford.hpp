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

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nmipt/pauli.hpp"
#include "nmipt/stabilizer_state.hpp"

namespace nmipt {

/// Hermitian two-site Pauli packed into four bits plus a sign.
///
/// Bit layout: bit0 = x(site 0), bit1 = z(site 0), bit2 = x(site 1),
/// bit3 = z(site 1). Letters follow PauliOperator (x=z=1 is Y).
struct Pauli2 {
  std::uint8_t bits = 0;
  bool negative = false;

  static bool commute(std::uint8_t a, std::uint8_t b);
  PauliOperator to_operator() const;
  bool operator==(const Pauli2&) const = default;
};

/// Two-qubit Clifford gate modulo global phase, stored as the conjugation
/// images of X_0, Z_0, X_1, Z_1.
class CliffordGate {
 public:
  enum Generator : std::size_t { kX0 = 0, kZ0 = 1, kX1 = 2, kZ1 = 3 };

  CliffordGate();  // identity
  explicit CliffordGate(const std::array<Pauli2, 4>& images);

  static CliffordGate identity() { return CliffordGate(); }
  /// CNOT with control on the first site.
  static CliffordGate cnot();

  const std::array<Pauli2, 4>& images() const { return images_; }
  /// Image bits and sign flip of an arbitrary Hermitian two-site Pauli (bits
  /// as in Pauli2) under conjugation.
  Pauli2 conjugate(std::uint8_t bits) const { return table_[bits]; }

  /// True iff the images reproduce the commutation relations of X_0, Z_0,
  /// X_1, Z_1.
  bool preserves_symplectic_form() const;

  /// Sign-free image tuple encoded as 16 bits (four nibbles), for counting
  /// symplectic classes.
  std::uint16_t symplectic_key() const;

  bool operator==(const CliffordGate& other) const { return images_ == other.images_; }

 private:
  void build_table();

  std::array<Pauli2, 4> images_;
  std::array<Pauli2, 16> table_;
};

/// Gate equal to applying `first` and then `second`.
CliffordGate compose(const CliffordGate& second, const CliffordGate& first);

/// Draws a gate uniformly from the two-qubit Clifford group modulo phase:
/// uniform over the 720 symplectic classes and the 16 sign assignments.
CliffordGate sample_uniform(std::mt19937_64& rng);

/// All 720 sign-free image tables preserving the symplectic form.
std::vector<CliffordGate> enumerate_symplectic_classes();

/// Conjugates every generator by the gate acting on sites (i, j); the gate's
/// site 0 maps to i and site 1 to j.
void apply(const CliffordGate& gate, StabilizerState& state, std::size_t i, std::size_t j);

}  // namespace nmipt

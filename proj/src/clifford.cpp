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

#include "nmipt/clifford.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace nmipt {

namespace {

constexpr std::uint8_t x_part(std::uint8_t bits) { return bits & 0b0101U; }
constexpr std::uint8_t z_part(std::uint8_t bits) { return (bits >> 1) & 0b0101U; }

// Two-site Pauli with a phase mod 4, used while building conjugation tables.
struct PhasedPauli2 {
  std::uint8_t bits = 0;
  int phase = 0;
};

// Exponent of i in the product of two single-site letters (x | z<<1), with
// XY = iZ, YZ = iX, ZX = iY.
constexpr int kLetterProductPhase[4][4] = {
    {0, 0, 0, 0},   // I
    {0, 0, -1, 1},  // X: XZ = -iY, XY = iZ
    {0, 1, 0, -1},  // Z: ZX = iY, ZY = -iX
    {0, -1, 1, 0},  // Y: YX = -iZ, YZ = iX
};

PhasedPauli2 mul(PhasedPauli2 a, PhasedPauli2 b) {
  const int exponent = kLetterProductPhase[a.bits & 3U][b.bits & 3U] +
                       kLetterProductPhase[(a.bits >> 2) & 3U][(b.bits >> 2) & 3U];
  return {static_cast<std::uint8_t>(a.bits ^ b.bits), (a.phase + b.phase + exponent) & 3};
}

}  // namespace

bool Pauli2::commute(std::uint8_t a, std::uint8_t b) {
  const unsigned s = (x_part(a) & z_part(b)) ^ (z_part(a) & x_part(b));
  return (std::popcount(s) & 1) == 0;
}

PauliOperator Pauli2::to_operator() const {
  PauliOperator p(2);
  p.x.set(0, bits & 1U);
  p.z.set(0, bits & 2U);
  p.x.set(1, bits & 4U);
  p.z.set(1, bits & 8U);
  p.phase = negative ? 2 : 0;
  return p;
}

CliffordGate::CliffordGate()
    : images_{Pauli2{0b0001, false}, Pauli2{0b0010, false}, Pauli2{0b0100, false},
              Pauli2{0b1000, false}} {
  build_table();
}

CliffordGate::CliffordGate(const std::array<Pauli2, 4>& images) : images_(images) {
  build_table();
}

CliffordGate CliffordGate::cnot() {
  return CliffordGate({Pauli2{0b0101, false}, Pauli2{0b0010, false}, Pauli2{0b0100, false},
                       Pauli2{0b1010, false}});
}

void CliffordGate::build_table() {
  // raw[in] = product of the images selected by `in`, in the order X0 Z0 X1 Z1.
  std::array<PhasedPauli2, 16> raw;
  raw[0] = PhasedPauli2{};
  for (std::uint8_t in = 1; in < 16; ++in) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(static_cast<unsigned>(in)));
    raw[in] = mul(PhasedPauli2{images_[low].bits, images_[low].negative ? 2 : 0},
                  raw[in & static_cast<std::uint8_t>(in - 1)]);
  }
  for (std::uint8_t in = 0; in < 16; ++in) {
    // Y = iXZ on each site with both bits set.
    const int ys = ((in & 3U) == 3U ? 1 : 0) + (((in >> 2) & 3U) == 3U ? 1 : 0);
    table_[in] = Pauli2{raw[in].bits, ((raw[in].phase + ys) & 3) == 2};
  }
}

bool CliffordGate::preserves_symplectic_form() const {
  for (std::size_t a = 0; a < 4; ++a) {
    if (images_[a].bits == 0) return false;
    for (std::size_t b = a + 1; b < 4; ++b) {
      const bool should_anticommute = (a == kX0 && b == kZ0) || (a == kX1 && b == kZ1);
      if (Pauli2::commute(images_[a].bits, images_[b].bits) == should_anticommute) return false;
    }
  }
  return true;
}

std::uint16_t CliffordGate::symplectic_key() const {
  return static_cast<std::uint16_t>(images_[0].bits | (images_[1].bits << 4) |
                                    (images_[2].bits << 8) | (images_[3].bits << 12));
}

CliffordGate compose(const CliffordGate& second, const CliffordGate& first) {
  std::array<Pauli2, 4> images;
  for (std::size_t g = 0; g < 4; ++g) {
    const Pauli2 mid = first.images()[g];
    Pauli2 out = second.conjugate(mid.bits);
    out.negative = out.negative != mid.negative;
    images[g] = out;
  }
  return CliffordGate(images);
}

CliffordGate sample_uniform(std::mt19937_64& rng) {
  auto pick = [&rng](const std::uint8_t* candidates, std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return candidates[dist(rng)];
  };
  std::uint8_t buf[16];
  std::size_t n = 0;

  for (std::uint8_t c = 1; c < 16; ++c) buf[n++] = c;
  const std::uint8_t x0 = pick(buf, n);

  n = 0;
  for (std::uint8_t c = 1; c < 16; ++c) {
    if (!Pauli2::commute(c, x0)) buf[n++] = c;
  }
  const std::uint8_t z0 = pick(buf, n);

  n = 0;
  for (std::uint8_t c = 1; c < 16; ++c) {
    if (Pauli2::commute(c, x0) && Pauli2::commute(c, z0)) buf[n++] = c;
  }
  const std::uint8_t x1 = pick(buf, n);

  n = 0;
  for (std::uint8_t c = 1; c < 16; ++c) {
    if (Pauli2::commute(c, x0) && Pauli2::commute(c, z0) && !Pauli2::commute(c, x1)) buf[n++] = c;
  }
  const std::uint8_t z1 = pick(buf, n);

  std::uniform_int_distribution<int> sign_dist(0, 15);
  const int signs = sign_dist(rng);
  return CliffordGate({Pauli2{x0, (signs & 1) != 0}, Pauli2{z0, (signs & 2) != 0},
                       Pauli2{x1, (signs & 4) != 0}, Pauli2{z1, (signs & 8) != 0}});
}

std::vector<CliffordGate> enumerate_symplectic_classes() {
  std::vector<CliffordGate> out;
  for (unsigned key = 0; key < (1U << 16); ++key) {
    std::array<Pauli2, 4> images;
    for (std::size_t g = 0; g < 4; ++g) images[g] = Pauli2{static_cast<std::uint8_t>((key >> (4 * g)) & 15U), false};
    CliffordGate gate(images);
    if (gate.preserves_symplectic_form()) out.push_back(gate);
  }
  return out;
}

void apply(const CliffordGate& gate, StabilizerState& state, std::size_t i, std::size_t j) {
  const std::size_t n = state.num_sites();
  if (i >= n || j >= n) {
    throw std::out_of_range("gate sites (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside chain of " + std::to_string(n));
  }
  if (i == j) throw std::invalid_argument("gate sites must differ");
  const std::size_t wi = i / BitVector::kWordBits, bi = i % BitVector::kWordBits;
  const std::size_t wj = j / BitVector::kWordBits, bj = j % BitVector::kWordBits;
  for (auto& g : state.mutable_generators()) {
    auto xs = g.x.words();
    auto zs = g.z.words();
    const unsigned in = static_cast<unsigned>((xs[wi] >> bi) & 1U) |
                        static_cast<unsigned>(((zs[wi] >> bi) & 1U) << 1) |
                        static_cast<unsigned>(((xs[wj] >> bj) & 1U) << 2) |
                        static_cast<unsigned>(((zs[wj] >> bj) & 1U) << 3);
    if (in == 0) continue;
    const Pauli2 out = gate.conjugate(static_cast<std::uint8_t>(in));
    const BitVector::Word mi = BitVector::Word{1} << bi;
    const BitVector::Word mj = BitVector::Word{1} << bj;
    xs[wi] = (xs[wi] & ~mi) | ((out.bits & 1U) ? mi : 0);
    zs[wi] = (zs[wi] & ~mi) | ((out.bits & 2U) ? mi : 0);
    xs[wj] = (xs[wj] & ~mj) | ((out.bits & 4U) ? mj : 0);
    zs[wj] = (zs[wj] & ~mj) | ((out.bits & 8U) ? mj : 0);
    if (out.negative) g.phase ^= 2U;
  }
  debug_validate(state);
}

}  // namespace nmipt

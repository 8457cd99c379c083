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

#include "nmipt/pauli.hpp"

#include <bit>

namespace nmipt {

namespace {

void check_same_length(const PauliOperator& a, const PauliOperator& b) {
  if (a.num_sites() != b.num_sites()) {
    throw LengthMismatch("Pauli operators act on different numbers of sites: " +
                         std::to_string(a.num_sites()) + " vs " + std::to_string(b.num_sites()));
  }
}

// Exponent of i picked up by multiplying the letter strings (ignoring the
// stored phases), summed over all sites. Per site, XY=iZ, YZ=iX, ZX=iY count
// +1 and the reversed orders count -1.
int product_phase_exponent(const PauliOperator& a, const PauliOperator& b) {
  auto ax = a.x.words();
  auto az = a.z.words();
  auto bx = b.x.words();
  auto bz = b.z.words();
  int total = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    const auto xa = ax[w], za = az[w], xb = bx[w], zb = bz[w];
    const auto a_x = xa & ~za, a_y = xa & za, a_z = ~xa & za;
    const auto b_x = xb & ~zb, b_y = xb & zb, b_z = ~xb & zb;
    const auto pos = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
    const auto neg = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
    total += std::popcount(pos) - std::popcount(neg);
  }
  return total;
}

}  // namespace

PauliOperator PauliOperator::single(std::size_t num_sites, std::size_t site, char letter,
                                    bool negative) {
  PauliOperator p(num_sites);
  if (site >= num_sites) throw std::out_of_range("site index out of range");
  switch (letter) {
    case 'X': p.x.set(site, true); break;
    case 'Y': p.x.set(site, true); p.z.set(site, true); break;
    case 'Z': p.z.set(site, true); break;
    case 'I': break;
    default: throw std::invalid_argument(std::string("unknown Pauli letter ") + letter);
  }
  p.phase = negative ? 2 : 0;
  return p;
}

PauliOperator PauliOperator::parse(std::string_view text) {
  std::uint8_t phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = static_cast<std::uint8_t>((phase + 1) & 3U);
    ++pos;
  }
  PauliOperator p(text.size() - pos);
  for (std::size_t j = 0; pos + j < text.size(); ++j) {
    const char c = text[pos + j];
    switch (c) {
      case 'X': p.x.set(j, true); break;
      case 'Y': p.x.set(j, true); p.z.set(j, true); break;
      case 'Z': p.z.set(j, true); break;
      case 'I':
      case '_': break;
      default: throw std::invalid_argument("bad character in Pauli string: " + std::string(text));
    }
  }
  p.phase = phase;
  return p;
}

char PauliOperator::letter(std::size_t site) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[(x.get(site) ? 1 : 0) | (z.get(site) ? 2 : 0)];
}

std::size_t PauliOperator::weight() const {
  std::size_t n = 0;
  auto xs = x.words();
  auto zs = z.words();
  for (std::size_t w = 0; w < xs.size(); ++w) n += std::popcount(xs[w] | zs[w]);
  return n;
}

std::string PauliOperator::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase & 3U];
  for (std::size_t j = 0; j < num_sites(); ++j) {
    const char c = letter(j);
    out.push_back(c == 'I' ? '_' : c);
  }
  return out;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  check_same_length(a, b);
  auto ax = a.x.words();
  auto az = a.z.words();
  auto bx = b.x.words();
  auto bz = b.z.words();
  BitVector::Word acc = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  return (std::popcount(acc) & 1) == 0;
}

void right_multiply_into(PauliOperator& target, const PauliOperator& source) {
  check_same_length(target, source);
  const int exponent = product_phase_exponent(target, source);
  target.phase = static_cast<std::uint8_t>((target.phase + source.phase + exponent) & 3);
  target.x ^= source.x;
  target.z ^= source.z;
}

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator out = a;
  right_multiply_into(out, b);
  return out;
}

}  // namespace nmipt

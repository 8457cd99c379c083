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

#include "nmipt/statmech.hpp"

#include <charconv>
#include <set>

namespace nmipt {

HoneycombPatch HoneycombPatch::make(std::size_t width, std::size_t depth, std::size_t region_size,
                                    Attachment attachment) {
  HoneycombPatch patch;
  patch.width = width;
  patch.depth = depth;
  patch.attachment = attachment;
  if (width < 1 || depth < 2) throw InconsistentPatch("patch needs width >= 1 and depth >= 2");
  if (region_size > width) throw InconsistentPatch("region A is wider than the top row");
  for (std::size_t r = 0; r + 1 < depth; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t lower = r * width + c;
      if (patch.zigzag_between(r)) {
        patch.zigzag_edges.emplace_back(lower, lower + width);
        if (c + 1 < width) patch.zigzag_edges.emplace_back(lower, lower + width + 1);
      } else {
        patch.vertical_edges.emplace_back(lower, lower + width);
      }
    }
  }
  for (std::size_t c = 0; c < width; ++c) {
    patch.bottom_boundary.push_back(c);
    patch.top_boundary.push_back((depth - 1) * width + c);
  }
  for (std::size_t c = width - region_size; c < width; ++c) patch.region_a.push_back((depth - 1) * width + c);
  patch.validate();
  return patch;
}

bool HoneycombPatch::zigzag_between(std::size_t row) const {
  const bool even = row % 2 == 0;
  return attachment == Attachment::kVertical ? !even : even;
}

void HoneycombPatch::validate() const {
  const std::size_t n = num_sites();
  if (width < 1 || depth < 2) throw InconsistentPatch("patch needs width >= 1 and depth >= 2");
  std::vector<int> degree(n, 0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  auto check_edges = [&](const auto& edges) {
    for (const auto& [a, b] : edges) {
      if (a >= n || b >= n || a == b) throw InconsistentPatch("edge endpoint out of range");
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw InconsistentPatch("duplicate edge");
      ++degree[a];
      ++degree[b];
    }
  };
  check_edges(vertical_edges);
  check_edges(zigzag_edges);
  for (int deg : degree) {
    if (deg > 3) throw InconsistentPatch("site degree exceeds 3");
  }
  std::set<std::size_t> bottom(bottom_boundary.begin(), bottom_boundary.end());
  std::set<std::size_t> top(top_boundary.begin(), top_boundary.end());
  for (std::size_t s : top) {
    if (s >= n) throw InconsistentPatch("boundary site out of range");
    if (bottom.count(s)) throw InconsistentPatch("bottom and top boundaries overlap");
  }
  for (std::size_t s : bottom) {
    if (s >= n) throw InconsistentPatch("boundary site out of range");
  }
  for (std::size_t s : region_a) {
    if (!top.count(s)) throw InconsistentPatch("region A must lie on the top boundary");
  }
}

mpq_class rational_from_decimal(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot convert a non-finite value to a rational");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e_pos = text.find('e');
  std::string mantissa = text.substr(0, e_pos);
  int exponent = std::stoi(text.substr(e_pos + 1));
  bool negative = false;
  if (!mantissa.empty() && mantissa[0] == '-') {
    negative = true;
    mantissa.erase(0, 1);
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    exponent -= static_cast<int>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  mpq_class out(mpz_class(mantissa, 10));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
  if (exponent >= 0) {
    out *= scale;
  } else {
    out /= scale;
  }
  out.canonicalize();
  return negative ? mpq_class(-out) : out;
}

}  // namespace nmipt

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

#include "nmipt/stabilizer_state.hpp"

#include <string>
#include <utility>

#include "nmipt/gf2.hpp"

namespace nmipt {

namespace {

void require_sites(std::size_t num_sites) {
  if (num_sites == 0) throw std::invalid_argument("a stabilizer state needs at least one site");
}

BitVector symplectic_row(const PauliOperator& p) {
  const std::size_t n = p.num_sites();
  BitVector row(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (p.x.get(j)) row.set(j, true);
    if (p.z.get(j)) row.set(n + j, true);
  }
  return row;
}

bool test_bit(const PauliOperator& p, std::size_t column, std::size_t n) {
  return column < n ? p.x.get(column) : p.z.get(column - n);
}

}  // namespace

StabilizerState StabilizerState::product_zero(std::size_t num_sites) {
  require_sites(num_sites);
  StabilizerState s(num_sites);
  s.generators_.reserve(num_sites);
  for (std::size_t j = 0; j < num_sites; ++j) {
    s.generators_.push_back(PauliOperator::single(num_sites, j, 'Z'));
  }
  return s;
}

StabilizerState StabilizerState::maximally_mixed(std::size_t num_sites) {
  require_sites(num_sites);
  StabilizerState s(num_sites);
  s.generators_.reserve(num_sites);
  return s;
}

StabilizerState StabilizerState::from_generators(std::size_t num_sites,
                                                 std::vector<PauliOperator> generators) {
  require_sites(num_sites);
  StabilizerState s(num_sites);
  s.generators_ = std::move(generators);
  s.validate();
  return s;
}

void StabilizerState::insert_generator(PauliOperator g) {
  if (g.num_sites() != num_sites_) throw LengthMismatch("generator length differs from state");
  if (!g.is_hermitian()) throw ContractViolation("generator is not Hermitian");
  if (rank() == num_sites_) throw ContractViolation("state is pure; no independent generator exists");
  for (const auto& h : generators_) {
    if (!commutes(g, h)) throw ContractViolation("generator anticommutes with " + h.str());
  }
  if (spans(g)) throw ContractViolation("generator " + g.str() + " is dependent");
  generators_.push_back(std::move(g));
  debug_validate(*this);
}

std::optional<std::uint8_t> StabilizerState::group_sign_of(const PauliOperator& p) const {
  if (p.num_sites() != num_sites_) throw LengthMismatch("operator length differs from state");
  const std::size_t n = num_sites_;
  std::vector<PauliOperator> rows = generators_;
  PauliOperator acc = PauliOperator::identity(n);
  std::size_t next = 0;
  for (std::size_t column = 0; column < 2 * n; ++column) {
    std::size_t pivot = next;
    while (pivot < rows.size() && !test_bit(rows[pivot], column, n)) ++pivot;
    if (pivot == rows.size()) {
      if (test_bit(p, column, n) != test_bit(acc, column, n)) return std::nullopt;
      continue;
    }
    std::swap(rows[next], rows[pivot]);
    for (std::size_t r = next + 1; r < rows.size(); ++r) {
      if (test_bit(rows[r], column, n)) right_multiply_into(rows[r], rows[next]);
    }
    if (test_bit(p, column, n) != test_bit(acc, column, n)) right_multiply_into(acc, rows[next]);
    ++next;
  }
  return acc.phase;
}

void StabilizerState::validate() const {
  if (generators_.size() > num_sites_) throw ContractViolation("more generators than sites");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.num_sites() != num_sites_) throw ContractViolation("generator length mismatch");
    if (!g.is_hermitian()) throw ContractViolation("generator " + std::to_string(i) + " not Hermitian");
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (!commutes(g, generators_[j])) {
        throw ContractViolation("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                " anticommute");
      }
    }
  }
  std::vector<BitVector> rows;
  rows.reserve(generators_.size());
  for (const auto& g : generators_) rows.push_back(symplectic_row(g));
  if (rank_gf2(std::move(rows)) != generators_.size()) {
    throw ContractViolation("generators are not independent");
  }
}

}  // namespace nmipt

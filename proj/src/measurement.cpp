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

#include "nmipt/measurement.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nmipt {

namespace {

void check_site(const StabilizerState& state, std::size_t site) {
  if (site >= state.num_sites()) {
    throw std::out_of_range("measurement site " + std::to_string(site) + " outside chain of " +
                            std::to_string(state.num_sites()));
  }
}

// Indices of generators anticommuting with Z_site, i.e. with an X or Y there.
std::vector<std::size_t> anticommuting_with_z(const StabilizerState& state, std::size_t site) {
  std::vector<std::size_t> out;
  const auto& gens = state.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].x.get(site)) out.push_back(i);
  }
  return out;
}

// Multiplies the first listed generator into the rest so that only it
// anticommutes with Z_site. Returns its index.
std::size_t isolate_anticommuting(StabilizerState& state, const std::vector<std::size_t>& hits) {
  auto& gens = state.mutable_generators();
  const std::size_t pivot = hits.front();
  for (std::size_t h = 1; h < hits.size(); ++h) right_multiply_into(gens[hits[h]], gens[pivot]);
  return pivot;
}

}  // namespace

MeasurementOutcome measure_monitored(StabilizerState& state, std::size_t site,
                                     std::mt19937_64& rng) {
  check_site(state, site);
  MeasurementOutcome outcome{site, MeasurementKind::kMonitored, std::nullopt, 0};
  const auto hits = anticommuting_with_z(state, site);
  if (!hits.empty()) {
    const std::size_t pivot = isolate_anticommuting(state, hits);
    const int bit = static_cast<int>(rng() >> 63);
    state.mutable_generators()[pivot] = PauliOperator::single(state.num_sites(), site, 'Z', bit == 1);
    outcome.value = bit;
    outcome.random = true;
    debug_validate(state);
    return outcome;
  }
  const PauliOperator z = PauliOperator::single(state.num_sites(), site, 'Z');
  if (const auto sign = state.group_sign_of(z)) {
    outcome.value = *sign == 2 ? 1 : 0;
    return outcome;
  }
  const int bit = static_cast<int>(rng() >> 63);
  state.mutable_generators().push_back(PauliOperator::single(state.num_sites(), site, 'Z', bit == 1));
  outcome.value = bit;
  outcome.rank_delta = 1;
  outcome.random = true;
  debug_validate(state);
  return outcome;
}

MeasurementOutcome measure_unmonitored(StabilizerState& state, std::size_t site) {
  check_site(state, site);
  MeasurementOutcome outcome{site, MeasurementKind::kUnmonitored, std::nullopt, 0};
  const auto hits = anticommuting_with_z(state, site);
  if (hits.empty()) return outcome;
  const std::size_t pivot = isolate_anticommuting(state, hits);
  auto& gens = state.mutable_generators();
  std::swap(gens[pivot], gens.back());
  gens.pop_back();
  outcome.rank_delta = -1;
  debug_validate(state);
  return outcome;
}

}  // namespace nmipt

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
#include <random>

#include "nmipt/stabilizer_state.hpp"

namespace nmipt {

enum class MeasurementKind { kMonitored, kUnmonitored };

struct MeasurementOutcome {
  std::size_t site = 0;
  MeasurementKind kind = MeasurementKind::kMonitored;
  std::optional<int> value;  // 0 for +Z, 1 for -Z; empty when unmonitored
  int rank_delta = 0;        // change of the generator count k
  bool random = false;       // true when the outcome consumed a random draw
};

/// Projective Z measurement with the outcome sampled from the Born rule and
/// the state conditioned on it.
MeasurementOutcome measure_monitored(StabilizerState& state, std::size_t site,
                                     std::mt19937_64& rng);

/// Z-basis dephasing, rho -> P0 rho P0 + P1 rho P1. Consumes no randomness.
MeasurementOutcome measure_unmonitored(StabilizerState& state, std::size_t site);

}  // namespace nmipt

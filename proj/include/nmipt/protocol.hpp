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
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmipt/entanglement.hpp"
#include "nmipt/measurement.hpp"
#include "nmipt/stabilizer_state.hpp"

namespace nmipt {

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class InitialState { kProductZero, kMaximallyMixed };

std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& name);

struct ProtocolParams {
  std::size_t num_sites = 0;  // L, even
  double p = 0.0;             // monitored measurement rate
  double q = 0.0;             // unmonitored measurement rate
  std::size_t t_total = 0;
  std::size_t t_burn_in = 0;
  std::size_t sample_stride = 1;
  InitialState initial_state = InitialState::kProductZero;
  std::uint64_t seed = 0;

  /// t_total = 8L, t_burn_in = 4L, sample_stride = L/2, product start.
  static ProtocolParams defaults(std::size_t num_sites, double p, double q, std::uint64_t seed);

  /// Throws InvalidParams naming the offending field.
  void validate() const;
};

/// SplitMix64 finaliser applied to (base, index); used to derive independent
/// stream seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Independent random streams of one trajectory. Gates, per-site measurement
/// decisions and measurement outcomes draw from separate engines so that the
/// gate sequence and decision uniforms do not depend on p, q or on outcomes.
struct TrajectoryStreams {
  std::mt19937_64 gates;
  std::mt19937_64 decisions;
  std::mt19937_64 outcomes;

  explicit TrajectoryStreams(std::uint64_t seed);
};

struct StepLog {
  std::size_t unmonitored_applied = 0;
  std::vector<MeasurementOutcome> monitored;
  std::size_t random_outcomes = 0;
};

/// One time step: gates on (2r, 2r+1), gates on (2r-1, 2r) (open chain), an
/// unmonitored layer with rate q and a monitored layer with rate p. Each
/// layer draws exactly one decision uniform per site.
StepLog step(StabilizerState& state, double p, double q, TrajectoryStreams& streams);

struct TrajectorySample {
  std::size_t t = 0;
  EntropyReport report;
};

struct TrajectoryRecord {
  ProtocolParams params;
  std::vector<TrajectorySample> samples;
  std::size_t final_rank = 0;
};

/// Runs the protocol, sampling the half-chain report at t = t_burn_in,
/// t_burn_in + stride, ... up to t_total.
TrajectoryRecord run_trajectory(const ProtocolParams& params);

}  // namespace nmipt

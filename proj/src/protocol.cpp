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

#include "nmipt/protocol.hpp"

#include "nmipt/clifford.hpp"

namespace nmipt {

std::string to_string(InitialState s) {
  return s == InitialState::kProductZero ? "product_zero" : "maximally_mixed";
}

InitialState initial_state_from_string(const std::string& name) {
  if (name == "product_zero") return InitialState::kProductZero;
  if (name == "maximally_mixed") return InitialState::kMaximallyMixed;
  throw InvalidParams("initial_state: expected product_zero or maximally_mixed, got '" + name + "'");
}

ProtocolParams ProtocolParams::defaults(std::size_t num_sites, double p, double q, std::uint64_t seed) {
  ProtocolParams params;
  params.num_sites = num_sites;
  params.p = p;
  params.q = q;
  params.t_total = 8 * num_sites;
  params.t_burn_in = 4 * num_sites;
  params.sample_stride = num_sites / 2 > 0 ? num_sites / 2 : 1;
  params.seed = seed;
  return params;
}

void ProtocolParams::validate() const {
  if (num_sites < 2 || num_sites % 2 != 0) {
    throw InvalidParams("L: must be even and >= 2, got " + std::to_string(num_sites));
  }
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParams("p: must lie in [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidParams("q: must lie in [0, 1]");
  if (t_burn_in >= t_total) throw InvalidParams("t_burn_in: must be smaller than t_total");
  if (sample_stride == 0) throw InvalidParams("sample_stride: must be positive");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrajectoryStreams::TrajectoryStreams(std::uint64_t seed)
    : gates(derive_seed(seed, 0)), decisions(derive_seed(seed, 1)), outcomes(derive_seed(seed, 2)) {}

StepLog step(StabilizerState& state, double p, double q, TrajectoryStreams& streams) {
  const std::size_t n = state.num_sites();
  StepLog log;
  for (std::size_t i = 0; i + 1 < n; i += 2) apply(sample_uniform(streams.gates), state, i, i + 1);
  for (std::size_t i = 1; i + 1 < n; i += 2) apply(sample_uniform(streams.gates), state, i, i + 1);
  for (std::size_t site = 0; site < n; ++site) {
    if (uniform01(streams.decisions) < q) {
      measure_unmonitored(state, site);
      ++log.unmonitored_applied;
    }
  }
  for (std::size_t site = 0; site < n; ++site) {
    if (uniform01(streams.decisions) < p) {
      auto outcome = measure_monitored(state, site, streams.outcomes);
      if (outcome.random) ++log.random_outcomes;
      log.monitored.push_back(outcome);
    }
  }
  return log;
}

TrajectoryRecord run_trajectory(const ProtocolParams& params) {
  params.validate();
  StabilizerState state = params.initial_state == InitialState::kProductZero
                              ? StabilizerState::product_zero(params.num_sites)
                              : StabilizerState::maximally_mixed(params.num_sites);
  TrajectoryStreams streams(params.seed);
  TrajectoryRecord record;
  record.params = params;
  for (std::size_t t = 1; t <= params.t_total; ++t) {
    step(state, params.p, params.q, streams);
    if (t >= params.t_burn_in && (t - params.t_burn_in) % params.sample_stride == 0) {
      record.samples.push_back({t, half_chain_report(state)});
    }
  }
  record.final_rank = state.rank();
  return record;
}

}  // namespace nmipt

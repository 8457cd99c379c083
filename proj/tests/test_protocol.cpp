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

#include <gtest/gtest.h>

#include <random>

#include "nmipt/entanglement.hpp"
#include "nmipt/protocol.hpp"

namespace nmipt {
namespace {

std::size_t total_x_support(const StabilizerState& s) {
  std::size_t n = 0;
  for (const auto& g : s.generators()) n += g.x.popcount();
  return n;
}

TEST(Params, DefaultsAndValidation) {
  const auto d = ProtocolParams::defaults(16, 0.1, 0.0, 1);
  EXPECT_EQ(d.t_total, 128U);
  EXPECT_EQ(d.t_burn_in, 64U);
  EXPECT_EQ(d.sample_stride, 8U);
  EXPECT_EQ(d.initial_state, InitialState::kProductZero);
  EXPECT_NO_THROW(d.validate());

  auto bad = d;
  bad.num_sites = 7;
  EXPECT_THROW(bad.validate(), InvalidParams);
  bad = d;
  bad.p = 1.5;
  EXPECT_THROW(bad.validate(), InvalidParams);
  bad = d;
  bad.q = -0.1;
  EXPECT_THROW(bad.validate(), InvalidParams);
  bad = d;
  bad.t_burn_in = bad.t_total;
  EXPECT_THROW(bad.validate(), InvalidParams);
  bad = d;
  bad.sample_stride = 0;
  EXPECT_THROW(bad.validate(), InvalidParams);
  EXPECT_THROW(initial_state_from_string("thermal"), InvalidParams);
  EXPECT_EQ(initial_state_from_string(to_string(InitialState::kMaximallyMixed)), InitialState::kMaximallyMixed);
}

TEST(Step, NoMeasurementsKeepsRank) {
  TrajectoryStreams streams(4);
  auto s = StabilizerState::product_zero(10);
  for (int t = 0; t < 30; ++t) {
    const auto log = step(s, 0.0, 0.0, streams);
    EXPECT_EQ(log.unmonitored_applied, 0U);
    EXPECT_TRUE(log.monitored.empty());
    EXPECT_EQ(s.rank(), 10U);
  }
  s.validate();
}

TEST(Step, FullDephasingRemovesOffDiagonalSupport) {
  TrajectoryStreams streams(8);
  auto s = StabilizerState::product_zero(12);
  for (int t = 0; t < 5; ++t) step(s, 0.0, 0.0, streams);
  const auto log = step(s, 0.0, 1.0, streams);
  EXPECT_EQ(log.unmonitored_applied, 12U);
  EXPECT_EQ(total_x_support(s), 0U);
  for (int t = 0; t < 20 && s.rank() > 0; ++t) step(s, 0.0, 1.0, streams);
  EXPECT_EQ(s.rank(), 0U);
}

TEST(Step, FullProjectionGivesProductState) {
  TrajectoryStreams streams(15);
  auto s = StabilizerState::maximally_mixed(8);
  for (int t = 0; t < 3; ++t) {
    step(s, 1.0, 0.0, streams);
    EXPECT_EQ(s.rank(), 8U);
    for (std::size_t cut = 1; cut < 8; ++cut) EXPECT_EQ(entropy_of_region(s, Region::interval(8, 0, cut)), 0);
  }
}

// Decision draws are one per site per layer; outcome draws one per random
// outcome. Replaying the counts on fresh engines must land on the same state.
TEST(Step, RandomnessAccounting) {
  constexpr std::uint64_t kSeed = 99;
  TrajectoryStreams streams(kSeed);
  auto s = StabilizerState::maximally_mixed(10);
  std::size_t steps = 0, random_outcomes = 0;
  for (int t = 0; t < 25; ++t) {
    const auto log = step(s, 0.3, 0.2, streams);
    ++steps;
    random_outcomes += log.random_outcomes;
    std::size_t counted = 0;
    for (const auto& m : log.monitored) counted += m.random ? 1 : 0;
    EXPECT_EQ(counted, log.random_outcomes);
  }
  std::mt19937_64 decisions(derive_seed(kSeed, 1)), outcomes(derive_seed(kSeed, 2));
  decisions.discard(2 * 10 * steps);
  outcomes.discard(random_outcomes);
  EXPECT_EQ(decisions(), streams.decisions());
  EXPECT_EQ(outcomes(), streams.outcomes());
}

TEST(Step, GateStreamIndependentOfRates) {
  TrajectoryStreams a(5), b(5);
  auto sa = StabilizerState::product_zero(8);
  auto sb = StabilizerState::product_zero(8);
  for (int t = 0; t < 10; ++t) {
    step(sa, 0.1, 0.0, a);
    step(sb, 0.7, 0.4, b);
  }
  EXPECT_EQ(a.gates(), b.gates());
  EXPECT_EQ(a.decisions(), b.decisions());
}

TEST(Trajectory, DeterministicGivenSeed) {
  auto params = ProtocolParams::defaults(16, 0.2, 0.05, 1234);
  const auto r1 = run_trajectory(params);
  const auto r2 = run_trajectory(params);
  ASSERT_EQ(r1.samples.size(), r2.samples.size());
  for (std::size_t i = 0; i < r1.samples.size(); ++i) {
    EXPECT_EQ(r1.samples[i].t, r2.samples[i].t);
    EXPECT_EQ(r1.samples[i].report, r2.samples[i].report);
  }
  EXPECT_EQ(r1.final_rank, r2.final_rank);
  params.seed = 1235;
  const auto r3 = run_trajectory(params);
  bool differs = r3.final_rank != r1.final_rank;
  for (std::size_t i = 0; i < r1.samples.size(); ++i) differs = differs || !(r1.samples[i].report == r3.samples[i].report);
  EXPECT_TRUE(differs);
}

TEST(Trajectory, SampleTimes) {
  auto params = ProtocolParams::defaults(8, 0.2, 0.0, 7);
  const auto r = run_trajectory(params);
  ASSERT_EQ(r.samples.size(), 9U);  // t = 32, 36, ..., 64
  EXPECT_EQ(r.samples.front().t, 32U);
  EXPECT_EQ(r.samples.back().t, 64U);
  for (std::size_t i = 1; i < r.samples.size(); ++i) EXPECT_GT(r.samples[i].t, r.samples[i - 1].t);
}

TEST(Trajectory, PureSectorIdentityHoldsPerSample) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double p : {0.0, 0.1, 0.3, 0.6}) {
      const auto r = run_trajectory(ProtocolParams::defaults(16, p, 0.0, seed));
      EXPECT_EQ(r.final_rank, 16U);
      for (const auto& s : r.samples) {
        ASSERT_EQ(s.report.s_ab, 0);
        ASSERT_EQ(s.report.i_ab, 2 * s.report.s_a);
      }
    }
  }
}

// Page-like saturation: without measurements S_A sits close to L/2 - 1.
TEST(Trajectory, UnitaryEntropySaturates) {
  auto params = ProtocolParams::defaults(16, 0.0, 0.0, 3);
  params.t_burn_in = 0;
  params.sample_stride = 1;
  const auto r = run_trajectory(params);
  EXPECT_EQ(r.samples.front().t, 1U);
  EXPECT_LE(r.samples.front().report.s_a, 2);
  double late = 0.0;
  int n = 0;
  for (const auto& s : r.samples) {
    EXPECT_EQ(s.report.s_ab, 0);
    if (s.t > 64) {
      late += s.report.s_a;
      ++n;
    }
  }
  late /= n;
  EXPECT_GE(late, 6.5);
  EXPECT_LE(late, 8.0);
}

TEST(Trajectory, DephasingReachesInfiniteTemperature) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto params = ProtocolParams::defaults(16, 0.0, 0.2, seed);
    params.t_total = 64;
    params.t_burn_in = 32;
    const auto r = run_trajectory(params);
    EXPECT_EQ(r.final_rank, 0U);
    EXPECT_EQ(r.samples.back().report.s_ab, 16);
  }
}

}  // namespace
}  // namespace nmipt

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

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "nmipt/clifford.hpp"
#include "nmipt/dense_oracle.hpp"
#include "nmipt/entanglement.hpp"
#include "test_support.hpp"

namespace nmipt {
namespace {

TEST(Clifford, EnumerationHas720DistinctClasses) {
  const auto classes = enumerate_symplectic_classes();
  EXPECT_EQ(classes.size(), 720U);
  std::set<std::uint16_t> keys;
  for (const auto& g : classes) keys.insert(g.symplectic_key());
  EXPECT_EQ(keys.size(), 720U);
  EXPECT_TRUE(keys.count(CliffordGate::identity().symplectic_key()));
}

TEST(Clifford, ClassesClosedUnderComposition) {
  const auto classes = enumerate_symplectic_classes();
  std::set<std::uint16_t> keys;
  for (const auto& g : classes) keys.insert(g.symplectic_key());
  for (std::size_t a = 0; a < classes.size(); a += 7) {
    for (const auto& b : classes) {
      const auto c = compose(classes[a], b);
      ASSERT_TRUE(c.preserves_symplectic_form());
      ASSERT_TRUE(keys.count(c.symplectic_key()));
    }
  }
}

TEST(Clifford, SamplingIsUniformOverSymplecticClasses) {
  std::mt19937_64 rng(123);
  std::map<std::uint16_t, long> counts;
  for (const auto& g : enumerate_symplectic_classes()) counts[g.symplectic_key()] = 0;
  constexpr long kSamples = 1'000'000;
  for (long s = 0; s < kSamples; ++s) {
    const auto gate = sample_uniform(rng);
    auto it = counts.find(gate.symplectic_key());
    ASSERT_NE(it, counts.end());
    ++it->second;
  }
  const double expected = static_cast<double>(kSamples) / 720.0;
  double chi2 = 0.0;
  for (const auto& [key, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
  const double dof = 719.0;
  EXPECT_LT(std::abs(chi2 - dof), 3.0 * std::sqrt(2.0 * dof)) << "chi2=" << chi2;
}

TEST(Clifford, SignBitsMarginallyUniform) {
  std::mt19937_64 rng(321);
  constexpr int kSamples = 100'000;
  int counts[4] = {0, 0, 0, 0};
  for (int s = 0; s < kSamples; ++s) {
    const auto gate = sample_uniform(rng);
    ASSERT_TRUE(gate.preserves_symplectic_form());
    for (int g = 0; g < 4; ++g) counts[g] += gate.images()[g].negative ? 1 : 0;
  }
  const double sigma = std::sqrt(kSamples * 0.25);
  for (int g = 0; g < 4; ++g) EXPECT_LT(std::abs(counts[g] - kSamples / 2.0), 3 * sigma);
}

TEST(Clifford, SamplingDeterministicGivenSeed) {
  std::mt19937_64 a(99), b(99);
  for (int s = 0; s < 1000; ++s) ASSERT_EQ(sample_uniform(a), sample_uniform(b));
}

TEST(Clifford, IdentityLeavesStateUnchanged) {
  std::mt19937_64 rng(1);
  auto s = testing::random_stabilizer_state(5, rng);
  const auto before = s;
  apply(CliffordGate::identity(), s, 1, 3);
  EXPECT_EQ(s, before);
}

TEST(Clifford, CnotMapsTargetZToZZ) {
  auto s = StabilizerState::product_zero(2);
  apply(CliffordGate::cnot(), s, 0, 1);
  EXPECT_EQ(s.generators()[0], PauliOperator::parse("+Z_"));
  EXPECT_EQ(s.generators()[1], PauliOperator::parse("+ZZ"));
}

TEST(Clifford, ApplyRejectsBadSites) {
  auto s = StabilizerState::product_zero(3);
  EXPECT_THROW(apply(CliffordGate::cnot(), s, 0, 3), std::out_of_range);
  EXPECT_THROW(apply(CliffordGate::cnot(), s, 1, 1), std::invalid_argument);
}

// Every Pauli expectation of the tableau state must match U rho U^dagger.
TEST(Clifford, RandomGateMatchesDenseConjugation) {
  std::mt19937_64 rng(77);
  constexpr std::size_t n = 4;
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing::random_stabilizer_state(n, rng);
    auto rho = dense::DenseState::from_stabilizer(s);
    const auto gate = sample_uniform(rng);
    const std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    while (j == i) j = rng() % n;
    apply(gate, s, i, j);
    s.validate();
    dense::apply_gate_dense(rho, dense::unitary_from_gate(gate), i, j);
    const auto from_tableau = dense::DenseState::from_stabilizer(s);
    for (unsigned code = 1; code < 256; ++code) {
      PauliOperator p(n);
      for (std::size_t k = 0; k < n; ++k) {
        p.x.set(k, (code >> (2 * k)) & 1U);
        p.z.set(k, (code >> (2 * k + 1)) & 1U);
      }
      const auto want = dense::expectation(rho, p);
      const auto got = dense::expectation(from_tableau, p);
      ASSERT_LT(std::abs(want - got), 1e-9) << p.str();
    }
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      const auto region = Region::from_mask(n, mask);
      ASSERT_NEAR(entropy_of_region(s, region), dense::von_neumann_entropy(rho, region), 1e-9);
    }
  }
}

TEST(Clifford, CompositionMatchesSequentialApplication) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = testing::random_stabilizer_state(4, rng);
    auto t = s;
    const auto g1 = sample_uniform(rng);
    const auto g2 = sample_uniform(rng);
    apply(g1, s, 2, 0);
    apply(g2, s, 2, 0);
    apply(compose(g2, g1), t, 2, 0);
    ASSERT_EQ(s, t);
  }
}

}  // namespace
}  // namespace nmipt

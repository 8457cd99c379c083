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

#include "nmipt/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "nmipt/clifford.hpp"
#include "nmipt/dense_oracle.hpp"
#include "nmipt/entanglement.hpp"
#include "nmipt/measurement.hpp"
#include "nmipt/protocol.hpp"

namespace nmipt {

OracleReport run_oracle_check(const OracleSettings& settings) {
  if (settings.min_sites < 1 || settings.max_sites < settings.min_sites ||
      settings.max_sites > dense::DenseState::kMaxSites) {
    throw std::invalid_argument("oracle sites must satisfy 1 <= min <= max <= " +
                                std::to_string(dense::DenseState::kMaxSites));
  }
  OracleReport report;
  std::mt19937_64 setup(derive_seed(settings.seed, 0xC0FFEE));
  std::uniform_int_distribution<std::size_t> size_dist(settings.min_sites, settings.max_sites);
  for (std::size_t circuit = 0; circuit < settings.circuits; ++circuit) {
    const std::size_t n = size_dist(setup);
    const double p = settings.p >= 0.0 ? settings.p : uniform01(setup);
    const double q = settings.q >= 0.0 ? settings.q : uniform01(setup);
    const bool mixed_start = (setup() & 1U) != 0;
    auto stab = mixed_start ? StabilizerState::maximally_mixed(n) : StabilizerState::product_zero(n);
    auto rho = mixed_start ? dense::DenseState::maximally_mixed(n) : dense::DenseState::product_zero(n);
    TrajectoryStreams streams(derive_seed(settings.seed, circuit + 1));

    for (std::size_t t = 0; t < settings.depth_factor * n; ++t) {
      auto gate_at = [&](std::size_t i) {
        const auto gate = sample_uniform(streams.gates);
        apply(gate, stab, i, i + 1);
        dense::apply_gate_dense(rho, dense::unitary_from_gate(gate), i, i + 1);
      };
      for (std::size_t i = 0; i + 1 < n; i += 2) gate_at(i);
      for (std::size_t i = 1; i + 1 < n; i += 2) gate_at(i);
      for (std::size_t site = 0; site < n; ++site) {
        if (uniform01(streams.decisions) < q) {
          measure_unmonitored(stab, site);
          dense::channel_unmonitored_dense(rho, site);
        }
      }
      for (std::size_t site = 0; site < n; ++site) {
        if (uniform01(streams.decisions) < p) {
          const auto out = measure_monitored(stab, site, streams.outcomes);
          const double prob = dense::project_dense(rho, site, *out.value);
          const double expected = out.random ? 0.5 : 1.0;
          report.max_probability_discrepancy = std::max(report.max_probability_discrepancy, std::abs(prob - expected));
        }
      }
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t e = b + 1; e <= n; ++e) {
          const auto region = Region::interval(n, b, e);
          const double diff =
              std::abs(static_cast<double>(entropy_of_region(stab, region)) - dense::von_neumann_entropy(rho, region));
          report.max_entropy_discrepancy = std::max(report.max_entropy_discrepancy, diff);
          ++report.comparisons;
        }
      }
    }
    report.max_state_discrepancy = std::max(report.max_state_discrepancy,
                                            (dense::DenseState::from_stabilizer(stab).rho - rho.rho).norm());
    ++report.circuits;
  }
  return report;
}

}  // namespace nmipt

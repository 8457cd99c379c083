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

namespace nmipt {

struct OracleSettings {
  std::size_t circuits = 200;
  std::size_t min_sites = 2;
  std::size_t max_sites = 5;   // at most dense::DenseState::kMaxSites
  std::size_t depth_factor = 4;  // depth = depth_factor * L
  std::uint64_t seed = 0;
  /// Draw (p, q) uniformly from [0,1]^2 when unset.
  double p = -1.0;
  double q = -1.0;
};

struct OracleReport {
  std::size_t circuits = 0;
  std::size_t comparisons = 0;
  double max_entropy_discrepancy = 0.0;
  double max_probability_discrepancy = 0.0;  // |Born probability - expected|
  double max_state_discrepancy = 0.0;        // Frobenius distance of density matrices

  bool passed(double tol = 1e-9) const {
    return max_entropy_discrepancy < tol && max_probability_discrepancy < tol && max_state_discrepancy < tol;
  }
};

/// Runs random brickwork circuits with both channels through the stabilizer
/// simulator and the dense density-matrix engine in lockstep, comparing the
/// entropy of every contiguous region after every step. L is even when the
/// protocol demands it; odd L are exercised too, with the same pairing rule.
OracleReport run_oracle_check(const OracleSettings& settings);

}  // namespace nmipt

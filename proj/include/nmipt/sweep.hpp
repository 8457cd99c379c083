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
#include <optional>
#include <vector>

#include "nmipt/protocol.hpp"

namespace nmipt {

struct SweepPoint {
  std::size_t num_sites = 0;
  double p = 0.0;
  double q = 0.0;

  auto operator<=>(const SweepPoint&) const = default;
};

/// Per-point run settings. Unset timing fields fall back to the protocol
/// defaults for the point's L.
struct SweepSettings {
  std::size_t realizations = 1;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
  std::optional<std::size_t> t_total;
  std::optional<std::size_t> t_burn_in;
  std::optional<std::size_t> sample_stride;
  InitialState initial_state = InitialState::kProductZero;
  /// When set, burn-in is at least ceil(c / q) at q > 0 and the sampling
  /// window keeps its length. Dephasing relaxes on a 1/q time scale.
  std::optional<double> relaxation_per_q;
};

/// Time-averaged observables of one trajectory.
struct TrajectoryMeans {
  double i_ab = 0.0;
  double s_a = 0.0;
  double s_ab = 0.0;
};

struct PointSummary {
  SweepPoint point;
  double i_ab_mean = 0.0;
  double i_ab_stderr = 0.0;
  double s_a_mean = 0.0;
  double s_a_stderr = 0.0;
  double s_ab_mean = 0.0;
  double s_ab_stderr = 0.0;
  std::size_t n_realizations = 0;
  /// Empty when the summary was read back from CSV.
  std::vector<TrajectoryMeans> trajectories;
};

struct SweepTable {
  std::vector<PointSummary> rows;  // sorted by (L, p, q)
  std::uint64_t master_seed = 0;
  std::uint64_t parameter_hash = 0;

  const PointSummary* find(const SweepPoint& point) const;
};

/// Seed of trajectory `index` at chain length L. Rates are deliberately not
/// mixed in: all (p, q) points share gate sequences and decision uniforms.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::size_t num_sites, std::size_t index);

ProtocolParams point_params(const SweepPoint& point, const SweepSettings& settings, std::size_t index);

/// Mean over post-burn-in samples of one trajectory.
TrajectoryMeans time_average(const TrajectoryRecord& record);

/// Mean and standard error of the trajectory means.
PointSummary summarize(const SweepPoint& point, std::vector<TrajectoryMeans> trajectories);

/// Runs `realizations` trajectories per grid point on a worker pool. The
/// result does not depend on grid order or thread count.
SweepTable run_sweep(std::vector<SweepPoint> grid, const SweepSettings& settings);

/// Stable hash of the grid and settings (not the thread count).
std::uint64_t sweep_parameter_hash(const std::vector<SweepPoint>& grid, const SweepSettings& settings);

}  // namespace nmipt

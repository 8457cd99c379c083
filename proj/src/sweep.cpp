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

#include "nmipt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace nmipt {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return derive_seed(h ^ v, 0x5eed); }

std::uint64_t bits_of(double v) { return std::bit_cast<std::uint64_t>(v); }

void mean_and_stderr(const std::vector<double>& xs, double& mean, double& stderr_out) {
  const double n = static_cast<double>(xs.size());
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) {
    stderr_out = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  stderr_out = std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

const PointSummary* SweepTable::find(const SweepPoint& point) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), point,
                             [](const PointSummary& row, const SweepPoint& pt) { return row.point < pt; });
  if (it == rows.end() || it->point != point) return nullptr;
  return &*it;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::size_t num_sites, std::size_t index) {
  return derive_seed(derive_seed(master_seed, num_sites), index);
}

ProtocolParams point_params(const SweepPoint& point, const SweepSettings& settings, std::size_t index) {
  ProtocolParams params = ProtocolParams::defaults(point.num_sites, point.p, point.q,
                                                   trajectory_seed(settings.master_seed, point.num_sites, index));
  if (settings.t_total) params.t_total = *settings.t_total;
  if (settings.t_burn_in) params.t_burn_in = *settings.t_burn_in;
  if (settings.sample_stride) params.sample_stride = *settings.sample_stride;
  params.initial_state = settings.initial_state;
  if (settings.relaxation_per_q && point.q > 0.0) {
    const double c = *settings.relaxation_per_q;
    if (!(c >= 0.0)) throw InvalidParams("relaxation_per_q: must be non-negative");
    const auto burn = static_cast<std::size_t>(std::ceil(c / point.q));
    if (burn > params.t_burn_in) {
      const std::size_t window = params.t_total > params.t_burn_in ? params.t_total - params.t_burn_in : 0;
      params.t_burn_in = burn;
      params.t_total = burn + window;
    }
  }
  return params;
}

TrajectoryMeans time_average(const TrajectoryRecord& record) {
  TrajectoryMeans m;
  if (record.samples.empty()) return m;
  for (const auto& s : record.samples) {
    m.i_ab += s.report.i_ab;
    m.s_a += s.report.s_a;
    m.s_ab += s.report.s_ab;
  }
  const double n = static_cast<double>(record.samples.size());
  m.i_ab /= n;
  m.s_a /= n;
  m.s_ab /= n;
  return m;
}

PointSummary summarize(const SweepPoint& point, std::vector<TrajectoryMeans> trajectories) {
  PointSummary out;
  out.point = point;
  out.n_realizations = trajectories.size();
  std::vector<double> i_ab, s_a, s_ab;
  for (const auto& t : trajectories) {
    i_ab.push_back(t.i_ab);
    s_a.push_back(t.s_a);
    s_ab.push_back(t.s_ab);
  }
  mean_and_stderr(i_ab, out.i_ab_mean, out.i_ab_stderr);
  mean_and_stderr(s_a, out.s_a_mean, out.s_a_stderr);
  mean_and_stderr(s_ab, out.s_ab_mean, out.s_ab_stderr);
  out.trajectories = std::move(trajectories);
  return out;
}

std::uint64_t sweep_parameter_hash(const std::vector<SweepPoint>& grid, const SweepSettings& settings) {
  std::vector<SweepPoint> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 0x6e6d697074ULL;
  for (const auto& pt : sorted) {
    h = mix(h, pt.num_sites);
    h = mix(h, bits_of(pt.p));
    h = mix(h, bits_of(pt.q));
  }
  h = mix(h, settings.realizations);
  h = mix(h, settings.master_seed);
  h = mix(h, settings.t_total.value_or(0));
  h = mix(h, settings.t_burn_in.value_or(0));
  h = mix(h, settings.sample_stride.value_or(0));
  h = mix(h, settings.initial_state == InitialState::kProductZero ? 0 : 1);
  if (settings.relaxation_per_q) h = mix(h, bits_of(*settings.relaxation_per_q));
  return h;
}

SweepTable run_sweep(std::vector<SweepPoint> grid, const SweepSettings& settings) {
  if (settings.realizations == 0) throw InvalidParams("realizations: must be at least 1");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& pt : grid) point_params(pt, settings, 0).validate();

  const std::size_t per_point = settings.realizations;
  const std::size_t num_tasks = grid.size() * per_point;
  std::vector<TrajectoryMeans> results(num_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= num_tasks) return;
      try {
        const auto params = point_params(grid[task / per_point], settings, task % per_point);
        results[task] = time_average(run_trajectory(params));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(num_tasks);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(settings.threads, num_tasks));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  SweepTable table;
  table.master_seed = settings.master_seed;
  table.parameter_hash = sweep_parameter_hash(grid, settings);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<TrajectoryMeans> traj(results.begin() + static_cast<std::ptrdiff_t>(g * per_point),
                                      results.begin() + static_cast<std::ptrdiff_t>((g + 1) * per_point));
    table.rows.push_back(summarize(grid[g], std::move(traj)));
  }
  return table;
}

}  // namespace nmipt

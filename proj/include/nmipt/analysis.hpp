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
#include <stdexcept>
#include <string>
#include <vector>

#include "nmipt/sweep.hpp"

namespace nmipt {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FitModel { kLogInvQ, kExponentialQ, kVolumeLog };
std::string to_string(FitModel m);

enum class LogBase { kNatural, kTwo };

struct FitResult {
  FitModel model = FitModel::kLogInvQ;
  std::vector<std::string> names;  // (b, c), (d, e) or (alpha, beta, gamma)
  std::vector<double> coefficients;
  /// Propagated from the point standard errors; zero when none were given.
  std::vector<double> stderrs;
  std::vector<double> window;      // q values, or L values for the volume fit
  double rss = 0.0;
  double r_squared = 0.0;
  /// max_j |sum_i X_ij r_i| / (||X_j|| ||y||): normal-equation residual.
  double normal_residual = 0.0;

  double coefficient(const std::string& name) const;
};

struct FitOptions {
  LogBase log_base = LogBase::kNatural;  // base of log(1/q) in the log-law fit
  bool weighted = false;                 // weight points by 1/stderr^2
};

/// Raw-data forms. Each point is (x, y, stderr); stderr is only used when
/// weighting.
struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  double stderr_y = 0.0;
};

/// I = b log(1/q) + c.
FitResult fit_log_law(const std::vector<DataPoint>& q_and_i, const FitOptions& options = {});
/// ln I = ln d - e q, i.e. I = d exp(-e q).
FitResult fit_exp_law(const std::vector<DataPoint>& q_and_i, const FitOptions& options = {});
/// S = alpha L + beta log2 L + gamma. Needs `min_distinct` distinct L values.
FitResult fit_volume_log_law(const std::vector<DataPoint>& l_and_s, const FitOptions& options = {},
                             std::size_t min_distinct = 4);

/// Table forms select the rows at (L, p) whose q lies in `q_window`.
FitResult fit_log_region(const SweepTable& table, std::size_t num_sites, double p,
                         const std::vector<double>& q_window, const FitOptions& options = {});
FitResult fit_exp_region(const SweepTable& table, std::size_t num_sites, double p,
                         const std::vector<double>& q_window, const FitOptions& options = {});
/// Uses the q = 0 rows at p across every L in the table.
FitResult fit_volume_log(const SweepTable& table, double p, const FitOptions& options = {});

/// Fit windows used for the reference figures.
std::vector<double> reference_log_window();       // 8e-5, 8e-4, 2e-3, 4e-3
std::vector<double> desk_log_window();            // 1e-4, 3e-4, 1e-3, 3e-3
std::vector<double> reference_exp_window();       // 0.5 ... 1.0

enum class RegionLabel { kBaseline, kLog, kPlateau, kExponential, kCrossover };
std::string to_string(RegionLabel r);  // "q0", "I", "II", "III", "crossover"

struct ClassifyOptions {
  double threshold = 0.05;
  std::vector<double> log_window = desk_log_window();
  std::vector<double> exp_window = reference_exp_window();
};

struct RegionCell {
  SweepPoint point;
  RegionLabel label = RegionLabel::kCrossover;
  double deviation_from_q0 = 0.0;   // |I(q) - I(0)| / I(0)
  double deviation_from_log = 0.0;  // |I(q) - f(q)| / I(q), NaN without a region-I fit
  double deviation_from_exp = 0.0;  // same for the exponential fit, NaN without one
};

/// Labels every q > 0 point. Throws FitError if an (L, p) group lacks q = 0.
std::vector<RegionCell> classify_regions(const SweepTable& table, const ClassifyOptions& options = {});

struct PcEstimate {
  double p_low = 0.0;
  double p_high = 0.0;
  std::vector<double> ps;
  std::vector<double> alphas;
  std::vector<double> alpha_stderrs;
  std::vector<double> betas;
  std::vector<std::size_t> sizes;
  std::size_t bootstrap_samples = 0;
  double bootstrap_mid_mean = 0.0;
  double bootstrap_mid_stderr = 0.0;
  double bootstrap_width_mean = 0.0;

  double width() const { return p_high - p_low; }
  bool overlaps(double lo, double hi) const { return p_low <= hi && p_high >= lo; }
};

struct PcOptions {
  std::vector<std::size_t> sizes;  // empty: every L in the table
  std::size_t bootstrap = 200;
  std::uint64_t seed = 0;
  /// alpha counts as positive only above this many standard errors.
  double significance = 2.0;
  /// and above this floor, so exact data with zero errors is not split by rounding.
  double alpha_floor = 1e-9;
};

/// Brackets p_c between the last p of the leading run with alpha significantly
/// positive and the first p of the trailing run where it is not, alpha being
/// the volume coefficient of the q = 0 fit over L. Bootstrap resamples
/// trajectories.
PcEstimate estimate_pc(const SweepTable& table, const PcOptions& options = {});

/// q at which the region-I fit meets the q = 0 plateau, b log(1/q*) + c = I(0).
double crossover_q(const FitResult& log_fit, double i_ab_q0, LogBase base = LogBase::kNatural);

}  // namespace nmipt

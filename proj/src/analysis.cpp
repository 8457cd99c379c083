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

#include "nmipt/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace nmipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_value(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

double log_in(LogBase base, double v) { return base == LogBase::kNatural ? std::log(v) : std::log2(v); }

// Ordinary (optionally weighted) least squares with an intercept column.
FitResult least_squares(FitModel model, const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights, const Eigen::VectorXd& sigma) {
  const Eigen::VectorXd sw = weights.cwiseSqrt();
  const Eigen::MatrixXd xw = sw.asDiagonal() * design;
  const Eigen::VectorXd yw = sw.asDiagonal() * y;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xw);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols()) throw FitError("design matrix is rank deficient");
  const Eigen::VectorXd beta = qr.solve(yw);
  const Eigen::VectorXd residual = yw - xw * beta;

  FitResult fit;
  fit.model = model;
  fit.coefficients.assign(beta.data(), beta.data() + beta.size());
  fit.rss = residual.squaredNorm();
  const double mean = yw.sum() == 0.0 ? 0.0 : (weights.dot(y) / weights.sum());
  const double tss = (sw.asDiagonal() * (y.array() - mean).matrix()).squaredNorm();
  if (tss <= 1e-300) {
    fit.r_squared = fit.rss <= 1e-24 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - fit.rss / tss, 0.0, 1.0);
  }
  // beta = M y with M = (X^T W X)^{-1} X^T W, so cov(beta) = M diag(sigma^2) M^T.
  const Eigen::MatrixXd m = qr.solve(Eigen::MatrixXd(sw.asDiagonal()));
  const Eigen::VectorXd var = (m * sigma.cwiseAbs2().asDiagonal() * m.transpose()).diagonal();
  for (Eigen::Index j = 0; j < var.size(); ++j) fit.stderrs.push_back(std::sqrt(std::max(0.0, var(j))));
  const Eigen::VectorXd normal = xw.transpose() * residual;
  const double scale = std::max(yw.norm(), 1e-300);
  for (Eigen::Index j = 0; j < normal.size(); ++j) {
    fit.normal_residual = std::max(fit.normal_residual, std::abs(normal(j)) / (xw.col(j).norm() * scale));
  }
  return fit;
}

Eigen::VectorXd sigmas_of(const std::vector<DataPoint>& pts) {
  Eigen::VectorXd s(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) s(static_cast<Eigen::Index>(i)) = pts[i].stderr_y;
  return s;
}

Eigen::VectorXd weights_for(const std::vector<DataPoint>& pts, const FitOptions& options) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(pts.size()));
  if (!options.weighted) return w;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].stderr_y > 0.0)) throw FitError("weighted fit needs positive standard errors");
    w(static_cast<Eigen::Index>(i)) = 1.0 / (pts[i].stderr_y * pts[i].stderr_y);
  }
  return w;
}

void require_spread(const std::vector<DataPoint>& pts, std::size_t min_points, std::size_t min_distinct,
                    const char* what) {
  if (pts.size() < min_points) {
    throw FitError(std::string(what) + ": need at least " + std::to_string(min_points) + " points, got " +
                   std::to_string(pts.size()));
  }
  std::set<double> xs;
  for (const auto& p : pts) xs.insert(p.x);
  if (xs.size() < min_distinct) {
    throw FitError(std::string(what) + ": degenerate window (" + std::to_string(xs.size()) + " distinct x values)");
  }
}

std::vector<DataPoint> window_rows(const SweepTable& table, std::size_t num_sites, double p,
                                   const std::vector<double>& q_window) {
  std::vector<DataPoint> pts;
  for (const auto& row : table.rows) {
    if (row.point.num_sites != num_sites || !same_value(row.point.p, p)) continue;
    for (double q : q_window) {
      if (same_value(row.point.q, q)) {
        pts.push_back({row.point.q, row.i_ab_mean, row.i_ab_stderr});
        break;
      }
    }
  }
  return pts;
}

std::vector<double> xs_of(const std::vector<DataPoint>& pts) {
  std::vector<double> xs;
  for (const auto& p : pts) xs.push_back(p.x);
  return xs;
}

struct AlphaCurve {
  std::vector<double> ps, alphas, alpha_stderrs, betas;
  std::vector<bool> positive;
};

// Volume-law coefficient per p from per-(L, p) mean entropies.
AlphaCurve alpha_curve(const std::map<double, std::vector<DataPoint>>& by_p, double significance,
                       double floor) {
  AlphaCurve c;
  for (const auto& [p, pts] : by_p) {
    const auto fit = fit_volume_log_law(pts, {}, 3);
    c.ps.push_back(p);
    c.alphas.push_back(fit.coefficients[0]);
    c.alpha_stderrs.push_back(fit.stderrs[0]);
    c.betas.push_back(fit.coefficients[1]);
    c.positive.push_back(fit.coefficients[0] > std::max(significance * fit.stderrs[0], floor));
  }
  return c;
}

std::pair<double, double> bracket(const AlphaCurve& c) {
  const auto& pos = c.positive;
  if (pos.empty() || !pos.front() || pos.back()) {
    throw FitError("volume coefficient does not change sign across the p grid");
  }
  std::size_t lead = 0;
  while (lead + 1 < pos.size() && pos[lead + 1]) ++lead;
  std::size_t trail = pos.size() - 1;
  while (trail > 0 && !pos[trail - 1]) --trail;
  return {c.ps[lead], c.ps[trail]};
}

}  // namespace

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::kLogInvQ: return "log_inv_q";
    case FitModel::kExponentialQ: return "exponential_q";
    case FitModel::kVolumeLog: return "volume_log";
  }
  return "unknown";
}

std::string to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::kBaseline: return "q0";
    case RegionLabel::kLog: return "I";
    case RegionLabel::kPlateau: return "II";
    case RegionLabel::kExponential: return "III";
    case RegionLabel::kCrossover: return "crossover";
  }
  return "unknown";
}

double FitResult::coefficient(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return coefficients[i];
  }
  throw std::out_of_range("no coefficient named " + name);
}

FitResult fit_log_law(const std::vector<DataPoint>& pts, const FitOptions& options) {
  require_spread(pts, 3, 2, "log-law fit");
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& pt = pts[static_cast<std::size_t>(i)];
    if (!(pt.x > 0.0)) throw FitError("log-law fit needs q > 0");
    x(i, 0) = log_in(options.log_base, 1.0 / pt.x);
    x(i, 1) = 1.0;
    y(i) = pt.y;
  }
  auto fit = least_squares(FitModel::kLogInvQ, x, y, weights_for(pts, options), sigmas_of(pts));
  fit.names = {"b", "c"};
  fit.window = xs_of(pts);
  return fit;
}

FitResult fit_exp_law(const std::vector<DataPoint>& pts, const FitOptions& options) {
  require_spread(pts, 3, 2, "exponential fit");
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  std::vector<DataPoint> logged = pts;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& pt = pts[static_cast<std::size_t>(i)];
    if (!(pt.y > 0.0)) throw FitError("exponential fit needs I_AB > 0 at every q in the window");
    x(i, 0) = pt.x;
    x(i, 1) = 1.0;
    y(i) = std::log(pt.y);
    logged[static_cast<std::size_t>(i)].stderr_y = pt.stderr_y / pt.y;
  }
  auto fit = least_squares(FitModel::kExponentialQ, x, y, weights_for(logged, options), sigmas_of(logged));
  const double slope = fit.coefficients[0];
  const double intercept = fit.coefficients[1];
  fit.names = {"d", "e"};
  fit.coefficients = {std::exp(intercept), -slope};
  fit.stderrs = {std::exp(intercept) * fit.stderrs[1], fit.stderrs[0]};
  fit.window = xs_of(pts);
  return fit;
}

FitResult fit_volume_log_law(const std::vector<DataPoint>& pts, const FitOptions& options,
                             std::size_t min_distinct) {
  require_spread(pts, min_distinct, min_distinct, "volume-law fit");
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& pt = pts[static_cast<std::size_t>(i)];
    if (!(pt.x > 0.0)) throw FitError("volume-law fit needs L > 0");
    x(i, 0) = pt.x;
    x(i, 1) = std::log2(pt.x);
    x(i, 2) = 1.0;
    y(i) = pt.y;
  }
  auto fit = least_squares(FitModel::kVolumeLog, x, y, weights_for(pts, options), sigmas_of(pts));
  fit.names = {"alpha", "beta", "gamma"};
  fit.window = xs_of(pts);
  return fit;
}

FitResult fit_log_region(const SweepTable& table, std::size_t num_sites, double p,
                         const std::vector<double>& q_window, const FitOptions& options) {
  return fit_log_law(window_rows(table, num_sites, p, q_window), options);
}

FitResult fit_exp_region(const SweepTable& table, std::size_t num_sites, double p,
                         const std::vector<double>& q_window, const FitOptions& options) {
  return fit_exp_law(window_rows(table, num_sites, p, q_window), options);
}

FitResult fit_volume_log(const SweepTable& table, double p, const FitOptions& options) {
  std::vector<DataPoint> pts;
  for (const auto& row : table.rows) {
    if (same_value(row.point.p, p) && row.point.q == 0.0) {
      pts.push_back({static_cast<double>(row.point.num_sites), row.s_a_mean, row.s_a_stderr});
    }
  }
  return fit_volume_log_law(pts, options);
}

std::vector<double> reference_log_window() { return {8e-5, 8e-4, 2e-3, 4e-3}; }
std::vector<double> desk_log_window() { return {1e-4, 3e-4, 1e-3, 3e-3}; }
std::vector<double> reference_exp_window() { return {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}; }

std::vector<RegionCell> classify_regions(const SweepTable& table, const ClassifyOptions& options) {
  std::map<std::pair<std::size_t, double>, std::vector<const PointSummary*>> groups;
  for (const auto& row : table.rows) groups[{row.point.num_sites, row.point.p}].push_back(&row);

  std::vector<RegionCell> cells;
  for (const auto& [key, rows] : groups) {
    const PointSummary* baseline = nullptr;
    for (const auto* r : rows) {
      if (r->point.q == 0.0) baseline = r;
    }
    if (baseline == nullptr) {
      throw FitError("no q = 0 baseline for L = " + std::to_string(key.first) + ", p = " + std::to_string(key.second));
    }
    const double i0 = baseline->i_ab_mean;
    bool have_log = false, have_exp = false;
    FitResult log_fit, exp_fit;
    try {
      log_fit = fit_log_region(table, key.first, key.second, options.log_window);
      have_log = true;
    } catch (const FitError&) {
    }
    try {
      exp_fit = fit_exp_region(table, key.first, key.second, options.exp_window);
      have_exp = true;
    } catch (const FitError&) {
    }
    for (const auto* r : rows) {
      RegionCell cell;
      cell.point = r->point;
      if (r->point.q == 0.0) {
        cell.label = RegionLabel::kBaseline;
        cells.push_back(cell);
        continue;
      }
      const double iq = r->i_ab_mean;
      if (i0 > 0.0) {
        cell.deviation_from_q0 = std::abs(iq - i0) / i0;
      } else {
        cell.deviation_from_q0 = iq == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      }
      auto rel = [iq](double model) {
        return iq > 0.0 ? std::abs(iq - model) / iq : std::numeric_limits<double>::infinity();
      };
      cell.deviation_from_log =
          have_log ? rel(log_fit.coefficients[0] * std::log(1.0 / r->point.q) + log_fit.coefficients[1]) : kNaN;
      cell.deviation_from_exp =
          have_exp ? rel(exp_fit.coefficients[0] * std::exp(-exp_fit.coefficients[1] * r->point.q)) : kNaN;
      const double exp_min = options.exp_window.empty()
                                 ? std::numeric_limits<double>::infinity()
                                 : *std::min_element(options.exp_window.begin(), options.exp_window.end());
      if (cell.deviation_from_q0 < options.threshold) {
        cell.label = RegionLabel::kPlateau;
      } else if (have_log && cell.deviation_from_log < options.threshold) {
        cell.label = RegionLabel::kLog;
      } else if (have_exp && r->point.q >= exp_min && cell.deviation_from_exp < options.threshold) {
        cell.label = RegionLabel::kExponential;
      } else {
        cell.label = RegionLabel::kCrossover;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

PcEstimate estimate_pc(const SweepTable& table, const PcOptions& options) {
  std::set<std::size_t> wanted(options.sizes.begin(), options.sizes.end());
  std::vector<const PointSummary*> rows;
  std::set<std::size_t> sizes;
  for (const auto& row : table.rows) {
    if (row.point.q != 0.0) continue;
    if (!wanted.empty() && !wanted.count(row.point.num_sites)) continue;
    rows.push_back(&row);
    sizes.insert(row.point.num_sites);
  }
  if (sizes.size() < 3) throw FitError("estimate_pc needs at least three chain lengths at q = 0");

  std::map<double, std::vector<DataPoint>> by_p;
  for (const auto* r : rows) {
    by_p[r->point.p].push_back({static_cast<double>(r->point.num_sites), r->s_a_mean, r->s_a_stderr});
  }
  for (const auto& [p, pts] : by_p) {
    if (pts.size() != sizes.size()) throw FitError("p = " + std::to_string(p) + " is missing some chain lengths");
  }
  const auto curve = alpha_curve(by_p, options.significance, options.alpha_floor);
  PcEstimate est;
  std::tie(est.p_low, est.p_high) = bracket(curve);
  est.ps = curve.ps;
  est.alphas = curve.alphas;
  est.alpha_stderrs = curve.alpha_stderrs;
  est.betas = curve.betas;
  est.sizes.assign(sizes.begin(), sizes.end());

  bool have_trajectories = options.bootstrap > 0;
  for (const auto* r : rows) have_trajectories = have_trajectories && !r->trajectories.empty();
  if (!have_trajectories) return est;

  // Resample trajectories independently at each chain length; rows sharing an L
  // share the resampling indices because trajectories are seeded per L.
  std::mt19937_64 rng(options.seed);
  std::vector<double> mids, widths;
  for (std::size_t b = 0; b < options.bootstrap; ++b) {
    std::map<std::size_t, std::vector<std::size_t>> picks;
    for (const auto* r : rows) {
      auto& idx = picks[r->point.num_sites];
      if (!idx.empty()) continue;
      std::uniform_int_distribution<std::size_t> dist(0, r->trajectories.size() - 1);
      idx.resize(r->trajectories.size());
      for (auto& i : idx) i = dist(rng);
    }
    std::map<double, std::vector<DataPoint>> resampled;
    for (const auto* r : rows) {
      std::vector<TrajectoryMeans> draw;
      for (std::size_t i : picks[r->point.num_sites]) draw.push_back(r->trajectories[i % r->trajectories.size()]);
      const auto s = summarize(r->point, std::move(draw));
      resampled[r->point.p].push_back({static_cast<double>(r->point.num_sites), s.s_a_mean, s.s_a_stderr});
    }
    try {
      const auto [lo, hi] = bracket(alpha_curve(resampled, options.significance, options.alpha_floor));
      mids.push_back(0.5 * (lo + hi));
      widths.push_back(hi - lo);
    } catch (const FitError&) {
    }
  }
  est.bootstrap_samples = mids.size();
  if (!mids.empty()) {
    double m = 0.0, w = 0.0;
    for (std::size_t i = 0; i < mids.size(); ++i) {
      m += mids[i];
      w += widths[i];
    }
    m /= static_cast<double>(mids.size());
    w /= static_cast<double>(mids.size());
    double ss = 0.0;
    for (double v : mids) ss += (v - m) * (v - m);
    est.bootstrap_mid_mean = m;
    est.bootstrap_mid_stderr = mids.size() > 1 ? std::sqrt(ss / static_cast<double>(mids.size() - 1)) : 0.0;
    est.bootstrap_width_mean = w;
  }
  return est;
}

double crossover_q(const FitResult& log_fit, double i_ab_q0, LogBase base) {
  const double b = log_fit.coefficients.at(0);
  const double c = log_fit.coefficients.at(1);
  if (b == 0.0) return kNaN;
  const double exponent = (i_ab_q0 - c) / b;
  return base == LogBase::kNatural ? std::exp(-exponent) : std::exp2(-exponent);
}

}  // namespace nmipt

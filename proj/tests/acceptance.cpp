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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion followed
// by indented detail lines. Exit status is 0 when the set of failing criteria
// equals the --expect-fail set, 3 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nmipt/analysis.hpp"
#include "nmipt/oracle_check.hpp"
#include "nmipt/protocol.hpp"
#include "nmipt/replica.hpp"
#include "nmipt/statmech.hpp"
#include "nmipt/sweep.hpp"

namespace {

using namespace nmipt;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;

  template <class... Args>
  void note(Args&&... args) {
    std::ostringstream os;
    os.precision(6);
    (os << ... << args);
    details.push_back(os.str());
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t worker_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

SweepSettings settings_for(std::size_t realizations, std::uint64_t seed) {
  SweepSettings s;
  s.realizations = realizations;
  s.master_seed = seed;
  s.threads = worker_threads();
  return s;
}

// Small-q points need a burn-in on the dephasing time scale 1/q.
SweepSettings steady_settings_for(std::size_t realizations, std::uint64_t seed) {
  auto s = settings_for(realizations, seed);
  s.relaxation_per_q = 2.0;
  return s;
}

SweepTable merged(SweepTable a, const SweepTable& b) {
  a.rows.insert(a.rows.end(), b.rows.begin(), b.rows.end());
  std::sort(a.rows.begin(), a.rows.end(),
            [](const PointSummary& x, const PointSummary& y) { return x.point < y.point; });
  return a;
}

std::vector<double> p_grid() {
  std::vector<double> ps;
  for (int i = 0; i <= 10; ++i) ps.push_back(0.20 + 0.02 * i);
  return ps;
}

// Shared between criteria 2 and 4.
struct PcState {
  bool ready = false;
  PcEstimate estimate;
};
PcState g_pc;

Outcome oracle_equivalence() {
  Outcome o;
  OracleSettings s;
  s.seed = 2026;
  const auto start = Clock::now();
  const auto rep = run_oracle_check(s);
  const double elapsed = seconds_since(start);
  o.note("circuits=", rep.circuits, " comparisons=", rep.comparisons);
  o.note("max |S_stab - S_dense| = ", rep.max_entropy_discrepancy,
         ", max Born discrepancy = ", rep.max_probability_discrepancy,
         ", max state distance = ", rep.max_state_discrepancy);
  o.note("runtime ", elapsed, " s (limit 120 s)");
  o.pass = rep.circuits == 200 && rep.passed(1e-9) && elapsed < 120.0;
  return o;
}

void run_pc_sweep(Outcome& o) {
  std::vector<SweepPoint> small, large;
  for (double p : p_grid()) {
    for (std::size_t l : {16, 32, 64}) small.push_back({l, p, 0.0});
    large.push_back({128, p, 0.0});
  }
  const auto settings = settings_for(200, 11);
  auto start = Clock::now();
  const auto smoke = run_sweep(small, settings);
  const double smoke_time = seconds_since(start);
  start = Clock::now();
  const auto full = merged(smoke, run_sweep(large, settings));
  o.note("smoke grid (L <= 64) runtime ", smoke_time, " s (limit 1800 s); L = 128 part ", seconds_since(start),
         " s");

  PcOptions three;
  three.sizes = {16, 32, 64};
  three.seed = 5;
  PcOptions four = three;
  four.sizes = {16, 32, 64, 128};
  const auto est3 = estimate_pc(full, three);
  const auto est4 = estimate_pc(full, four);
  for (std::size_t i = 0; i < est4.ps.size(); ++i) {
    o.note("p=", est4.ps[i], " alpha=", est4.alphas[i], " +- ", est4.alpha_stderrs[i], " beta=", est4.betas[i]);
  }
  o.note("bracket L<=64: [", est3.p_low, ", ", est3.p_high, "]  L<=128: [", est4.p_low, ", ", est4.p_high, "]");
  o.note("bootstrap midpoint ", est4.bootstrap_mid_mean, " +- ", est4.bootstrap_mid_stderr, " over ",
         est4.bootstrap_samples, " resamples");
  const bool overlap = est4.overlaps(0.26, 0.34);
  const bool nested = est4.width() <= est3.width() + 1e-12;
  o.note("overlaps [0.26, 0.34]: ", overlap ? "yes" : "no", "; tightens or holds under nesting: ",
         nested ? "yes" : "no");
  o.pass = overlap && nested && smoke_time < 1800.0;
  g_pc.ready = true;
  g_pc.estimate = est4;
}

Outcome transition_bracket() {
  Outcome o;
  try {
    run_pc_sweep(o);
  } catch (const FitError& e) {
    o.note("fit failed: ", e.what());
  }
  return o;
}

Outcome region_one_log_law() {
  Outcome o;
  std::vector<SweepPoint> grid;
  for (double q : desk_log_window()) grid.push_back({128, 0.14, q});
  const auto table = run_sweep(grid, steady_settings_for(400, 13));
  for (const auto& r : table.rows) o.note("q=", r.point.q, " I_AB=", r.i_ab_mean, " +- ", r.i_ab_stderr);
  const auto fit = fit_log_region(table, 128, 0.14, desk_log_window());
  o.note("b=", fit.coefficient("b"), " c=", fit.coefficient("c"), " R^2=", fit.r_squared);
  o.pass = fit.r_squared >= 0.98 && fit.coefficient("b") > 0.0;
  return o;
}

Outcome beta_b_compatibility() {
  Outcome o;
  if (!g_pc.ready) {
    o.note("no p_c estimate available (criterion 2 did not produce one)");
    return o;
  }
  const double pc = 0.5 * (g_pc.estimate.p_low + g_pc.estimate.p_high);
  o.note("p_c estimate (bracket midpoint) = ", pc);
  std::vector<SweepPoint> grid;
  for (std::size_t l : {16, 32, 64, 128}) grid.push_back({l, pc, 0.0});
  for (std::size_t l : {32, 64, 128}) {
    for (double q : desk_log_window()) grid.push_back({l, pc, q});
  }
  const auto table = run_sweep(grid, steady_settings_for(200, 17));
  const double beta = fit_volume_log(table, pc).coefficient("beta");
  o.note("beta(p_c) = ", beta);
  FitOptions base2;
  base2.log_base = LogBase::kTwo;
  bool ok = true;
  for (std::size_t l : {32, 64, 128}) {
    const auto fit = fit_log_region(table, l, pc, desk_log_window(), base2);
    const double b = fit.coefficient("b");
    o.note("L=", l, " b=", b, " |b - beta|=", std::abs(b - beta), " (limit 0.8) R^2=", fit.r_squared);
    ok = ok && std::abs(b - beta) <= 0.8;
  }
  o.pass = ok;
  return o;
}

Outcome region_two_plateau() {
  Outcome o;
  const std::vector<double> qs = {0.0, 1e-4, 3e-4, 1e-3};
  std::vector<SweepPoint> grid;
  for (double q : qs) grid.push_back({128, 0.40, q});
  const auto table = run_sweep(grid, settings_for(200, 19));
  const auto* base = table.find({128, 0.40, 0.0});
  o.note("I_AB(0) = ", base->i_ab_mean, " +- ", base->i_ab_stderr);
  bool ok = base->i_ab_mean > 0.0;
  for (double q : qs) {
    if (q == 0.0) continue;
    const auto* r = table.find({128, 0.40, q});
    const double dev = std::abs(r->i_ab_mean - base->i_ab_mean) / base->i_ab_mean;
    o.note("q=", q, " I_AB=", r->i_ab_mean, " relative deviation ", dev, " (limit 0.05)");
    ok = ok && dev < 0.05;
  }
  o.pass = ok;
  return o;
}

Outcome region_three_exponential() {
  Outcome o;
  std::vector<SweepPoint> grid;
  for (double q : reference_exp_window()) grid.push_back({64, 0.02, q});
  const auto table = run_sweep(grid, settings_for(1000, 23));
  for (const auto& r : table.rows) o.note("q=", r.point.q, " I_AB=", r.i_ab_mean, " +- ", r.i_ab_stderr);
  try {
    const auto fit = fit_exp_region(table, 64, 0.02, reference_exp_window());
    o.note("d=", fit.coefficient("d"), " e=", fit.coefficient("e"), " R^2=", fit.r_squared, " (limit 0.95)");
    o.pass = fit.r_squared >= 0.95;
  } catch (const FitError& e) {
    o.note("fit failed: ", e.what());
  }
  return o;
}

Outcome decoherence_endpoint() {
  Outcome o;
  bool ok = true;
  for (double q : {0.05, 0.1, 0.5, 1.0}) {
    std::size_t good = 0;
    for (std::size_t i = 0; i < 50; ++i) {
      auto params = ProtocolParams::defaults(64, 0.0, q, trajectory_seed(29, 64, i));
      params.t_total = 4 * 64;
      params.t_burn_in = params.t_total - 1;
      params.sample_stride = 1;
      const auto rec = run_trajectory(params);
      if (rec.final_rank == 0 && rec.samples.back().report.s_ab == 64) ++good;
    }
    o.note("q=", q, ": ", good, "/50 trajectories reach k=0, S_AB=64 by t=256");
    ok = ok && good == 50;
  }
  o.pass = ok;
  return o;
}

Outcome pure_sector_identity() {
  Outcome o;
  std::size_t samples = 0;
  std::size_t violations = 0;
  for (std::size_t l : {8, 16, 32, 64}) {
    for (double p : {0.0, 0.1, 0.3, 0.5, 1.0}) {
      for (std::size_t i = 0; i < 8; ++i) {
        auto params = ProtocolParams::defaults(l, p, 0.0, trajectory_seed(31, l, i));
        params.sample_stride = 1;
        for (const auto& s : run_trajectory(params).samples) {
          ++samples;
          if (s.report.i_ab != 2 * s.report.s_a) ++violations;
        }
      }
    }
  }
  o.note(samples, " samples checked, ", violations, " with I_AB != 2 S_A");
  o.pass = samples > 0 && violations == 0;
  return o;
}

Outcome weingarten_exactness() {
  Outcome o;
  const auto start = Clock::now();
  const auto w22 = weingarten_table(2, 2);
  const mpq_class we = w22.at(Permutation::identity(2));
  const mpq_class wt = w22.at(Permutation::transposition(2, 0, 1));
  o.note("Wg(e)=", we.get_str(), " Wg(tau)=", wt.get_str());
  bool ok = we == mpq_class(1, 3) && wt == mpq_class(-1, 6);
  std::size_t tables = 0;
  for (int order = 1; order <= 4; ++order) {
    const auto perms = all_permutations(order);
    for (long d = order; d <= 6; ++d) {
      const auto w = weingarten_table(order, d);
      ++tables;
      for (const auto& g : perms) {
        for (const auto& gp : perms) {
          mpq_class sum = 0;
          for (const auto& h : perms) {
            sum += mpq_class(integer_power(d, cycle_count(compose(g, inverse(h))))) *
                   w.at(compose(inverse(h), gp));
          }
          if (sum != (g == gp ? 1 : 0)) ok = false;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.note(tables, " tables checked for biorthogonality, runtime ", elapsed, " s (limit 60 s)");
  o.pass = ok && elapsed < 60.0;
  return o;
}

Outcome weight_reduction() {
  Outcome o;
  const std::vector<mpq_class> ps = {0, mpq_class(1, 7), mpq_class(3, 10), mpq_class(1, 2), 1};
  std::size_t checked = 0;
  std::size_t mismatched = 0;
  for (int order = 1; order <= 3; ++order) {
    const auto perms = all_permutations(order);
    for (long d = 1; d <= 5; ++d) {
      for (const auto& p : ps) {
        for (const auto& g : perms) {
          for (const auto& gp : perms) {
            const mpq_class got = w_km<mpq_class>(g, gp, p, mpq_class(0), d);
            mpq_class one_minus_p_q = 1;
            mpq_class p_q = 1;
            for (int i = 0; i < order; ++i) {
              one_minus_p_q *= 1 - p;
              p_q *= p;
            }
            const mpq_class want =
                one_minus_p_q * mpq_class(integer_power(d, cycle_count(compose(g, inverse(gp))))) + p_q * d;
            ++checked;
            if (got != want) ++mismatched;
          }
        }
      }
    }
  }
  o.note(checked, " exact comparisons, ", mismatched, " mismatches");
  o.pass = checked > 0 && mismatched == 0;
  return o;
}

Outcome symmetry_breaking() {
  Outcome o;
  const auto start = Clock::now();
  const mpq_class p(3, 10);
  const auto clean = symmetry_audit(make_bond_weights<mpq_class>(3, 4, p, mpq_class(0)));
  const auto broken = symmetry_audit(make_bond_weights<mpq_class>(3, 4, p, mpq_class(3, 10)));
  o.note("q=0: ", clean.passing.size(), "/", clean.pairs_tested, " relabelings pass, swap ",
         clean.swap_holds ? "holds" : "fails");
  o.note("q=0.3: ", broken.diagonal_passing, " diagonal and ", broken.off_diagonal_passing,
         " off-diagonal relabelings pass, swap ", broken.swap_holds ? "holds" : "fails");
  if (broken.witness) {
    const auto& w = *broken.witness;
    o.note("witness h_L=", w.h_left.str(), " h_R=", w.h_right.str(), " g=", w.g.str(), " g'=", w.g_prime.str(),
           ": ", w.lhs, " != ", w.rhs);
  }
  const double elapsed = seconds_since(start);
  o.note("runtime ", elapsed, " s (limit 60 s)");
  o.pass = clean.pairs_tested == 36 && clean.full_group() && clean.swap_holds && broken.pairs_tested == 36 &&
           broken.diagonal_passing == 6 && broken.off_diagonal_passing == 0 && broken.swap_holds &&
           broken.witness.has_value() && elapsed < 60.0;
  return o;
}

Outcome large_d_limit() {
  Outcome o;
  const mpq_class p(3, 10);
  const mpq_class q(1, 100);
  const auto perms = all_permutations(3);
  bool ok = true;
  for (long d : {16L, 64L, 256L, 1024L}) {
    double worst_diag = 0.0;
    double worst_off = 0.0;
    double worst_next = 0.0;
    std::string diag_pair, off_pair;
    for (const auto& g : perms) {
      for (const auto& gp : perms) {
        const mpq_class exact = w_km<mpq_class>(g, gp, p, q, d, ProjectionNorm::kPower);
        const mpq_class lead = large_d_weight<mpq_class>(g, gp, p, q, d);
        const double dev = std::abs(mpq_class(exact / lead - 1).get_d());
        const mpq_class next = large_d_weight_corrected<mpq_class>(g, gp, p, q, d);
        worst_next = std::max(worst_next, std::abs(mpq_class(exact / next - 1).get_d()));
        double& worst = g == gp ? worst_diag : worst_off;
        if (dev > worst) {
          worst = dev;
          (g == gp ? diag_pair : off_pair) = g.str() + "," + gp.str();
        }
      }
    }
    const double limit = 8.0 / static_cast<double>(d);
    o.note("d=", d, " limit ", limit, ": worst g=g' ", worst_diag, " at (", diag_pair, "), worst g!=g' ", worst_off,
           " at (", off_pair, ")");
    o.note("      diagnostic: with the next order included, worst deviation ", worst_next);
    ok = ok && worst_diag <= limit && worst_off <= limit;
  }
  o.pass = ok;
  return o;
}

Outcome partition_engines() {
  Outcome o;
  const std::vector<mpq_class> values = {0, mpq_class(3, 10), 1};
  const auto tau = Permutation::transposition(2, 0, 1);
  std::size_t cases = 0;
  std::size_t agree = 0;
  std::size_t empty_agree = 0;
  for (auto attach : {Attachment::kVertical, Attachment::kZigzag}) {
    const auto patch = HoneycombPatch::make(2, 3, 1, attach);
    const auto empty = HoneycombPatch::make(2, 3, 0, attach);
    for (const auto& p : values) {
      for (const auto& q : values) {
        const auto w = make_bond_weights<mpq_class>(2, 2, p, q);
        const auto bf = partition_function(patch, w, tau, Engine::kBruteForce);
        const auto tm = partition_function(patch, w, tau, Engine::kTransferMatrix);
        ++cases;
        if (bf == tm) ++agree;
        bool empty_ok = true;
        for (auto engine : {Engine::kBruteForce, Engine::kTransferMatrix}) {
          empty_ok = empty_ok && partition_function(empty, w, tau, engine) ==
                                     partition_function(empty, w, std::nullopt, engine);
        }
        if (empty_ok) ++empty_agree;
      }
    }
  }
  o.note(agree, "/", cases, " (attachment, p, q) cases agree exactly between engines");
  o.note(empty_agree, "/", cases, " cases give Z_A = Z_empty for empty A");
  o.pass = agree == cases && empty_agree == cases;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ids.insert(std::stoi(item));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nmipt acceptance run"};
  std::string only_text, expect_text;
  app.add_option("--only", only_text, "comma-separated criteria to run (default: all)");
  app.add_option("--expect-fail", expect_text, "comma-separated criteria known to fail");
  CLI11_PARSE(app, argc, argv);
  const auto only = parse_ids(only_text);
  const auto expected = parse_ids(expect_text);

  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence},
      {2, "q=0 transition bracket", transition_bracket},
      {3, "region I log law", region_one_log_law},
      {4, "beta-b compatibility at p_c", beta_b_compatibility},
      {5, "region II plateau", region_two_plateau},
      {6, "region III exponential", region_three_exponential},
      {7, "decoherence endpoint", decoherence_endpoint},
      {8, "pure-sector identity", pure_sector_identity},
      {9, "Weingarten exactness", weingarten_exactness},
      {10, "weight reduction at q=0", weight_reduction},
      {11, "symmetry breaking audit", symmetry_breaking},
      {12, "large-d limit", large_d_limit},
      {13, "partition engines", partition_engines},
  };

  std::set<int> failed;
  const auto start = Clock::now();
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note("exception: ", e.what());
    }
    if (!out.pass) failed.insert(c.id);
    std::printf("%s  %2d  %s  (%.1f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0));
    for (const auto& d : out.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
  }

  std::set<int> expected_run;
  for (int id : expected) {
    if (only.empty() || only.count(id)) expected_run.insert(id);
  }
  std::printf("total %.1f s; failing:", seconds_since(start));
  for (int id : failed) std::printf(" %d", id);
  std::printf("%s\n", failed.empty() ? " none" : "");
  if (failed != expected_run) {
    std::printf("failing set differs from the expected set\n");
    return 3;
  }
  return 0;
}

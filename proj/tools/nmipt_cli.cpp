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

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cli_support.hpp"
#include "nmipt/analysis.hpp"
#include "nmipt/oracle_check.hpp"
#include "nmipt/protocol.hpp"
#include "nmipt/replica.hpp"
#include "nmipt/statmech.hpp"
#include "nmipt/sweep.hpp"

namespace nmipt::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCheckFailed = 3;

struct Invocation {
  Json config;
  std::uint64_t hash = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json metadata(const Invocation& inv, const std::string& schema) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - inv.start).count();
  return Json{{"schema", schema},
              {"version", NMIPT_VERSION},
              {"config", inv.config},
              {"config_hash", hex64(inv.hash)},
              {"seed", get_or<std::uint64_t>(inv.config, "seed", 0)},
              {"started_at", utc_now()},
              {"wall_time_s", wall}};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_json(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

// Rethrows protocol validation errors with the config block prefixed.
template <class F>
auto with_prefix(const std::string& block, F&& f) {
  try {
    return f();
  } catch (const InvalidParams& e) {
    throw ConfigError(block + "." + e.what());
  }
}

std::vector<double> double_list(const Json& root, const std::string& path, std::vector<double> fallback) {
  return get_or<std::vector<double>>(root, path, std::move(fallback));
}

EntropyUnit output_unit(const Json& c) {
  return entropy_unit_from_string(get_or<std::string>(c, "output.entropy_unit", "bits"));
}

// q = 0 plus a logarithmic grid from 1e-5 to 1.
std::vector<double> default_q_grid(std::size_t per_decade) {
  if (per_decade == 0) throw ConfigError("sweep.q_per_decade: must be positive");
  std::vector<double> qs = {0.0};
  const std::size_t steps = 5 * per_decade;
  for (std::size_t i = 0; i <= steps; ++i) {
    qs.push_back(std::pow(10.0, -5.0 + static_cast<double>(i) / static_cast<double>(per_decade)));
  }
  qs.back() = 1.0;
  return qs;
}

int cmd_simulate(const Invocation& inv) {
  const Json& c = inv.config;
  const auto num_sites = require<std::size_t>(c, "protocol.L");
  const auto seed = get_or<std::uint64_t>(c, "seed", 0);
  auto params = ProtocolParams::defaults(num_sites, get_or<double>(c, "protocol.p", 0.0),
                                         get_or<double>(c, "protocol.q", 0.0), seed);
  params.t_total = get_or<std::size_t>(c, "protocol.t_total", params.t_total);
  params.t_burn_in = get_or<std::size_t>(c, "protocol.t_burn_in", params.t_burn_in);
  params.sample_stride = get_or<std::size_t>(c, "protocol.sample_stride", params.sample_stride);
  params.initial_state = with_prefix("protocol", [&] {
    return initial_state_from_string(get_or<std::string>(c, "protocol.initial_state", "product_zero"));
  });
  with_prefix("protocol", [&] { params.validate(); });
  const auto unit = output_unit(c);

  const auto record = run_trajectory(params);
  const auto csv_path = get_or<std::string>(c, "output.csv", "trajectory.csv");
  {
    auto out = open_output(csv_path);
    write_trajectory_csv(out, record, {seed, inv.hash, unit});
  }
  Json meta = metadata(inv, "nmipt.simulate/1");
  meta["csv"] = csv_path;
  meta["samples"] = record.samples.size();
  meta["final_rank"] = record.final_rank;
  write_json(get_or<std::string>(c, "output.json", csv_path + ".json"), meta);
  std::cerr << "wrote " << record.samples.size() << " samples to " << csv_path << "\n";
  return kExitOk;
}

ClassifyOptions classify_options(const Json& c) {
  ClassifyOptions o;
  o.threshold = get_or<double>(c, "classify.threshold", o.threshold);
  o.log_window = double_list(c, "classify.log_window", o.log_window);
  o.exp_window = double_list(c, "classify.exp_window", o.exp_window);
  if (!(o.threshold > 0.0)) throw ConfigError("classify.threshold: must be positive");
  return o;
}

int cmd_sweep(const Invocation& inv, std::size_t threads) {
  const Json& c = inv.config;
  const auto ls = require<std::vector<std::size_t>>(c, "sweep.L");
  const auto ps = require<std::vector<double>>(c, "sweep.p");
  const auto qs = find_path(c, "sweep.q") ? require<std::vector<double>>(c, "sweep.q")
                                          : default_q_grid(get_or<std::size_t>(c, "sweep.q_per_decade", 2));
  if (ls.empty() || ps.empty() || qs.empty()) throw ConfigError("sweep: L, p and q lists must be non-empty");
  std::vector<SweepPoint> grid;
  for (auto l : ls) {
    for (double p : ps) {
      for (double q : qs) grid.push_back({l, p, q});
    }
  }
  SweepSettings s;
  s.realizations = get_or<std::size_t>(c, "sweep.realizations", 1);
  s.master_seed = get_or<std::uint64_t>(c, "seed", 0);
  s.threads = threads;
  if (find_path(c, "sweep.t_total")) s.t_total = require<std::size_t>(c, "sweep.t_total");
  if (find_path(c, "sweep.t_burn_in")) s.t_burn_in = require<std::size_t>(c, "sweep.t_burn_in");
  if (find_path(c, "sweep.sample_stride")) s.sample_stride = require<std::size_t>(c, "sweep.sample_stride");
  if (find_path(c, "sweep.relaxation_per_q")) s.relaxation_per_q = require<double>(c, "sweep.relaxation_per_q");
  s.initial_state = with_prefix("sweep", [&] {
    return initial_state_from_string(get_or<std::string>(c, "sweep.initial_state", "product_zero"));
  });
  const auto classify = classify_options(c);
  const auto unit = output_unit(c);
  const auto table = with_prefix("sweep", [&] { return run_sweep(grid, s); });

  const Provenance prov{s.master_seed, inv.hash, unit};
  const auto csv_path = get_or<std::string>(c, "output.csv", "sweep.csv");
  {
    auto out = open_output(csv_path);
    write_sweep_csv(out, table, prov);
  }
  Json meta = metadata(inv, "nmipt.sweep/1");
  meta["csv"] = csv_path;
  meta["rows"] = table.rows.size();
  meta["parameter_hash"] = hex64(table.parameter_hash);
  // Not part of the CSV schema; fit picks these up when the sidecar is present.
  Json extra = Json::array();
  for (const auto& r : table.rows) {
    extra.push_back({{"L", r.point.num_sites}, {"p", r.point.p}, {"q", r.point.q}, {"s_a_stderr", r.s_a_stderr},
                     {"s_ab_stderr", r.s_ab_stderr}});
  }
  meta["point_stderrs"] = extra;
  if (const Json* regions = find_path(c, "output.regions_csv"); regions && regions->is_string()) {
    std::vector<RegionCell> cells;
    try {
      cells = classify_regions(table, classify);
    } catch (const FitError& e) {
      throw ConfigError(std::string("classify: ") + e.what());
    }
    auto out = open_output(regions->get<std::string>());
    write_region_csv(out, cells, prov);
    meta["regions_csv"] = *regions;
  }
  write_json(get_or<std::string>(c, "output.json", csv_path + ".json"), meta);
  std::cerr << "wrote " << table.rows.size() << " rows to " << csv_path << "\n";
  return kExitOk;
}

Json fit_to_json(const FitResult& f) {
  Json coeffs = Json::object();
  Json errs = Json::object();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    coeffs[f.names[i]] = f.coefficients[i];
    errs[f.names[i]] = f.stderrs.at(i);
  }
  return Json{{"model", to_string(f.model)}, {"window", f.window},       {"coefficients", coeffs},
              {"stderrs", errs},             {"rss", f.rss},                {"r_squared", f.r_squared}, {"normal_residual", f.normal_residual}};
}

int cmd_fit(const Invocation& inv) {
  const Json& c = inv.config;
  const auto input = require<std::string>(c, "fit.input");
  std::ifstream in(input);
  if (!in) throw ConfigError("fit.input: cannot open " + input);
  SweepTable table = read_sweep_csv(in);
  const auto sidecar = get_or<std::string>(c, "fit.sidecar", input + ".json");
  if (std::ifstream side(sidecar); side) {
    Json j;
    try {
      j = Json::parse(side);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("fit.sidecar: " + std::string(e.what()));
    }
    if (const Json* errs = find_path(j, "point_stderrs"); errs && errs->is_array()) {
      for (const auto& e : *errs) {
        const SweepPoint pt{e.at("L").get<std::size_t>(), e.at("p").get<double>(), e.at("q").get<double>()};
        auto it = std::find_if(table.rows.begin(), table.rows.end(), [&](const auto& r) { return r.point == pt; });
        if (it == table.rows.end()) continue;
        it->s_a_stderr = e.at("s_a_stderr").get<double>();
        it->s_ab_stderr = e.at("s_ab_stderr").get<double>();
      }
    }
  }

  Json results = Json::array();
  const Json* fits = find_path(c, "fit.fits");
  if (fits != nullptr && !fits->is_array()) throw ConfigError("fit.fits: must be a list");
  for (std::size_t i = 0; fits != nullptr && i < fits->size(); ++i) {
    const Json& spec = (*fits)[i];
    const std::string where = "fit.fits[" + std::to_string(i) + "]";
    const auto model = get_or<std::string>(spec, "model", "");
    FitOptions opt;
    opt.weighted = get_or<bool>(spec, "weighted", false);
    const auto base = get_or<std::string>(spec, "log_base", "e");
    if (base != "e" && base != "2") throw ConfigError(where + ".log_base: expected \"e\" or \"2\"");
    opt.log_base = base == "2" ? LogBase::kTwo : LogBase::kNatural;
    try {
      Json entry;
      if (model == "log_inv_q") {
        const auto l = require<std::size_t>(spec, "L");
        const auto p = require<double>(spec, "p");
        const auto fit = fit_log_region(table, l, p, double_list(spec, "q_window", desk_log_window()), opt);
        entry = fit_to_json(fit);
        entry["log_base"] = base;
        if (const auto* q0 = table.find({l, p, 0.0})) {
          entry["crossover_q"] = crossover_q(fit, q0->i_ab_mean, opt.log_base);
        }
        entry["L"] = l;
        entry["p"] = p;
      } else if (model == "exponential_q") {
        const auto l = require<std::size_t>(spec, "L");
        const auto p = require<double>(spec, "p");
        entry = fit_to_json(fit_exp_region(table, l, p, double_list(spec, "q_window", reference_exp_window()), opt));
        entry["L"] = l;
        entry["p"] = p;
      } else if (model == "volume_log") {
        const auto p = require<double>(spec, "p");
        entry = fit_to_json(fit_volume_log(table, p, opt));
        entry["p"] = p;
      } else {
        throw ConfigError(where + ".model: expected log_inv_q, exponential_q or volume_log");
      }
      results.push_back(entry);
    } catch (const FitError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  Json out = metadata(inv, "nmipt.fit/1");
  out["fits"] = results;
  if (get_or<bool>(c, "fit.estimate_pc.enabled", false)) {
    PcOptions o;
    o.sizes = get_or<std::vector<std::size_t>>(c, "fit.estimate_pc.sizes", {});
    o.significance = get_or<double>(c, "fit.estimate_pc.significance", 2.0);
    try {
      const auto est = estimate_pc(table, o);
      out["estimate_pc"] = Json{{"p_low", est.p_low}, {"p_high", est.p_high}, {"sizes", est.sizes},
                                {"p", est.ps},        {"alpha", est.alphas},  {"alpha_stderr", est.alpha_stderrs},
                                {"beta", est.betas}};
    } catch (const FitError& e) {
      throw ConfigError(std::string("fit.estimate_pc: ") + e.what());
    }
  }
  write_json(get_or<std::string>(c, "output.json", "-"), out);
  return kExitOk;
}

template <class S>
std::string scalar_text(const S& v) {
  if constexpr (std::is_same_v<S, mpq_class>) {
    return v.get_str();
  } else {
    return format_double(v);
  }
}

template <class S>
int run_statmech(const Invocation& inv, const S& p, const S& q) {
  const Json& c = inv.config;
  const auto width = require<std::size_t>(c, "statmech.width");
  const auto depth = require<std::size_t>(c, "statmech.depth");
  const auto region = get_or<std::size_t>(c, "statmech.region_size", 1);
  const auto n = get_or<int>(c, "statmech.n", 2);
  const auto k = get_or<int>(c, "statmech.k", 1);
  const auto d = require<long>(c, "statmech.d");
  const auto att_name = get_or<std::string>(c, "statmech.attachment", "vertical");
  if (att_name != "vertical" && att_name != "zigzag") {
    throw ConfigError("statmech.attachment: expected vertical or zigzag");
  }
  const auto norm_name = get_or<std::string>(c, "statmech.projection_norm", "linear");
  if (norm_name != "linear" && norm_name != "power") throw ConfigError("statmech.projection_norm: expected linear or power");
  const auto engine_name = get_or<std::string>(c, "statmech.engine", "both");
  if (engine_name != "both" && engine_name != "brute_force" && engine_name != "transfer_matrix") {
    throw ConfigError("statmech.engine: expected both, brute_force or transfer_matrix");
  }
  if (n < 2 || k < 1) throw ConfigError("statmech.n/k: need n >= 2 and k >= 1");
  EngineLimits limits;
  limits.brute_force_budget = get_or<double>(c, "statmech.brute_force_budget", limits.brute_force_budget);
  limits.transfer_matrix_limit = get_or<double>(c, "statmech.transfer_matrix_limit", limits.transfer_matrix_limit);

  HoneycombPatch patch;
  try {
    patch = HoneycombPatch::make(width, depth, region, att_name == "zigzag" ? Attachment::kZigzag : Attachment::kVertical);
  } catch (const InconsistentPatch& e) {
    throw ConfigError(std::string("statmech: ") + e.what());
  }
  const int order = n * k + 1;
  BondWeights<S> weights;
  try {
    weights = make_bond_weights<S>(order, d, p, q, norm_name == "power" ? ProjectionNorm::kPower : ProjectionNorm::kLinear);
  } catch (const SingularGram& e) {
    throw ConfigError(std::string("statmech.d: ") + e.what());
  }
  const auto boundary = boundary_permutation(n, k);

  Json engines = Json::object();
  std::optional<S> z_a, z_empty;
  bool agree = true;
  for (Engine e : {Engine::kBruteForce, Engine::kTransferMatrix}) {
    const std::string name = e == Engine::kBruteForce ? "brute_force" : "transfer_matrix";
    if (engine_name != "both" && engine_name != name) continue;
    const S a = partition_function(patch, weights, boundary, e, limits);
    const S empty = partition_function(patch, weights, std::nullopt, e, limits);
    engines[name] = Json{{"z_a", scalar_text(a)}, {"z_empty", scalar_text(empty)}};
    if (z_a) {
      agree = detail::scalar_equal(*z_a, a) && detail::scalar_equal(*z_empty, empty);
    } else {
      z_a = a;
      z_empty = empty;
    }
  }
  const S renyi = renyi_from_partition(*z_a, *z_empty, n, k);

  Json out = metadata(inv, "nmipt.statmech/1");
  out["Q"] = order;
  out["exact"] = std::is_same_v<S, mpq_class>;
  out["z_a"] = scalar_text(*z_a);
  out["z_empty"] = scalar_text(*z_empty);
  out["z_a_value"] = detail::to_double(*z_a);
  out["z_empty_value"] = detail::to_double(*z_empty);
  out["z_a_equals_z_empty"] = detail::scalar_equal(*z_a, *z_empty);
  out["renyi"] = detail::to_double(renyi);
  out["engines"] = engines;
  out["cross_check"] = engine_name == "both" ? (agree ? "agree" : "disagree") : "single engine";
  if (order <= 4) {
    const auto rep = symmetry_audit(weights);
    Json audit{{"pairs_tested", rep.pairs_tested},
               {"passing", rep.passing.size()},
               {"diagonal_passing", rep.diagonal_passing},
               {"off_diagonal_passing", rep.off_diagonal_passing},
               {"swap_holds", rep.swap_holds},
               {"verdict", rep.full_group() ? "full symmetry" : rep.only_diagonal() ? "diagonal only" : "other"}};
    if (rep.witness) {
      audit["witness"] = Json{{"h_left", rep.witness->h_left.str()}, {"h_right", rep.witness->h_right.str()},
                              {"g", rep.witness->g.str()},           {"g_prime", rep.witness->g_prime.str()},
                              {"lhs", rep.witness->lhs},             {"rhs", rep.witness->rhs}};
    }
    out["audit"] = audit;
  } else {
    out["audit"] = "skipped for Q > 4";
  }
  write_json(get_or<std::string>(c, "output.json", "-"), out);
  return agree ? kExitOk : kExitCheckFailed;
}

int cmd_statmech(const Invocation& inv) {
  const Json& c = inv.config;
  const double p = get_or<double>(c, "statmech.p", 0.0);
  const double q = get_or<double>(c, "statmech.q", 0.0);
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("statmech.p: must lie in [0, 1]");
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("statmech.q: must lie in [0, 1]");
  const int order = get_or<int>(c, "statmech.n", 2) * get_or<int>(c, "statmech.k", 1) + 1;
  const auto numeric = get_or<std::string>(c, "statmech.numeric", "auto");
  if (numeric != "auto" && numeric != "exact" && numeric != "float") {
    throw ConfigError("statmech.numeric: expected auto, exact or float");
  }
  const bool exact = numeric == "exact" || (numeric == "auto" && order <= 3);
  if (exact) return run_statmech<mpq_class>(inv, rational_from_decimal(p), rational_from_decimal(q));
  return run_statmech<double>(inv, p, q);
}

int cmd_oracle_check(const Invocation& inv) {
  const Json& c = inv.config;
  OracleSettings s;
  s.circuits = get_or<std::size_t>(c, "oracle.circuits", s.circuits);
  s.min_sites = get_or<std::size_t>(c, "oracle.min_L", s.min_sites);
  s.max_sites = get_or<std::size_t>(c, "oracle.max_L", s.max_sites);
  s.depth_factor = get_or<std::size_t>(c, "oracle.depth_factor", s.depth_factor);
  s.p = get_or<double>(c, "oracle.p", -1.0);
  s.q = get_or<double>(c, "oracle.q", -1.0);
  s.seed = get_or<std::uint64_t>(c, "seed", 0);
  const double tol = get_or<double>(c, "oracle.tolerance", 1e-9);
  if (s.max_sites > 6) throw ConfigError("oracle.max_L: must be at most 6");
  OracleReport rep;
  try {
    rep = run_oracle_check(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("oracle: ") + e.what());
  }
  if (s.circuits == 0) std::cerr << "warning: oracle.circuits = 0, nothing was checked\n";
  Json out = metadata(inv, "nmipt.oracle/1");
  out["circuits"] = rep.circuits;
  out["comparisons"] = rep.comparisons;
  out["max_entropy_discrepancy"] = rep.max_entropy_discrepancy;
  out["max_probability_discrepancy"] = rep.max_probability_discrepancy;
  out["max_state_discrepancy"] = rep.max_state_discrepancy;
  out["tolerance"] = tol;
  out["passed"] = rep.passed(tol);
  write_json(get_or<std::string>(c, "output.json", "-"), out);
  return rep.passed(tol) ? kExitOk : kExitCheckFailed;
}

}  // namespace
}  // namespace nmipt::cli

int main(int argc, char** argv) {
  using namespace nmipt::cli;
  CLI::App app{"Clifford circuits with monitored and unmonitored measurements"};
  app.set_version_flag("--version", std::string(NMIPT_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::size_t threads = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override a config leaf, e.g. --set protocol.L=16");
    sub->add_option("-j,--threads", threads, "Worker threads (default: config 'threads' or 1)");
  };
  auto* simulate = app.add_subcommand("simulate", "Run one trajectory and write its entropy samples");
  auto* sweep = app.add_subcommand("sweep", "Average trajectories over an (L, p, q) grid");
  auto* fit = app.add_subcommand("fit", "Fit scaling laws to a sweep CSV");
  auto* statmech = app.add_subcommand("statmech", "Evaluate the replica lattice model on a small patch");
  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the stabilizer engine against dense matrices");
  for (auto* sub : {simulate, sweep, fit, statmech, oracle}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Invocation inv;
    inv.config = load_config(config_path);
    for (const auto& o : overrides) apply_override(inv.config, o);
    inv.hash = config_hash(inv.config);
    const std::size_t workers = threads > 0 ? threads : get_or<std::size_t>(inv.config, "threads", 1);
    if (*simulate) return cmd_simulate(inv);
    if (*sweep) return cmd_sweep(inv, workers);
    if (*fit) return cmd_fit(inv);
    if (*statmech) return cmd_statmech(inv);
    return cmd_oracle_check(inv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const nmipt::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

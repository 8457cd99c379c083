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

#include "cli_support.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nmipt::cli {

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  try {
    Json j = Json::parse(in, nullptr, true, true);
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
}

void apply_override(Json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key.path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    value = text;
  }
  Json* node = &root;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError(path + ": empty path component");
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigError(path + ": '" + key + "' is under a non-object value");
      *node = Json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
}

const Json* find_path(const Json& root, const std::string& path) {
  const Json* node = &root;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object()) return nullptr;
    auto it = node->find(key);
    if (it == node->end()) return nullptr;
    node = &*it;
    if (dot == std::string::npos) return node;
    start = dot + 1;
  }
}

std::uint64_t config_hash(const Json& root) {
  Json copy = root;
  if (copy.is_object()) {
    copy.erase("output");
    copy.erase("threads");
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : copy.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

EntropyUnit entropy_unit_from_string(const std::string& name) {
  if (name == "bits") return EntropyUnit::kBits;
  if (name == "nats") return EntropyUnit::kNats;
  throw ConfigError("output.entropy_unit: expected bits or nats, got '" + name + "'");
}

std::string to_string(EntropyUnit unit) { return unit == EntropyUnit::kBits ? "bits" : "nats"; }

namespace {

double unit_scale(EntropyUnit unit) { return unit == EntropyUnit::kBits ? 1.0 : std::log(2.0); }

void write_preamble(std::ostream& out, const char* kind, const Provenance& prov) {
  out << "# nmipt " << kind << " v" << kCsvSchemaVersion << " seed=" << prov.seed
      << " config_hash=" << hex64(prov.config_hash) << " unit=" << to_string(prov.unit) << "\n";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("sweep csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, const Provenance& prov) {
  write_preamble(out, "trajectory", prov);
  out << kTrajectoryHeader << "\n";
  const double k = unit_scale(prov.unit);
  auto e = [&](int bits) { return prov.unit == EntropyUnit::kBits ? std::to_string(bits) : format_double(k * bits); };
  for (const auto& s : record.samples) {
    out << s.t << ',' << e(s.report.s_a) << ',' << e(s.report.s_b) << ',' << e(s.report.s_ab) << ','
        << e(s.report.i_ab) << ',' << s.report.rank_k << "\n";
  }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table, const Provenance& prov) {
  write_preamble(out, "sweep", prov);
  out << kSweepHeader << "\n";
  const double k = unit_scale(prov.unit);
  for (const auto& r : table.rows) {
    out << r.point.num_sites << ',' << format_double(r.point.p) << ',' << format_double(r.point.q) << ','
        << format_double(k * r.i_ab_mean) << ',' << format_double(k * r.i_ab_stderr) << ','
        << format_double(k * r.s_a_mean) << ',' << format_double(k * r.s_ab_mean) << ',' << r.n_realizations
        << "\n";
  }
}

void write_region_csv(std::ostream& out, const std::vector<RegionCell>& cells, const Provenance& prov) {
  write_preamble(out, "regions", prov);
  out << kRegionHeader << "\n";
  for (const auto& c : cells) {
    out << c.point.num_sites << ',' << format_double(c.point.p) << ',' << format_double(c.point.q) << ','
        << to_string(c.label) << ',' << format_double(c.deviation_from_q0) << ','
        << format_double(c.deviation_from_log) << ',' << format_double(c.deviation_from_exp) << "\n";
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("sweep csv: empty input");
  const std::string prefix = "# nmipt sweep v";
  if (line.rfind(prefix, 0) != 0) throw ConfigError("sweep csv: missing '# nmipt sweep' preamble");
  SweepTable table;
  EntropyUnit unit = EntropyUnit::kBits;
  {
    std::istringstream is(line.substr(prefix.size()));
    int version = -1;
    is >> version;
    if (version != kCsvSchemaVersion) {
      throw ConfigError("sweep csv: unsupported schema version " + std::to_string(version));
    }
    std::string field;
    while (is >> field) {
      if (field.rfind("seed=", 0) == 0) table.master_seed = std::stoull(field.substr(5));
      if (field.rfind("unit=", 0) == 0) unit = entropy_unit_from_string(field.substr(5));
    }
  }
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw ConfigError("sweep csv: header must be '" + std::string(kSweepHeader) + "'");
  }
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw ConfigError("sweep csv line " + std::to_string(line_no) + ": expected 8 columns");
    PointSummary r;
    r.point.num_sites = static_cast<std::size_t>(parse_double(f[0], line_no));
    r.point.p = parse_double(f[1], line_no);
    r.point.q = parse_double(f[2], line_no);
    r.i_ab_mean = parse_double(f[3], line_no);
    r.i_ab_stderr = parse_double(f[4], line_no);
    r.s_a_mean = parse_double(f[5], line_no);
    r.s_ab_mean = parse_double(f[6], line_no);
    r.n_realizations = static_cast<std::size_t>(parse_double(f[7], line_no));
    const double back = 1.0 / unit_scale(unit);
    r.i_ab_mean *= back;
    r.i_ab_stderr *= back;
    r.s_a_mean *= back;
    r.s_ab_mean *= back;
    table.rows.push_back(r);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const PointSummary& a, const PointSummary& b) { return a.point < b.point; });
  return table;
}

}  // namespace nmipt::cli

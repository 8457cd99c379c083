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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nmipt/analysis.hpp"
#include "nmipt/protocol.hpp"
#include "nmipt/sweep.hpp"

namespace nmipt::cli {

using Json = nlohmann::json;

/// Bad or missing configuration; the message starts with the dotted path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a JSON config file; an empty path yields an empty object.
Json load_config(const std::string& path);

/// Applies "a.b.c=value". The value is parsed as JSON when possible and kept
/// as a string otherwise.
void apply_override(Json& root, const std::string& assignment);

/// Node at a dotted path, or nullptr.
const Json* find_path(const Json& root, const std::string& path);

template <class T>
T get_or(const Json& root, const std::string& path, const T& fallback) {
  const Json* node = find_path(root, path);
  if (node == nullptr || node->is_null()) return fallback;
  try {
    return node->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(path + ": unexpected type " + std::string(node->type_name()));
  }
}

template <class T>
T require(const Json& root, const std::string& path) {
  const Json* node = find_path(root, path);
  if (node == nullptr || node->is_null()) throw ConfigError(path + ": required");
  return get_or<T>(root, path, T{});
}

/// FNV-1a over the canonical dump of the config without its "output" and
/// "threads" entries.
std::uint64_t config_hash(const Json& root);
std::string hex64(std::uint64_t v);

/// Shortest round-trip text for a double.
std::string format_double(double v);

constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kTrajectoryHeader = "t,s_a,s_b,s_ab,i_ab,rank_k";
inline constexpr const char* kSweepHeader = "L,p,q,i_ab_mean,i_ab_stderr,s_a_mean,s_ab_mean,n_realizations";
inline constexpr const char* kRegionHeader = "L,p,q,label,dev_q0,dev_log,dev_exp";

/// Entropies are computed in bits; nats only rescale what is written.
enum class EntropyUnit { kBits, kNats };

EntropyUnit entropy_unit_from_string(const std::string& name);
std::string to_string(EntropyUnit unit);

struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  EntropyUnit unit = EntropyUnit::kBits;
};

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, const Provenance& prov);
void write_sweep_csv(std::ostream& out, const SweepTable& table, const Provenance& prov);
void write_region_csv(std::ostream& out, const std::vector<RegionCell>& cells, const Provenance& prov);

/// Reads a sweep CSV. Throws ConfigError on an unknown schema version or a
/// header mismatch. Trajectory lists and the S_A/S_AB stderr columns are not
/// stored, so they come back empty / zero.
/// Entropy columns come back in bits whatever unit the file was written in.
SweepTable read_sweep_csv(std::istream& in);

}  // namespace nmipt::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "conduct/dgp.hpp"
#include "conduct/power.hpp"

namespace conduct {

inline constexpr const char* kVersion = "0.1.0";

// Everything a CLI command needs. The JSON form (see README) uses the same
// field names; a manifest written by to_json parses back to an equal config.
struct RunConfig {
  ParamConfig params;                // simulate, estimate (true demand), power base
  long T = 1000;                     // simulate
  std::uint64_t seed = 1;            // simulate; power uses grid.base_seed
  std::string out = "out";
  InstrumentKind regime = InstrumentKind::Benchmark;  // estimate
  GridSpec grid;                     // power
  double analytic_V = 1.0;           // analytic
  std::vector<long> analytic_T_values{100, 200, 1000, 2000, 5000, 10000};
  std::vector<double> analytic_theta_values{0.0, 0.05, 0.1, 0.2, 0.33, 0.5, 1.0};

  bool operator==(const RunConfig& o) const;
};

nlohmann::json to_json(const RunConfig& cfg);

// Unknown keys, wrong types and out-of-range values throw InvalidConfig naming
// the field. Keys written only into manifests (command, version, overrides)
// are accepted and ignored.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& overrides);

}  // namespace conduct

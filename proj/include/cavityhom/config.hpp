#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavityhom/sweep.hpp"

namespace cavityhom {

using Json = nlohmann::ordered_json;

struct HomBlock {
  int tau_stride = 0;  // 0 = pick a divisor of n_steps giving <= ~200 points per side
};

struct SweepBlock {
  SweepMode mode = SweepMode::identical;
  std::vector<SweepAxis> axes;
  std::optional<SystemRecord> reference;
  std::optional<OptimizerConfig> optimize;  // present = before/after optimized sweep
};

struct OptimizeBlock {
  SystemRecord reference;
  OptimizerConfig config;
  std::optional<DriveField> initial;  // defaults to the reference drive
};

// One run = one config file. Scalar keys may be overridden from the command
// line with --set section.key=value.
struct RunConfig {
  SystemRecord system;
  TimeGrid grid;
  std::string output_prefix;
  std::optional<HomBlock> hom;
  std::optional<SweepBlock> sweep;
  std::optional<OptimizeBlock> optimize;
};

// Parses and validates; unknown keys are rejected with their full path named.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// "section.key=value"; the value is parsed as JSON, falling back to a string.
void apply_override(Json& j, const std::string& assignment);

Json system_to_json(const SystemRecord& record);
Json drive_to_json(const DriveField& drive);
Json grid_to_json(const TimeGrid& grid);

}  // namespace cavityhom

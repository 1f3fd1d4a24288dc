#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cdlab/constructor.hpp"
#include "cdlab/criterion.hpp"
#include "cdlab/probes.hpp"

namespace cdlab {

using json = nlohmann::ordered_json;

enum class Command {
  CheckUnilateral,
  CheckBilateral,
  Schedule,
  Construct,
  ProbeTransitivity,
  ProbeBlowUpCollapse,
  ProbeMixing,
  SalasCompare,
};

const char* command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);

struct CheckParams {
  double epsilon = 0.1;
  std::int64_t q = 0;
  std::int64_t m_max = 1;
};

struct ScheduleParams {
  std::int64_t q_max = 1;
  std::int64_t m_search_cap = 1;
};

struct ConstructParams {
  TargetList targets;
  ScheduleParams schedule;
};

struct TransitivityParams {
  Ball source;
  std::vector<Ball> targets;
  std::int64_t n_max = 1;
};

struct BlowUpCollapseParams {
  Ball zero_ball;
  Ball v0;
  std::vector<Ball> targets;
  std::int64_t n_max = 1;
};

struct MixingParams {
  Ball source;
  std::vector<Ball> targets;
  std::int64_t n_from = 1;
  std::int64_t n_to = 1;
};

using CommandParams = std::variant<CheckParams, ScheduleParams, ConstructParams,
                                   TransitivityParams, BlowUpCollapseParams, MixingParams>;

/// A fully validated experiment description: the family, the space, exactly
/// one command with its parameters, and the normalized config document for
/// echoing into reports.
struct ExperimentConfig {
  Command command = Command::CheckUnilateral;
  SpaceSpec space;
  ShiftFamily family;
  CommandParams params;
  std::optional<std::string> out_path;
  std::vector<std::string> warnings;
  json echo;
};

/// Parses and validates a config document. Throws ConfigError with the path
/// of the offending field.
ExperimentConfig parse_config(const json& doc);

/// Reads, parses and validates a config file.
ExperimentConfig load_config_file(const std::string& path);

}  // namespace cdlab

#pragma once

#include "cdlab/config.hpp"

namespace cdlab {

/// Report plus the process exit code the CLI should return:
/// 0 for found/pass, 2 for not-found/fail. Hard errors are exceptions and
/// map to exit code 1 at the CLI boundary.
struct ExecutionResult {
  json report;
  int exit_code = 0;
};

/// Dispatches the config's command to the corresponding module operation and
/// assembles the structured report. Scans may use up to `threads` workers;
/// the report content does not depend on the thread count (only the
/// wall_time_ms field varies between runs).
ExecutionResult execute(const ExperimentConfig& config, unsigned threads = 1);

// Serialization helpers shared by reports and tests.
json vector_to_json(const SeqVector& v);
SeqVector vector_from_json(const json& j, IndexDomain domain, const std::string& path);
json margins_to_json(const std::vector<MarginEntry>& margins);
json report_without_wall_time(json report);

}  // namespace cdlab

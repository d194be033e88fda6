#pragma once

// Runs one named pipeline on an input document and renders the report as JSON
// (plus DOT for the tree-building pipelines).

#include <string>
#include <vector>

#include "folred/error.hpp"

namespace folred {

struct PipelineConfig {
  std::string pipeline = "classify";
  int order = 12;
  int depth_limit = 24;
  bool timing = false;  // adds wall-clock timings, which makes reports non-reproducible
};

struct PipelineReport {
  ErrorCode status = ErrorCode::ok;
  std::string json;
  std::string dot;  // empty unless a tree was built
};

inline constexpr int kReportSchemaVersion = 1;

const std::vector<std::string>& pipeline_names();

/// Never throws for bad input; failures are reported in `status` and in the JSON.
PipelineReport run_pipeline(const std::string& document, const PipelineConfig& cfg);

}  // namespace folred

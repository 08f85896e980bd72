#pragma once

#include <string>

#include "cmrisps/pipeline.hpp"

// JSON config loading for scenarios and sweeps. Every field is optional
// and defaults to the standard experiment constants; unknown keys are
// rejected so typos fail loudly.

namespace cmrisps {

struct RunConfig {
  Scenario scenario;
  PipelineConfig pipeline;
  SweepSpec sweep;  // scenario/pipeline duplicated inside for run_sweep
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);
RunConfig default_config();

}  // namespace cmrisps

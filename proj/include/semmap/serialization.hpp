#pragma once

#include <string>
#include <vector>

#include "semmap/pipeline.hpp"
#include "semmap/simulator.hpp"

namespace semmap {

// Scenario config: one top-level JSON object (schema in README).
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig scenario_from_json_text(const std::string& text);

// Tracker + fitting parameters; every key optional, defaults as in the
// AssociationConfig / FitConfig declarations.
PipelineConfig load_pipeline_config(const std::string& path);
PipelineConfig pipeline_config_from_json_text(const std::string& text);

// Sensor logs and correction events as line-delimited JSON. Round trips
// are byte-identical.
void save_log(const LogData& log, const std::string& path);
LogData load_log(const std::string& path);

void save_events(const std::vector<CorrectionEvent>& events,
                 const std::string& path);
std::vector<CorrectionEvent> load_events(const std::string& path);

// Observed-truth mask: one "index flag" line per ground-truth object.
void save_mask(const std::vector<char>& mask, const std::string& path);
std::vector<char> load_mask(const std::string& path);

}  // namespace semmap

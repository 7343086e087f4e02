#pragma once

#include <cstdint>
#include <vector>

#include "semmap/simulator.hpp"
#include "semmap/tracker.hpp"

namespace semmap {

struct PipelineConfig {
  AssociationConfig assoc;
  FitConfig fit;
};

// A recorded sensor log: everything the tracker consumes. The camera
// model rides along in the header so replay needs no scenario file.
struct LogData {
  CameraIntrinsics camera{240.0, 240.0, 160.0, 120.0, 320, 240};
  double camera_height = 1.0;
  std::uint64_t seed = 1;
  std::vector<FrameRecord> frames;
};

struct PipelineResult {
  TrackerState tracker;
  int dropped_detections = 0;  // fit failures and empty back-projections
};

LogData log_from_scenario(const ScenarioConfig& cfg,
                          std::vector<FrameRecord> frames);

// Replays a log through back-projection, shape fitting, association and
// filtering, applying correction events (re-anchoring) as their
// timestamps pass. Per-detection robot poses come from the buffered
// odometry at the detection timestamp.
PipelineResult run_tracking(const LogData& log,
                            const std::vector<CorrectionEvent>& events,
                            const PipelineConfig& cfg);

}  // namespace semmap

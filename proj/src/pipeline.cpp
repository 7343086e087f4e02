#include "semmap/pipeline.hpp"

namespace semmap {

namespace {

constexpr std::uint64_t kFitStream = 0xf17c;

}  // namespace

LogData log_from_scenario(const ScenarioConfig& cfg,
                          std::vector<FrameRecord> frames) {
  LogData log;
  log.camera = cfg.camera;
  log.camera_height = cfg.camera_height;
  log.seed = cfg.seed;
  log.frames = std::move(frames);
  return log;
}

PipelineResult run_tracking(const LogData& log,
                            const std::vector<CorrectionEvent>& events,
                            const PipelineConfig& cfg) {
  PipelineResult result;
  PoseBuffer buf;
  // Current believed pose of every pose-graph node, updated as
  // corrections come in; reanchor needs the pre-correction values.
  std::map<std::int64_t, Pose2D> node_poses;

  std::vector<CorrectionEvent> pending = events;
  std::sort(pending.begin(), pending.end(),
            [](const CorrectionEvent& a, const CorrectionEvent& b) {
              return a.timestamp < b.timestamp;
            });
  std::size_t next_event = 0;

  auto apply_event = [&](const CorrectionEvent& ev) {
    result.tracker = reanchor(result.tracker, ev.corrections, node_poses);
    for (const auto& [node, pose] : ev.corrections) node_poses[node] = pose;
  };

  for (std::size_t fi = 0; fi < log.frames.size(); ++fi) {
    const FrameRecord& frame = log.frames[fi];
    while (next_event < pending.size() &&
           pending[next_event].timestamp <= frame.timestamp)
      apply_event(pending[next_event++]);

    buf.push(frame.timestamp, frame.odom_pose);
    node_poses[frame.anchor_node] = frame.odom_pose;

    std::vector<ObjectObservation> observations;
    for (std::size_t di = 0; di < frame.detections.size(); ++di) {
      const DetectionRecord& rec = frame.detections[di];
      const Pose2D robot = pose_at(buf, rec.det.timestamp);
      const PointCloud cloud_cam =
          backproject_box(rec.patch, log.camera, rec.det.box);
      if (cloud_cam.points.empty()) {
        ++result.dropped_detections;
        continue;
      }
      const PointCloud cloud_map = transform_cloud(
          cloud_cam, camera_pose_on_robot(robot, log.camera_height));
      try {
        observations.push_back(
            extract_observation(rec.det, cloud_map, robot, cfg.fit,
                                mix_seed(log.seed ^ kFitStream, fi, di)));
      } catch (const FitError&) {
        ++result.dropped_detections;
      }
    }

    result.tracker = step(result.tracker, observations, frame.odom_pose,
                          frame.anchor_node, cfg.assoc);
  }

  while (next_event < pending.size()) apply_event(pending[next_event++]);
  return result;
}

}  // namespace semmap

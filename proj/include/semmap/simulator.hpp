#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semmap/map_io.hpp"
#include "semmap/random.hpp"
#include "semmap/shape_fitting.hpp"

namespace semmap {

// Depth noise is slaved to the image noise level: sigma_d = 0.1 * sigma_i.
struct SensorNoiseModel {
  double sigma_i = 0.0;
  double sigma_d() const { return 0.1 * sigma_i; }
};

// A simulated object: doors are planar wall patches (extent.x wide,
// extent.z tall, facing along pose.theta), everything else is an
// ellipsoidal blob with axis extents extent (full sizes, resting on the
// floor).
struct WorldObject {
  ClassLabel class_label = ClassLabel::door;
  Pose2D pose;
  Eigen::Vector3d extent = Eigen::Vector3d::Zero();  // zero = class default
};

Eigen::Vector3d default_extent(ClassLabel label);

struct ScenarioConfig {
  // World: either an existing grid file or a generated corridor.
  std::string grid_path;
  double corridor_length = 20.0;
  double corridor_width = 4.0;
  double resolution = 0.05;
  std::vector<WorldObject> objects;

  std::vector<Pose2D> waypoints;  // theta ignored, heading follows motion
  double speed = 1.0;
  double frame_rate = 15.0;

  CameraIntrinsics camera{240.0, 240.0, 160.0, 120.0, 320, 240};
  double camera_height = 1.0;  // level camera at fixed mount height
  double fov_deg = 60.0;
  double detect_range = 6.0;
  double p_detect = 1.0;
  double clutter_rate = 0.0;
  SensorNoiseModel noise;
  double drift_rate = 0.0;  // meters of odometry drift per meter traveled
  std::vector<double> loop_closure_at;
  std::uint64_t seed = 1;
};

struct DetectionRecord {
  Detection det;
  DepthPatch patch;
};

struct FrameRecord {
  double timestamp = 0.0;
  Pose2D true_pose;
  Pose2D odom_pose;
  std::vector<DetectionRecord> detections;
  std::int64_t anchor_node = 0;
};

struct CorrectionEvent {
  double timestamp = 0.0;
  std::map<std::int64_t, Pose2D> corrections;
};

struct ScenarioResult {
  OccupancyGrid grid;
  std::vector<FrameRecord> log;
  std::vector<CorrectionEvent> events;
  std::vector<GroundTruthAnnotation> truth;
  std::vector<char> observed_truth;  // truth objects that entered sensing range
};

// Rectangular free area with a one-cell occupied border.
OccupancyGrid make_corridor_grid(double length, double width,
                                 double resolution);

// Constant-speed piecewise-linear trajectory sampled at frame_rate,
// heading along the motion direction (outgoing segment at vertices).
std::vector<std::pair<double, Pose2D>> generate_trajectory(
    const ScenarioConfig& cfg);

// Range + field-of-view + line-of-sight test. The sight segment is walked
// cell by cell across the grid; the endpoint cells themselves do not
// occlude (wall-mounted objects sit inside occupied cells).
bool visible(const Pose2D& robot, const Pose2D& obj, const OccupancyGrid& grid,
             double fov_deg, double detect_range);

// One frame of simulated perception from the true pose: detections with
// analytically ray-traced depth patches, per-pixel depth noise, missed
// detections driven by the intensity noise level, and Poisson clutter.
// Only objects whose full projected box fits the image are detected.
FrameRecord synthesize_frame(double t, const Pose2D& robot_true,
                             const Pose2D& odom_pose, const OccupancyGrid& grid,
                             const ScenarioConfig& cfg, RandomSource& rng,
                             std::int64_t anchor_node);

// Full deterministic rollout: trajectory, per-frame logs with drifting
// odometry, loop-closure correction events snapping past nodes to their
// true poses, and ground-truth annotations.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace semmap

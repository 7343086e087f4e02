#include "semmap/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semmap {

namespace {

constexpr std::uint64_t kDriftStream = 0xd21f;
constexpr std::uint64_t kFrameStream = 0xf0a3;

struct CameraFrame {
  Pose3D pose;
  Eigen::Matrix3d rot_inv;

  explicit CameraFrame(const Pose3D& p)
      : pose(p), rot_inv(p.rotation.toRotationMatrix().transpose()) {}
  Eigen::Vector3d to_camera(const Eigen::Vector3d& p_map) const {
    return rot_inv * (p_map - pose.translation);
  }
};

// Geometry of one object, precomputed in the map frame.
struct ObjectModel {
  bool planar = false;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  // planar: unit normal / width axis, half sizes
  Eigen::Vector3d normal = Eigen::Vector3d::UnitX();
  Eigen::Vector3d width_axis = Eigen::Vector3d::UnitY();
  double half_w = 0.0;
  double half_h = 0.0;
  // blob: ellipsoid semi-axes
  Eigen::Vector3d semi = Eigen::Vector3d::Ones();

  std::vector<Eigen::Vector3d> corners() const {
    std::vector<Eigen::Vector3d> out;
    if (planar) {
      for (double su : {-1.0, 1.0})
        for (double sv : {-1.0, 1.0})
          out.push_back(center + su * half_w * width_axis +
                        Eigen::Vector3d(0, 0, sv * half_h));
    } else {
      for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0})
          for (double sz : {-1.0, 1.0})
            out.push_back(center + Eigen::Vector3d(sx * semi.x(), sy * semi.y(),
                                                   sz * semi.z()));
    }
    return out;
  }

  // Depth along the camera ray s * dir_map from origin_map, or 0 on miss.
  // Blobs report the chord midpoint, so patch points fill the body and
  // their centroid estimates the object center without a surface bias.
  double ray_depth(const Eigen::Vector3d& origin,
                   const Eigen::Vector3d& dir) const {
    if (planar) {
      const double denom = normal.dot(dir);
      if (std::abs(denom) < 1e-12) return 0.0;
      const double s = normal.dot(center - origin) / denom;
      if (s <= 0.0) return 0.0;
      const Eigen::Vector3d q = origin + s * dir - center;
      if (std::abs(q.dot(width_axis)) > half_w) return 0.0;
      if (std::abs(q.z()) > half_h) return 0.0;
      return s;
    }
    const Eigen::Vector3d o = (origin - center).cwiseQuotient(semi);
    const Eigen::Vector3d d = dir.cwiseQuotient(semi);
    const double a = d.squaredNorm();
    const double b = 2.0 * o.dot(d);
    const double c = o.squaredNorm() - 1.0;
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) return 0.0;
    const double s = -b / (2.0 * a);  // chord midpoint
    return s > 0.0 ? s : 0.0;
  }
};

ObjectModel make_model(const WorldObject& obj) {
  const Eigen::Vector3d extent =
      obj.extent.isZero() ? default_extent(obj.class_label) : obj.extent;
  ObjectModel m;
  if (obj.class_label == ClassLabel::door) {
    m.planar = true;
    m.center = {obj.pose.x, obj.pose.y, 0.5 * extent.z()};
    m.normal = {std::cos(obj.pose.theta), std::sin(obj.pose.theta), 0.0};
    m.width_axis = {-std::sin(obj.pose.theta), std::cos(obj.pose.theta), 0.0};
    m.half_w = 0.5 * extent.x();
    m.half_h = 0.5 * extent.z();
  } else {
    m.center = {obj.pose.x, obj.pose.y, 0.5 * extent.z()};
    m.semi = 0.5 * extent;
  }
  return m;
}

// Projects the model's bounding corners; the detection box is their
// pixel AABB, and the object counts as detectable only when that box
// lies fully inside the image.
bool project_box(const ObjectModel& model, const CameraFrame& cam,
                 const CameraIntrinsics& intr, BoundingBox* box) {
  double u_min = 1e30, u_max = -1e30, v_min = 1e30, v_max = -1e30;
  for (const auto& corner : model.corners()) {
    const auto px = project_point(intr, cam.to_camera(corner));
    if (!px) return false;
    u_min = std::min(u_min, px->x());
    u_max = std::max(u_max, px->x());
    v_min = std::min(v_min, px->y());
    v_max = std::max(v_max, px->y());
  }
  if (u_min < 0.0 || v_min < 0.0 || u_max > intr.width - 1 ||
      v_max > intr.height - 1)
    return false;
  if (u_max - u_min < 2.0 || v_max - v_min < 2.0) return false;
  box->center_x = 0.5 * (u_min + u_max);
  box->center_y = 0.5 * (v_min + v_max);
  box->w = u_max - u_min;
  box->h = v_max - v_min;
  return true;
}

DepthPatch trace_patch(const ObjectModel& model, const CameraFrame& cam,
                       const CameraIntrinsics& intr, const BoundingBox& box,
                       double sigma_d, RandomSource& rng) {
  DepthPatch patch;
  patch.u0 = static_cast<int>(std::ceil(box.center_x - 0.5 * box.w));
  patch.v0 = static_cast<int>(std::ceil(box.center_y - 0.5 * box.h));
  const int u1 = static_cast<int>(std::floor(box.center_x + 0.5 * box.w));
  const int v1 = static_cast<int>(std::floor(box.center_y + 0.5 * box.h));
  patch.width = u1 - patch.u0 + 1;
  patch.height = v1 - patch.v0 + 1;
  patch.depths.assign(static_cast<std::size_t>(patch.width) * patch.height,
                      0.0);

  const Eigen::Matrix3d rot = cam.pose.rotation.toRotationMatrix();
  for (int v = patch.v0; v <= v1; ++v)
    for (int u = patch.u0; u <= u1; ++u) {
      const Eigen::Vector3d dir_cam((u - intr.cx) / intr.fx,
                                    (v - intr.cy) / intr.fy, 1.0);
      double depth = model.ray_depth(cam.pose.translation, rot * dir_cam);
      if (depth <= 0.0) continue;
      if (sigma_d > 0.0) depth += rng.normal(0.0, sigma_d);
      patch.depths[(v - patch.v0) * patch.width + (u - patch.u0)] = depth;
    }
  return patch;
}

}  // namespace

Eigen::Vector3d default_extent(ClassLabel label) {
  switch (label) {
    case ClassLabel::door: return {0.9, 0.05, 2.0};
    case ClassLabel::bench: return {1.2, 0.5, 0.45};
    case ClassLabel::trash_bin: return {0.4, 0.4, 0.6};
    case ClassLabel::fire_extinguisher: return {0.25, 0.25, 0.6};
    case ClassLabel::water_fountain: return {0.45, 0.4, 1.0};
    case ClassLabel::person: return {0.5, 0.5, 1.7};
  }
  return {0.5, 0.5, 0.5};
}

OccupancyGrid make_corridor_grid(double length, double width,
                                 double resolution) {
  if (length <= 0.0 || width <= 0.0 || resolution <= 0.0)
    throw ConfigError("make_corridor_grid: non-positive dimensions");
  const int w = static_cast<int>(std::lround(length / resolution));
  const int h = static_cast<int>(std::lround(width / resolution));
  OccupancyGrid grid =
      OccupancyGrid::filled(resolution, Pose2D{}, w, h, CellState::free);
  for (int col = 0; col < w; ++col) {
    grid.at(col, 0) = CellState::occupied;
    grid.at(col, h - 1) = CellState::occupied;
  }
  for (int row = 0; row < h; ++row) {
    grid.at(0, row) = CellState::occupied;
    grid.at(w - 1, row) = CellState::occupied;
  }
  return grid;
}

std::vector<std::pair<double, Pose2D>> generate_trajectory(
    const ScenarioConfig& cfg) {
  const auto& wp = cfg.waypoints;
  if (wp.size() < 2)
    throw ConfigError("generate_trajectory: need at least 2 waypoints");
  if (cfg.speed <= 0.0 || cfg.frame_rate <= 0.0)
    throw ConfigError("generate_trajectory: speed and frame_rate must be > 0");

  std::vector<double> cum(wp.size(), 0.0);
  std::vector<double> heading(wp.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
    const double dx = wp[i + 1].x - wp[i].x;
    const double dy = wp[i + 1].y - wp[i].y;
    const double len = std::hypot(dx, dy);
    if (len < 1e-9)
      throw ConfigError("generate_trajectory: coincident waypoints " +
                        std::to_string(i) + ", " + std::to_string(i + 1));
    cum[i + 1] = cum[i] + len;
    heading[i] = std::atan2(dy, dx);
  }

  const double total = cum.back();
  const int frames = static_cast<int>(std::floor(total / cfg.speed *
                                                 cfg.frame_rate)) + 1;
  std::vector<std::pair<double, Pose2D>> out;
  out.reserve(frames);
  for (int k = 0; k < frames; ++k) {
    const double t = k / cfg.frame_rate;
    const double s = std::min(cfg.speed * t, total);
    // Segment owning s; a sample exactly on a vertex takes the outgoing one.
    std::size_t i = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
    i = std::min(i == 0 ? 0 : i - 1, wp.size() - 2);
    const double u = (s - cum[i]) / (cum[i + 1] - cum[i]);
    out.emplace_back(t, Pose2D::make(wp[i].x + u * (wp[i + 1].x - wp[i].x),
                                     wp[i].y + u * (wp[i + 1].y - wp[i].y),
                                     heading[i]));
  }
  return out;
}

bool visible(const Pose2D& robot, const Pose2D& obj, const OccupancyGrid& grid,
             double fov_deg, double detect_range) {
  const double dx = obj.x - robot.x;
  const double dy = obj.y - robot.y;
  if (std::hypot(dx, dy) > detect_range) return false;
  const double bearing = wrap_angle(std::atan2(dy, dx) - robot.theta);
  if (std::abs(bearing) > 0.5 * fov_deg * M_PI / 180.0) return false;

  // Walk the exact segment through the grid (units of one cell), checking
  // every cell whose interior it crosses; the two endpoint cells do not
  // occlude. A crossing exactly through a cell corner steps diagonally, so
  // cells the segment merely touches at a point are not counted. Grazing a
  // wall face therefore does not block sight of an object mounted on it.
  const Pose2D to_local = inverse(grid.origin);
  const Eigen::Vector2d p0 =
      apply(to_local, {robot.x, robot.y}) / grid.resolution;
  const Eigen::Vector2d p1 = apply(to_local, {obj.x, obj.y}) / grid.resolution;
  int cx = static_cast<int>(std::floor(p0.x()));
  int cy = static_cast<int>(std::floor(p0.y()));
  const int ex = static_cast<int>(std::floor(p1.x()));
  const int ey = static_cast<int>(std::floor(p1.y()));
  if (!grid.in_bounds(cx, cy) || !grid.in_bounds(ex, ey)) return false;

  const double ddx = p1.x() - p0.x();
  const double ddy = p1.y() - p0.y();
  const double inf = std::numeric_limits<double>::infinity();
  const int sx = ddx >= 0.0 ? 1 : -1;
  const int sy = ddy >= 0.0 ? 1 : -1;
  const double step_tx = ddx != 0.0 ? 1.0 / std::abs(ddx) : inf;
  const double step_ty = ddy != 0.0 ? 1.0 / std::abs(ddy) : inf;
  double tx = ddx != 0.0
                  ? (ddx > 0.0 ? cx + 1.0 - p0.x() : p0.x() - cx) * step_tx
                  : inf;
  double ty = ddy != 0.0
                  ? (ddy > 0.0 ? cy + 1.0 - p0.y() : p0.y() - cy) * step_ty
                  : inf;
  int guard = grid.width + grid.height + 4;
  while ((cx != ex || cy != ey) && guard-- > 0) {
    if (std::min(tx, ty) > 1.0) break;  // remaining crossings are past p1
    if (tx < ty) {
      cx += sx;
      tx += step_tx;
    } else if (ty < tx) {
      cy += sy;
      ty += step_ty;
    } else {
      cx += sx;
      cy += sy;
      tx += step_tx;
      ty += step_ty;
    }
    if (cx == ex && cy == ey) break;
    if (!grid.in_bounds(cx, cy)) return false;
    if (grid.at(cx, cy) == CellState::occupied) return false;
  }
  return true;
}

FrameRecord synthesize_frame(double t, const Pose2D& robot_true,
                             const Pose2D& odom_pose, const OccupancyGrid& grid,
                             const ScenarioConfig& cfg, RandomSource& rng,
                             std::int64_t anchor_node) {
  FrameRecord frame;
  frame.timestamp = t;
  frame.true_pose = robot_true;
  frame.odom_pose = odom_pose;
  frame.anchor_node = anchor_node;

  const CameraFrame cam(camera_pose_on_robot(robot_true, cfg.camera_height));
  const double p_eff =
      cfg.p_detect * std::max(0.0, 1.0 - cfg.noise.sigma_i / 25.0);
  const double sigma_d = cfg.noise.sigma_d();

  for (const auto& obj : cfg.objects) {
    if (!visible(robot_true, obj.pose, grid, cfg.fov_deg, cfg.detect_range))
      continue;
    if (rng.uniform() >= p_eff) continue;
    const ObjectModel model = make_model(obj);
    BoundingBox box;
    if (!project_box(model, cam, cfg.camera, &box)) continue;
    DetectionRecord rec;
    rec.det = {obj.class_label, box, 1.0, t};
    rec.patch = trace_patch(model, cam, cfg.camera, box, sigma_d, rng);
    frame.detections.push_back(std::move(rec));
  }

  const int n_clutter = rng.poisson(cfg.clutter_rate);
  const double half_fov = 0.5 * cfg.fov_deg * M_PI / 180.0;
  for (int k = 0; k < n_clutter; ++k) {
    const auto cls = kStaticClasses[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(kStaticClasses.size()) - 1))];
    bool placed = false;
    Pose2D pose;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const double r = rng.uniform(1.0, cfg.detect_range);
      const double b = rng.uniform(-half_fov, half_fov);
      pose.x = robot_true.x + r * std::cos(robot_true.theta + b);
      pose.y = robot_true.y + r * std::sin(robot_true.theta + b);
      const auto [col, row] = grid.cell_of(pose.x, pose.y);
      placed = grid.in_bounds(col, row) && grid.at(col, row) == CellState::free;
    }
    if (!placed) continue;
    // Face the robot so clutter doors look like real ones.
    pose.theta = wrap_angle(
        std::atan2(robot_true.y - pose.y, robot_true.x - pose.x));
    const ObjectModel model = make_model(WorldObject{cls, pose, {}});
    BoundingBox box;
    if (!project_box(model, cam, cfg.camera, &box)) continue;
    DetectionRecord rec;
    rec.det = {cls, box, 1.0, t};
    rec.patch = trace_patch(model, cam, cfg.camera, box, sigma_d, rng);
    frame.detections.push_back(std::move(rec));
  }
  return frame;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result;
  result.grid = cfg.grid_path.empty()
                    ? make_corridor_grid(cfg.corridor_length,
                                         cfg.corridor_width, cfg.resolution)
                    : load_grid(cfg.grid_path);

  const auto trajectory = generate_trajectory(cfg);
  for (const auto& [t, pose] : trajectory) {
    const auto [col, row] = result.grid.cell_of(pose.x, pose.y);
    if (!result.grid.in_bounds(col, row))
      throw DataError("run_scenario: trajectory leaves the grid at t=" +
                      std::to_string(t));
  }

  for (const auto& obj : cfg.objects) {
    if (obj.class_label == ClassLabel::person) continue;
    result.truth.push_back({obj.class_label, obj.pose});
  }
  result.observed_truth.assign(result.truth.size(), 0);

  // One fixed drift direction per run; magnitude grows with distance
  // traveled and resets at every loop closure.
  RandomSource drift_rng(mix_seed(cfg.seed, kDriftStream));
  const double drift_dir = drift_rng.uniform(-M_PI, M_PI);
  const Eigen::Vector2d drift_unit(std::cos(drift_dir), std::sin(drift_dir));

  std::vector<double> closures = cfg.loop_closure_at;
  std::sort(closures.begin(), closures.end());
  std::size_t next_closure = 0;
  double drift_origin_s = 0.0;  // path distance at the last closure

  auto emit_closure = [&](double event_t, std::size_t frames_done) {
    CorrectionEvent ev;
    ev.timestamp = event_t;
    for (std::size_t k = 0; k < frames_done; ++k)
      ev.corrections[static_cast<std::int64_t>(k)] = trajectory[k].second;
    result.events.push_back(std::move(ev));
  };

  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto& [t, true_pose] = trajectory[k];
    while (next_closure < closures.size() && closures[next_closure] <= t) {
      emit_closure(closures[next_closure], k);
      drift_origin_s = cfg.speed * closures[next_closure];
      ++next_closure;
    }

    const double s = cfg.speed * t;
    const double mag = cfg.drift_rate * std::max(0.0, s - drift_origin_s);
    const Pose2D odom{true_pose.x + mag * drift_unit.x(),
                      true_pose.y + mag * drift_unit.y(), true_pose.theta};

    RandomSource rng(mix_seed(cfg.seed, kFrameStream, k));
    result.log.push_back(synthesize_frame(t, true_pose, odom, result.grid, cfg,
                                          rng, static_cast<std::int64_t>(k)));

    for (std::size_t i = 0; i < result.truth.size(); ++i)
      if (!result.observed_truth[i] &&
          visible(true_pose, result.truth[i].pose, result.grid, cfg.fov_deg,
                  cfg.detect_range))
        result.observed_truth[i] = 1;
  }

  while (next_closure < closures.size()) {
    emit_closure(closures[next_closure], trajectory.size());
    ++next_closure;
  }
  return result;
}

}  // namespace semmap

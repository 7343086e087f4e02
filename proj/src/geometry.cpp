#include "semmap/geometry.hpp"

#include <cmath>

namespace semmap {

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;
  return w;
}

Pose2D compose(const Pose2D& a, const Pose2D& b) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return Pose2D::make(a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y,
                      a.theta + b.theta);
}

Pose2D inverse(const Pose2D& a) {
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  return Pose2D::make(-c * a.x - s * a.y, s * a.x - c * a.y, -a.theta);
}

Eigen::Vector2d apply(const Pose2D& p, const Eigen::Vector2d& local) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  return {p.x + c * local.x() - s * local.y(),
          p.y + s * local.x() + c * local.y()};
}

Pose3D compose(const Pose3D& a, const Pose3D& b) {
  Pose3D out;
  out.translation = a.translation + a.rotation * b.translation;
  out.rotation = (a.rotation * b.rotation).normalized();
  return out;
}

Eigen::Vector3d apply(const Pose3D& p, const Eigen::Vector3d& local) {
  return p.translation + p.rotation * local;
}

Pose3D camera_pose_on_robot(const Pose2D& robot, double mount_height) {
  const double c = std::cos(robot.theta);
  const double s = std::sin(robot.theta);
  // Columns are the camera axes (right, down, forward) in the map frame.
  Eigen::Matrix3d rot;
  rot << s, 0.0, c,
        -c, 0.0, s,
         0.0, -1.0, 0.0;
  Pose3D out;
  out.translation = {robot.x, robot.y, mount_height};
  out.rotation = Eigen::Quaterniond(rot).normalized();
  return out;
}

PointCloud backproject_box(const DepthPatch& depth, const CameraIntrinsics& intr,
                           const BoundingBox& box) {
  if (!intr.valid()) throw DataError("backproject_box: invalid intrinsics");

  const int u_lo = static_cast<int>(std::ceil(box.center_x - 0.5 * box.w));
  const int u_hi = static_cast<int>(std::floor(box.center_x + 0.5 * box.w));
  const int v_lo = static_cast<int>(std::ceil(box.center_y - 0.5 * box.h));
  const int v_hi = static_cast<int>(std::floor(box.center_y + 0.5 * box.h));

  PointCloud out;
  out.frame = Frame::camera;
  for (int v = v_lo; v <= v_hi; v += 2) {
    if (v < 0 || v >= intr.height) continue;
    for (int u = u_lo; u <= u_hi; u += 2) {
      if (u < 0 || u >= intr.width) continue;
      if (!depth.contains(u, v))
        throw DataError("backproject_box: depth patch does not cover box");
      const double z = depth.at(u, v);
      if (!(z > 0.0) || !std::isfinite(z)) continue;
      out.points.emplace_back((u - intr.cx) * z / intr.fx,
                              (v - intr.cy) * z / intr.fy, z);
    }
  }
  return out;
}

std::optional<Eigen::Vector2d> project_point(const CameraIntrinsics& intr,
                                             const Eigen::Vector3d& p_cam) {
  if (p_cam.z() <= 0.0) return std::nullopt;
  return Eigen::Vector2d{intr.fx * p_cam.x() / p_cam.z() + intr.cx,
                         intr.fy * p_cam.y() / p_cam.z() + intr.cy};
}

PointCloud transform_cloud(const PointCloud& cloud, const Pose3D& cam_pose) {
  if (cloud.frame != Frame::camera)
    throw DataError("transform_cloud: input cloud not in camera frame");
  PointCloud out;
  out.frame = Frame::map;
  out.points.reserve(cloud.points.size());
  const Eigen::Matrix3d rot = cam_pose.rotation.toRotationMatrix();
  for (const auto& p : cloud.points)
    out.points.emplace_back(rot * p + cam_pose.translation);
  return out;
}

void PoseBuffer::push(double t, const Pose2D& pose) {
  if (!samples_.empty() && t <= samples_.back().first)
    throw DataError("PoseBuffer: timestamps must be strictly increasing");
  samples_.emplace_back(t, pose);
  while (samples_.size() > capacity_) samples_.pop_front();
}

Pose2D pose_at(const PoseBuffer& buf, double t) {
  const auto& s = buf.samples();
  if (s.empty()) throw DataError("pose_at: empty pose buffer");
  if (t <= s.front().first) return s.front().second;
  if (t >= s.back().first) return s.back().second;

  auto hi = std::lower_bound(
      s.begin(), s.end(), t,
      [](const auto& sample, double query) { return sample.first < query; });
  auto lo = std::prev(hi);
  const double u = (t - lo->first) / (hi->first - lo->first);
  const Pose2D& a = lo->second;
  const Pose2D& b = hi->second;
  return Pose2D::make(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                      a.theta + u * wrap_angle(b.theta - a.theta));
}

}  // namespace semmap

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "semmap/errors.hpp"

namespace semmap {

// Normalizes an angle to (-pi, pi].
double wrap_angle(double a);

// Planar pose (x, y, theta). theta is kept normalized by the named
// constructors and operations; raw aggregate init bypasses that, so
// prefer Pose2D::make when the angle may be outside range.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  static Pose2D make(double x, double y, double theta) {
    return Pose2D{x, y, wrap_angle(theta)};
  }
};

// SE(2) composition: b expressed in a's frame, result in a's parent frame.
Pose2D compose(const Pose2D& a, const Pose2D& b);
Pose2D inverse(const Pose2D& a);
// Maps a point from the pose's local frame to its parent frame.
Eigen::Vector2d apply(const Pose2D& p, const Eigen::Vector2d& local);

// Rigid camera extrinsics in the map frame.
struct Pose3D {
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
};

Pose3D compose(const Pose3D& a, const Pose3D& b);
Eigen::Vector3d apply(const Pose3D& p, const Eigen::Vector3d& local);

// Pose of a level, forward-looking camera mounted on the robot at the
// given height. Optical convention: x right, y down, z forward.
Pose3D camera_pose_on_robot(const Pose2D& robot, double mount_height);

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && cx >= 0.0 && cx < width && cy >= 0.0 &&
           cy < height;
  }
};

// Detection box, center + size in pixels.
struct BoundingBox {
  double center_x = 0.0;
  double center_y = 0.0;
  double w = 0.0;
  double h = 0.0;
};

// Dense per-pixel depth for the region around one detection box.
// depths is row-major, depths[(v - v0) * width + (u - u0)].
struct DepthPatch {
  int u0 = 0;
  int v0 = 0;
  int width = 0;
  int height = 0;
  std::vector<double> depths;

  double at(int u, int v) const { return depths[(v - v0) * width + (u - u0)]; }
  bool contains(int u, int v) const {
    return u >= u0 && u < u0 + width && v >= v0 && v < v0 + height;
  }
};

enum class Frame { camera, map };

struct PointCloud {
  Frame frame = Frame::camera;
  std::vector<Eigen::Vector3d> points;
};

// Pinhole back-projection of every valid depth pixel inside the box.
// Pixels are subsampled at stride 2 in u and v to bound cost; depths
// that are non-positive or non-finite are skipped. An all-invalid box
// yields an empty cloud, which callers treat as a dropped detection.
PointCloud backproject_box(const DepthPatch& depth, const CameraIntrinsics& intr,
                           const BoundingBox& box);

// Projects a camera-frame point back to pixel coordinates. Returns
// nullopt when the point is behind the camera.
std::optional<Eigen::Vector2d> project_point(const CameraIntrinsics& intr,
                                             const Eigen::Vector3d& p_cam);

// Camera frame -> map frame. The input must be tagged Frame::camera.
PointCloud transform_cloud(const PointCloud& cloud, const Pose3D& cam_pose);

inline Eigen::Vector2d project_to_ground(const Eigen::Vector3d& p) {
  return {p.x(), p.y()};
}

// Bounded time-ordered pose history for latency compensation: the pose
// used for a detection is the one the robot had when the image was
// captured, not when the result arrives.
class PoseBuffer {
 public:
  explicit PoseBuffer(std::size_t capacity = 512) : capacity_(capacity) {}

  void push(double t, const Pose2D& pose);
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  const std::deque<std::pair<double, Pose2D>>& samples() const {
    return samples_;
  }

 private:
  std::size_t capacity_;
  std::deque<std::pair<double, Pose2D>> samples_;
};

// Interpolated pose at time t: linear in x, y and shortest-arc in theta,
// clamped to the nearest endpoint outside the buffered span.
Pose2D pose_at(const PoseBuffer& buf, double t);

}  // namespace semmap

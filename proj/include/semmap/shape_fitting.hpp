#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "semmap/classes.hpp"
#include "semmap/geometry.hpp"

namespace semmap {

struct Detection {
  ClassLabel class_label = ClassLabel::door;
  BoundingBox box;
  double confidence = 1.0;  // carried through but not consumed by tracking
  double timestamp = 0.0;
};

// Plane n.p + d = 0 with its supporting inliers.
struct PlaneModel {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double d = 0.0;
  std::vector<int> inlier_indices;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
};

struct Cluster {
  std::vector<int> member_indices;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::Vector3d hull_extent = Eigen::Vector3d::Zero();  // AABB size
};

struct ObjectObservation {
  ClassLabel class_label = ClassLabel::door;
  Pose2D pose;  // projected centroid + orientation
  std::variant<PlaneModel, Cluster> shape;
  double timestamp = 0.0;
  double range_from_robot = 0.0;
};

struct FitConfig {
  double plane_dist_thresh = 0.03;
  int plane_max_iters = 200;
  int plane_min_inliers = 50;
  double cluster_tol = 0.10;
  int cluster_min_size = 30;
};

// Best-consensus plane over max_iters random 3-point hypotheses. The
// winning hypothesis is kept as-is (no refit); its normal is oriented
// so that n.(origin - centroid) > 0, i.e. toward the sensor for
// camera-frame clouds. Throws FitError on <3 points, all-degenerate
// samples, or best inlier count below min_inliers.
PlaneModel ransac_plane(const PointCloud& cloud, double dist_thresh,
                        int max_iters, int min_inliers, std::uint64_t seed);

struct RefineResult {
  PlaneModel model;
  bool degenerate = false;  // rank-deficient inliers, input passed through
};

// Least-squares replacement of the plane coefficients over the model's
// inliers (smallest principal component of their covariance). Keeps the
// inlier set and the input's orientation.
RefineResult refine_plane(const PlaneModel& model, const PointCloud& cloud);

// Connected components of the within-tol proximity graph; components
// below min_size are dropped. Ordered by size descending, then by
// smallest member index.
std::vector<Cluster> euclidean_cluster(const PointCloud& cloud, double tol,
                                       int min_size);

// Fits the class-appropriate primitive to a map-frame patch and reduces
// it to a ground-plane observation. Doors get a RANSAC + refined plane
// whose robot-facing normal defines theta; every other class gets the
// largest Euclidean cluster with theta = bearing from the robot.
ObjectObservation extract_observation(const Detection& det,
                                      const PointCloud& cloud_map_frame,
                                      const Pose2D& robot, const FitConfig& cfg,
                                      std::uint64_t seed);

}  // namespace semmap

#include "semmap/shape_fitting.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "semmap/random.hpp"

namespace semmap {

namespace {

double plane_distance(const Eigen::Vector3d& n, double d,
                      const Eigen::Vector3d& p) {
  return std::abs(n.dot(p) + d);
}

std::vector<int> collect_inliers(const PointCloud& cloud,
                                 const Eigen::Vector3d& n, double d,
                                 double dist_thresh) {
  std::vector<int> inliers;
  for (int i = 0; i < static_cast<int>(cloud.points.size()); ++i)
    if (plane_distance(n, d, cloud.points[i]) <= dist_thresh)
      inliers.push_back(i);
  return inliers;
}

Eigen::Vector3d inlier_centroid(const PlaneModel& m, const PointCloud& cloud) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (int i : m.inlier_indices) c += cloud.points[i];
  return c / static_cast<double>(m.inlier_indices.size());
}

}  // namespace

PlaneModel ransac_plane(const PointCloud& cloud, double dist_thresh,
                        int max_iters, int min_inliers, std::uint64_t seed) {
  const int n = static_cast<int>(cloud.points.size());
  if (n < 3)
    throw FitError(FitError::Kind::insufficient_points,
                   "ransac_plane: need at least 3 points");

  RandomSource rng(seed);
  Eigen::Vector3d best_n = Eigen::Vector3d::Zero();
  double best_d = 0.0;
  int best_count = -1;

  for (int iter = 0; iter < max_iters; ++iter) {
    int a = rng.uniform_int(0, n - 1);
    int b = rng.uniform_int(0, n - 1);
    int c = rng.uniform_int(0, n - 1);
    if (a == b || a == c || b == c) continue;
    const Eigen::Vector3d& pa = cloud.points[a];
    Eigen::Vector3d normal =
        (cloud.points[b] - pa).cross(cloud.points[c] - pa);
    const double norm = normal.norm();
    if (norm < 1e-12) continue;  // collinear sample
    normal /= norm;
    const double d = -normal.dot(pa);

    int count = 0;
    for (const auto& p : cloud.points)
      if (plane_distance(normal, d, p) <= dist_thresh) ++count;
    if (count > best_count) {
      best_count = count;
      best_n = normal;
      best_d = d;
    }
  }

  if (best_count < 0)
    throw FitError(FitError::Kind::degenerate,
                   "ransac_plane: no valid hypothesis (collinear cloud?)");
  if (best_count < min_inliers)
    throw FitError(FitError::Kind::no_consensus,
                   "ransac_plane: best consensus below min_inliers");

  PlaneModel model;
  model.normal = best_n;
  model.d = best_d;
  model.inlier_indices = collect_inliers(cloud, best_n, best_d, dist_thresh);
  model.centroid = inlier_centroid(model, cloud);
  if (model.normal.dot(-model.centroid) < 0.0) {
    model.normal = -model.normal;
    model.d = -model.d;
  }
  return model;
}

RefineResult refine_plane(const PlaneModel& model, const PointCloud& cloud) {
  if (model.inlier_indices.size() < 3)
    throw FitError(FitError::Kind::insufficient_points,
                   "refine_plane: need at least 3 inliers");

  const Eigen::Vector3d centroid = inlier_centroid(model, cloud);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (int i : model.inlier_indices) {
    const Eigen::Vector3d r = cloud.points[i] - centroid;
    cov += r * r.transpose();
  }
  cov /= static_cast<double>(model.inlier_indices.size());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  // Eigenvalues ascending: [0] is the plane normal direction, [1] must
  // carry real extent or the inliers are collinear.
  if (eig.eigenvalues()(1) < 1e-12) return {model, true};

  RefineResult out;
  out.model = model;
  Eigen::Vector3d n = eig.eigenvectors().col(0);
  if (n.dot(model.normal) < 0.0) n = -n;
  out.model.normal = n;
  out.model.d = -n.dot(centroid);
  out.model.centroid = centroid;
  return out;
}

std::vector<Cluster> euclidean_cluster(const PointCloud& cloud, double tol,
                                       int min_size) {
  const int n = static_cast<int>(cloud.points.size());
  std::vector<Cluster> clusters;
  if (n == 0) return clusters;

  // Hash points into tol-sized voxels so neighbor queries only touch the
  // 27 surrounding cells.
  const double inv = 1.0 / tol;
  auto key_of = [inv](const Eigen::Vector3d& p) {
    const auto ix = static_cast<std::int64_t>(std::floor(p.x() * inv));
    const auto iy = static_cast<std::int64_t>(std::floor(p.y() * inv));
    const auto iz = static_cast<std::int64_t>(std::floor(p.z() * inv));
    return (ix * 73856093) ^ (iy * 19349663) ^ (iz * 83492791);
  };
  std::unordered_map<std::int64_t, std::vector<int>> voxels;
  std::vector<std::array<std::int64_t, 3>> coords(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = cloud.points[i];
    coords[i] = {static_cast<std::int64_t>(std::floor(p.x() * inv)),
                 static_cast<std::int64_t>(std::floor(p.y() * inv)),
                 static_cast<std::int64_t>(std::floor(p.z() * inv))};
    voxels[key_of(p)].push_back(i);
  }
  auto cell_key = [](std::int64_t ix, std::int64_t iy, std::int64_t iz) {
    return (ix * 73856093) ^ (iy * 19349663) ^ (iz * 83492791);
  };

  const double tol2 = tol * tol;
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> components;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const int comp = static_cast<int>(components.size());
    components.emplace_back();
    label[s] = comp;
    stack.assign(1, s);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      components[comp].push_back(i);
      const auto [ix, iy, iz] = coords[i];
      for (std::int64_t dx = -1; dx <= 1; ++dx)
        for (std::int64_t dy = -1; dy <= 1; ++dy)
          for (std::int64_t dz = -1; dz <= 1; ++dz) {
            auto it = voxels.find(cell_key(ix + dx, iy + dy, iz + dz));
            if (it == voxels.end()) continue;
            for (int j : it->second) {
              if (label[j] >= 0) continue;
              if ((cloud.points[i] - cloud.points[j]).squaredNorm() <= tol2) {
                label[j] = comp;
                stack.push_back(j);
              }
            }
          }
    }
  }

  for (auto& members : components) {
    if (static_cast<int>(members.size()) < min_size) continue;
    std::sort(members.begin(), members.end());
    Cluster c;
    c.member_indices = std::move(members);
    Eigen::Vector3d lo = cloud.points[c.member_indices[0]];
    Eigen::Vector3d hi = lo;
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int i : c.member_indices) {
      const auto& p = cloud.points[i];
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
      sum += p;
    }
    c.centroid = sum / static_cast<double>(c.member_indices.size());
    c.hull_extent = hi - lo;
    clusters.push_back(std::move(c));
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) {
              if (a.member_indices.size() != b.member_indices.size())
                return a.member_indices.size() > b.member_indices.size();
              return a.member_indices.front() < b.member_indices.front();
            });
  return clusters;
}

ObjectObservation extract_observation(const Detection& det,
                                      const PointCloud& cloud_map_frame,
                                      const Pose2D& robot, const FitConfig& cfg,
                                      std::uint64_t seed) {
  if (cloud_map_frame.points.empty())
    throw FitError(FitError::Kind::empty_cloud,
                   "extract_observation: empty cloud");

  ObjectObservation obs;
  obs.class_label = det.class_label;
  obs.timestamp = det.timestamp;

  if (det.class_label == ClassLabel::door) {
    PlaneModel plane =
        ransac_plane(cloud_map_frame, cfg.plane_dist_thresh,
                     cfg.plane_max_iters, cfg.plane_min_inliers, seed);
    RefineResult refined = refine_plane(plane, cloud_map_frame);
    plane = refined.model;

    // Face the robot, then read theta off the ground-plane normal.
    const Eigen::Vector3d to_robot(robot.x - plane.centroid.x(),
                                   robot.y - plane.centroid.y(), 0.0);
    if (plane.normal.dot(to_robot) < 0.0) {
      plane.normal = -plane.normal;
      plane.d = -plane.d;
    }
    const double nx = plane.normal.x();
    const double ny = plane.normal.y();
    if (std::hypot(nx, ny) < 1e-9)
      throw FitError(FitError::Kind::degenerate,
                     "extract_observation: horizontal door plane");
    obs.pose = Pose2D::make(plane.centroid.x(), plane.centroid.y(),
                            std::atan2(ny, nx));
    obs.shape = std::move(plane);
  } else {
    auto clusters =
        euclidean_cluster(cloud_map_frame, cfg.cluster_tol, cfg.cluster_min_size);
    if (clusters.empty())
      throw FitError(FitError::Kind::no_cluster,
                     "extract_observation: no cluster of sufficient size");
    Cluster cluster = std::move(clusters.front());
    const double bearing =
        std::atan2(cluster.centroid.y() - robot.y, cluster.centroid.x() - robot.x);
    obs.pose =
        Pose2D::make(cluster.centroid.x(), cluster.centroid.y(), bearing);
    obs.shape = std::move(cluster);
  }

  obs.range_from_robot = std::hypot(obs.pose.x - robot.x, obs.pose.y - robot.y);
  return obs;
}

}  // namespace semmap

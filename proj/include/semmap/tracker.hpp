#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "semmap/assignment.hpp"
#include "semmap/classes.hpp"
#include "semmap/shape_fitting.hpp"

namespace semmap {

// One persistent map object with its filtered state and uncertainty.
struct TrackedInstance {
  std::int64_t id = 0;
  ClassLabel class_label = ClassLabel::door;
  Pose2D state;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Identity();
  int observation_count = 1;
  double last_seen = 0.0;
  std::int64_t anchor_node = 0;
  Pose2D offset_from_anchor;  // state expressed in the anchor's frame
};

// Registry of every instance ever created. Instances are never removed;
// iteration order is creation order, which downstream code relies on for
// reproducible output.
struct TrackerState {
  std::vector<TrackedInstance> instances;
  std::int64_t next_id = 0;
};

struct AssociationConfig {
  std::array<double, kAllClasses.size()> delta;
  double max_range = 6.0;
  Eigen::Matrix3d measurement_noise;  // R
  Eigen::Matrix3d process_noise;      // Q
  Eigen::Matrix3d initial_covariance;  // P0
  bool position_only = false;  // gate on (x, y) alone, ignoring theta

  AssociationConfig() {
    delta.fill(1.2);
    measurement_noise =
        Eigen::Vector3d(0.15 * 0.15, 0.15 * 0.15, 0.2 * 0.2).asDiagonal();
    process_noise = Eigen::Matrix3d::Zero();
    initial_covariance =
        Eigen::Vector3d(0.5 * 0.5, 0.5 * 0.5, 0.5 * 0.5).asDiagonal();
  }

  double delta_for(ClassLabel label) const {
    return delta[static_cast<std::size_t>(label)];
  }
  void set_delta(double value) { delta.fill(value); }
};

// sqrt(r' S^-1 r) with the angular residual wrapped to (-pi, pi].
// S must be symmetric positive-definite.
double mahalanobis(const Pose2D& x, const Eigen::Matrix3d& S, const Pose2D& y);

// Constant-state Kalman update: identity dynamics and observation model,
// wrapped angular innovation, Joseph-form covariance update.
TrackedInstance kalman_update(const TrackedInstance& inst,
                              const ObjectObservation& obs,
                              const AssociationConfig& cfg);

// One frame of association and filtering:
//   1. drop observations beyond max_range
//   2. per class, Mahalanobis cost matrix over existing instances
//   3. hungarian assignment
//   4. pairs with distance < delta are fused via kalman_update
//   5. everything unmatched or gated out spawns a new instance anchored
//      at the current pose-graph node; person observations never spawn
// robot is the (odometry) pose of current_anchor_node.
TrackerState step(const TrackerState& state,
                  const std::vector<ObjectObservation>& observations,
                  const Pose2D& robot, std::int64_t current_anchor_node,
                  const AssociationConfig& cfg);

// Applies pose-graph corrections: every instance is rigidly carried
// along with its anchor node, state = corrected ∘ (original⁻¹ ∘ state).
// Covariances are unchanged. Throws DataError for anchors missing from
// either mapping.
TrackerState reanchor(const TrackerState& state,
                      const std::map<std::int64_t, Pose2D>& corrections,
                      const std::map<std::int64_t, Pose2D>& original);

}  // namespace semmap

#include "semmap/tracker.hpp"

#include <cmath>

#include "semmap/errors.hpp"

namespace semmap {

namespace {

Eigen::Vector3d wrapped_residual(const Pose2D& x, const Pose2D& y) {
  return {y.x - x.x, y.y - x.y, wrap_angle(y.theta - x.theta)};
}

// Position-only variant used when cfg.position_only gates on (x, y).
double mahalanobis_xy(const Pose2D& x, const Eigen::Matrix3d& S,
                      const Pose2D& y) {
  const Eigen::Matrix2d S2 = S.topLeftCorner<2, 2>();
  Eigen::LLT<Eigen::Matrix2d> llt(S2);
  if (llt.info() != Eigen::Success)
    throw DataError("mahalanobis: covariance not positive-definite");
  const Eigen::Vector2d r(y.x - x.x, y.y - x.y);
  return std::sqrt(r.dot(llt.solve(r)));
}

}  // namespace

double mahalanobis(const Pose2D& x, const Eigen::Matrix3d& S, const Pose2D& y) {
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw DataError("mahalanobis: covariance not symmetric");
  Eigen::LLT<Eigen::Matrix3d> llt(S);
  if (llt.info() != Eigen::Success)
    throw DataError("mahalanobis: covariance not positive-definite");
  const Eigen::Vector3d r = wrapped_residual(x, y);
  return std::sqrt(r.dot(llt.solve(r)));
}

TrackedInstance kalman_update(const TrackedInstance& inst,
                              const ObjectObservation& obs,
                              const AssociationConfig& cfg) {
  const Eigen::Matrix3d P = inst.covariance + cfg.process_noise;
  const Eigen::Matrix3d& R = cfg.measurement_noise;

  const Eigen::Matrix3d K = P * (P + R).inverse();
  const Eigen::Vector3d innovation = wrapped_residual(inst.state, obs.pose);
  const Eigen::Vector3d delta = K * innovation;

  TrackedInstance out = inst;
  out.state = Pose2D::make(inst.state.x + delta.x(), inst.state.y + delta.y(),
                           inst.state.theta + delta.z());

  // Joseph form keeps the covariance PSD under roundoff; symmetrize to
  // hold the 1e-12 symmetry invariant over long update chains.
  const Eigen::Matrix3d IK = Eigen::Matrix3d::Identity() - K;
  Eigen::Matrix3d P_post = IK * P * IK.transpose() + K * R * K.transpose();
  out.covariance = 0.5 * (P_post + P_post.transpose());
  out.observation_count = inst.observation_count + 1;
  out.last_seen = obs.timestamp;
  return out;
}

TrackerState step(const TrackerState& state,
                  const std::vector<ObjectObservation>& observations,
                  const Pose2D& robot, std::int64_t current_anchor_node,
                  const AssociationConfig& cfg) {
  TrackerState out = state;
  const Pose2D anchor_inv = inverse(robot);

  for (ClassLabel label : kAllClasses) {
    std::vector<int> obs_idx;
    for (int i = 0; i < static_cast<int>(observations.size()); ++i) {
      const auto& obs = observations[i];
      if (obs.class_label != label) continue;
      if (obs.range_from_robot > cfg.max_range) continue;
      obs_idx.push_back(i);
    }
    if (obs_idx.empty()) continue;

    std::vector<int> inst_idx;
    for (int i = 0; i < static_cast<int>(out.instances.size()); ++i)
      if (out.instances[i].class_label == label) inst_idx.push_back(i);

    CostMatrix costs(inst_idx.size(), obs_idx.size());
    for (int r = 0; r < costs.rows(); ++r) {
      const auto& inst = out.instances[inst_idx[r]];
      for (int c = 0; c < costs.cols(); ++c) {
        const auto& obs = observations[obs_idx[c]];
        costs(r, c) = cfg.position_only
                          ? mahalanobis_xy(inst.state, inst.covariance, obs.pose)
                          : mahalanobis(inst.state, inst.covariance, obs.pose);
      }
    }

    std::vector<char> matched(obs_idx.size(), 0);
    for (const auto& [r, c] : hungarian(costs)) {
      if (costs(r, c) >= cfg.delta_for(label)) continue;  // gate after assignment
      auto& inst = out.instances[inst_idx[r]];
      inst = kalman_update(inst, observations[obs_idx[c]], cfg);
      matched[c] = 1;
    }

    if (label == ClassLabel::person) continue;  // people are never mapped
    for (std::size_t c = 0; c < obs_idx.size(); ++c) {
      if (matched[c]) continue;
      const auto& obs = observations[obs_idx[c]];
      TrackedInstance inst;
      inst.id = out.next_id++;
      inst.class_label = label;
      inst.state = obs.pose;
      inst.covariance = cfg.initial_covariance;
      inst.observation_count = 1;
      inst.last_seen = obs.timestamp;
      inst.anchor_node = current_anchor_node;
      inst.offset_from_anchor = compose(anchor_inv, obs.pose);
      out.instances.push_back(inst);
    }
  }
  return out;
}

TrackerState reanchor(const TrackerState& state,
                      const std::map<std::int64_t, Pose2D>& corrections,
                      const std::map<std::int64_t, Pose2D>& original) {
  TrackerState out = state;
  for (auto& inst : out.instances) {
    const auto corr = corrections.find(inst.anchor_node);
    const auto orig = original.find(inst.anchor_node);
    if (corr == corrections.end() || orig == original.end())
      throw DataError("reanchor: anchor node " +
                      std::to_string(inst.anchor_node) +
                      " missing from correction mappings");
    inst.offset_from_anchor = compose(inverse(orig->second), inst.state);
    inst.state = compose(corr->second, inst.offset_from_anchor);
  }
  return out;
}

}  // namespace semmap

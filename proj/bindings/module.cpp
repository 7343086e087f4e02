#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semmap/eval.hpp"
#include "semmap/serialization.hpp"
#include "semmap/version.hpp"

namespace py = pybind11;
using namespace semmap;

namespace {

CostMatrix matrix_from(const std::vector<std::vector<double>>& rows) {
  const int nr = static_cast<int>(rows.size());
  const int nc = nr > 0 ? static_cast<int>(rows[0].size()) : 0;
  CostMatrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (static_cast<int>(rows[r].size()) != nc)
      throw ConfigError("cost matrix rows have unequal lengths");
    for (int c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Eigen::Matrix3d mat3_from(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 3 || rows[0].size() != 3 || rows[1].size() != 3 ||
      rows[2].size() != 3)
    throw ConfigError("covariance must be 3x3");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rows[r][c];
  return m;
}

py::dict instance_dict(const TrackedInstance& inst) {
  py::dict d;
  d["id"] = inst.id;
  d["class"] = class_name(inst.class_label);
  d["pose"] = py::make_tuple(inst.state.x, inst.state.y, inst.state.theta);
  d["observation_count"] = inst.observation_count;
  d["anchor_node"] = inst.anchor_node;
  return d;
}

}  // namespace

PYBIND11_MODULE(_semmap, m) {
  m.doc() = "object-augmented 2D mapping engine";
  m.attr("__version__") = kEngineVersion;

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<DataError>(m, "DataError");

  m.def("wrap_angle", &wrap_angle, py::arg("angle"),
        "normalize an angle to (-pi, pi]");

  m.def(
      "hungarian",
      [](const std::vector<std::vector<double>>& costs) {
        return hungarian(matrix_from(costs));
      },
      py::arg("costs"),
      "minimum-cost assignment over a rectangular cost matrix");

  m.def(
      "mahalanobis",
      [](const std::tuple<double, double, double>& x,
         const std::vector<std::vector<double>>& S,
         const std::tuple<double, double, double>& y) {
        return mahalanobis(
            Pose2D{std::get<0>(x), std::get<1>(x), std::get<2>(x)},
            mat3_from(S), Pose2D{std::get<0>(y), std::get<1>(y),
                                 std::get<2>(y)});
      },
      py::arg("x"), py::arg("S"), py::arg("y"),
      "covariance-weighted pose distance with a wrapped angular residual");

  m.def(
      "ransac_plane",
      [](const std::vector<std::array<double, 3>>& points, double dist_thresh,
         int max_iters, int min_inliers, std::uint64_t seed) {
        PointCloud cloud;
        for (const auto& p : points) cloud.points.emplace_back(p[0], p[1], p[2]);
        const PlaneModel plane =
            ransac_plane(cloud, dist_thresh, max_iters, min_inliers, seed);
        py::dict d;
        d["normal"] = py::make_tuple(plane.normal.x(), plane.normal.y(),
                                     plane.normal.z());
        d["d"] = plane.d;
        d["inliers"] = plane.inlier_indices;
        return d;
      },
      py::arg("points"), py::arg("dist_thresh") = 0.03,
      py::arg("max_iters") = 200, py::arg("min_inliers") = 50,
      py::arg("seed") = 1, "RANSAC plane fit over a list of 3D points");

  m.def(
      "run_pipeline",
      [](const std::string& scenario_json, const std::string& config_json) {
        const ScenarioConfig scenario = scenario_from_json_text(scenario_json);
        PipelineConfig cfg;
        if (!config_json.empty())
          cfg = pipeline_config_from_json_text(config_json);
        const ScenarioResult sim = run_scenario(scenario);
        const PipelineResult result =
            run_tracking(log_from_scenario(scenario, sim.log), sim.events, cfg);

        py::list instances;
        for (const auto& inst : result.tracker.instances)
          instances.append(instance_dict(inst));

        const AugmentedMap map{"", result.tracker.instances};
        const EvalReport report =
            evaluate(map, sim.truth, sim.observed_truth, 2.0);
        py::dict per_class;
        for (const auto& [label, cr] : report.per_class) {
          if (cr.instances == 0 && cr.truth_observed == 0) continue;
          py::dict c;
          c["matched"] = cr.matched;
          c["fp"] = cr.fp;
          c["fn"] = cr.fn;
          c["avg_error"] = cr.avg_error;
          per_class[class_name(label).c_str()] = c;
        }
        py::dict out;
        out["instances"] = instances;
        out["report"] = per_class;
        out["frames"] = sim.log.size();
        return out;
      },
      py::arg("scenario_json"), py::arg("config_json") = std::string{},
      "simulate a scenario, track it, and score the resulting map");
}

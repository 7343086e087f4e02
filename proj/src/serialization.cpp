#include "semmap/serialization.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semmap/version.hpp"

namespace semmap {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json pose_json(const Pose2D& p) { return json::array({p.x, p.y, p.theta}); }

Pose2D pose_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(where + ": pose must be [x, y, theta]");
  return Pose2D{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  const json j = parse_or_throw(text, "scenario");
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  check_keys(j,
             {"type", "seed", "grid", "corridor", "objects", "waypoints",
              "speed", "frame_rate", "camera", "fov_deg", "detect_range",
              "p_detect", "clutter_rate", "sigma_i", "drift_rate",
              "loop_closure_at"},
             "scenario");
  try {
    ScenarioConfig cfg;
    if (j.contains("type") && j["type"] != "scenario")
      throw ConfigError("scenario: type must be 'scenario'");
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.grid_path = j.value("grid", std::string{});
    if (j.contains("corridor")) {
      const json& c = j["corridor"];
      check_keys(c, {"length", "width", "resolution"}, "scenario.corridor");
      cfg.corridor_length = c.value("length", cfg.corridor_length);
      cfg.corridor_width = c.value("width", cfg.corridor_width);
      cfg.resolution = c.value("resolution", cfg.resolution);
    }
    for (const json& o : j.value("objects", json::array())) {
      check_keys(o, {"class", "pose", "extent"}, "scenario.objects");
      WorldObject obj;
      const auto label = class_from_name(o.at("class").get<std::string>());
      if (!label) throw ConfigError("scenario: unknown object class");
      obj.class_label = *label;
      obj.pose = pose_from(o.at("pose"), "scenario.objects");
      if (o.contains("extent")) {
        const json& e = o["extent"];
        if (!e.is_array() || e.size() != 3)
          throw ConfigError("scenario: extent must be [dx, dy, dz]");
        obj.extent = {e[0].get<double>(), e[1].get<double>(),
                      e[2].get<double>()};
      }
      cfg.objects.push_back(obj);
    }
    for (const json& w : j.value("waypoints", json::array())) {
      if (!w.is_array() || w.size() < 2 || w.size() > 3)
        throw ConfigError("scenario: waypoint must be [x, y] or [x, y, theta]");
      cfg.waypoints.push_back(Pose2D{
          w[0].get<double>(), w[1].get<double>(),
          w.size() == 3 ? w[2].get<double>() : 0.0});
    }
    cfg.speed = j.value("speed", cfg.speed);
    cfg.frame_rate = j.value("frame_rate", cfg.frame_rate);
    if (j.contains("camera")) {
      const json& c = j["camera"];
      check_keys(c, {"fx", "fy", "cx", "cy", "width", "height", "mount_height"},
                 "scenario.camera");
      cfg.camera.fx = c.value("fx", cfg.camera.fx);
      cfg.camera.fy = c.value("fy", cfg.camera.fy);
      cfg.camera.cx = c.value("cx", cfg.camera.cx);
      cfg.camera.cy = c.value("cy", cfg.camera.cy);
      cfg.camera.width = c.value("width", cfg.camera.width);
      cfg.camera.height = c.value("height", cfg.camera.height);
      cfg.camera_height = c.value("mount_height", cfg.camera_height);
    }
    cfg.fov_deg = j.value("fov_deg", cfg.fov_deg);
    cfg.detect_range = j.value("detect_range", cfg.detect_range);
    cfg.p_detect = j.value("p_detect", cfg.p_detect);
    cfg.clutter_rate = j.value("clutter_rate", cfg.clutter_rate);
    cfg.noise.sigma_i = j.value("sigma_i", cfg.noise.sigma_i);
    cfg.drift_rate = j.value("drift_rate", cfg.drift_rate);
    for (const json& t : j.value("loop_closure_at", json::array()))
      cfg.loop_closure_at.push_back(t.get<double>());

    if (cfg.p_detect < 0.0 || cfg.p_detect > 1.0)
      throw ConfigError("scenario: p_detect must be in [0, 1]");
    if (cfg.speed <= 0.0) throw ConfigError("scenario: speed must be > 0");
    if (cfg.frame_rate <= 0.0)
      throw ConfigError("scenario: frame_rate must be > 0");
    if (cfg.noise.sigma_i < 0.0)
      throw ConfigError("scenario: sigma_i must be >= 0");
    if (cfg.fov_deg <= 0.0 || cfg.fov_deg > 360.0)
      throw ConfigError("scenario: fov_deg must be in (0, 360]");
    if (cfg.detect_range <= 0.0)
      throw ConfigError("scenario: detect_range must be > 0");
    if (cfg.clutter_rate < 0.0)
      throw ConfigError("scenario: clutter_rate must be >= 0");
    if (cfg.drift_rate < 0.0)
      throw ConfigError("scenario: drift_rate must be >= 0");
    if (!cfg.camera.valid()) throw ConfigError("scenario: invalid camera");
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::string& path) {
  return scenario_from_json_text(read_file(path));
}

PipelineConfig pipeline_config_from_json_text(const std::string& text) {
  const json j = parse_or_throw(text, "config");
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(j,
             {"type", "delta", "max_range", "r_sigma", "q_sigma", "p0_sigma",
              "position_only", "fit"},
             "config");
  try {
    PipelineConfig cfg;
    if (j.contains("type") && j["type"] != "tracker_config")
      throw ConfigError("config: type must be 'tracker_config'");
    if (j.contains("delta")) {
      const json& d = j["delta"];
      if (d.is_number()) {
        cfg.assoc.set_delta(d.get<double>());
      } else if (d.is_object()) {
        for (const auto& [key, value] : d.items()) {
          const auto label = class_from_name(key);
          if (!label) throw ConfigError("config: unknown class in delta");
          cfg.assoc.delta[static_cast<std::size_t>(*label)] =
              value.get<double>();
        }
      } else {
        throw ConfigError("config: delta must be a number or per-class object");
      }
      for (double d_val : cfg.assoc.delta)
        if (d_val <= 0.0) throw ConfigError("config: delta must be > 0");
    }
    cfg.assoc.max_range = j.value("max_range", cfg.assoc.max_range);
    auto diag_from = [&](const char* key, Eigen::Matrix3d* out,
                         bool strictly_positive) {
      if (!j.contains(key)) return;
      const json& a = j[key];
      if (!a.is_array() || a.size() != 3)
        throw ConfigError(std::string("config: ") + key +
                          " must be [sx, sy, stheta]");
      Eigen::Vector3d v(a[0].get<double>(), a[1].get<double>(),
                        a[2].get<double>());
      if ((strictly_positive && (v.array() <= 0.0).any()) ||
          (v.array() < 0.0).any())
        throw ConfigError(std::string("config: ") + key + " out of range");
      *out = v.cwiseProduct(v).asDiagonal();
    };
    diag_from("r_sigma", &cfg.assoc.measurement_noise, false);
    diag_from("q_sigma", &cfg.assoc.process_noise, false);
    diag_from("p0_sigma", &cfg.assoc.initial_covariance, true);
    cfg.assoc.position_only = j.value("position_only", false);
    if (j.contains("fit")) {
      const json& f = j["fit"];
      check_keys(f,
                 {"plane_dist_thresh", "plane_max_iters", "plane_min_inliers",
                  "cluster_tol", "cluster_min_size"},
                 "config.fit");
      cfg.fit.plane_dist_thresh =
          f.value("plane_dist_thresh", cfg.fit.plane_dist_thresh);
      cfg.fit.plane_max_iters =
          f.value("plane_max_iters", cfg.fit.plane_max_iters);
      cfg.fit.plane_min_inliers =
          f.value("plane_min_inliers", cfg.fit.plane_min_inliers);
      cfg.fit.cluster_tol = f.value("cluster_tol", cfg.fit.cluster_tol);
      cfg.fit.cluster_min_size =
          f.value("cluster_min_size", cfg.fit.cluster_min_size);
      if (cfg.fit.plane_dist_thresh <= 0.0 || cfg.fit.cluster_tol <= 0.0 ||
          cfg.fit.plane_max_iters <= 0 || cfg.fit.plane_min_inliers < 3 ||
          cfg.fit.cluster_min_size < 1)
        throw ConfigError("config.fit: parameter out of range");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

PipelineConfig load_pipeline_config(const std::string& path) {
  return pipeline_config_from_json_text(read_file(path));
}

void save_log(const LogData& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  const json header = {
      {"camera",
       {{"cx", log.camera.cx},
        {"cy", log.camera.cy},
        {"fx", log.camera.fx},
        {"fy", log.camera.fy},
        {"height", log.camera.height},
        {"mount_height", log.camera_height},
        {"width", log.camera.width}}},
      {"seed", log.seed},
      {"type", "log_header"},
      {"version", kEngineVersion}};
  out << header.dump() << "\n";
  for (const auto& frame : log.frames) {
    json dets = json::array();
    for (const auto& rec : frame.detections) {
      dets.push_back(
          {{"box",
            {rec.det.box.center_x, rec.det.box.center_y, rec.det.box.w,
             rec.det.box.h}},
           {"class", class_name(rec.det.class_label)},
           {"confidence", rec.det.confidence},
           {"patch",
            {{"depths", rec.patch.depths},
             {"height", rec.patch.height},
             {"u0", rec.patch.u0},
             {"v0", rec.patch.v0},
             {"width", rec.patch.width}}},
           {"timestamp", rec.det.timestamp}});
    }
    const json rec = {{"anchor_node", frame.anchor_node},
                      {"detections", dets},
                      {"odom_pose", pose_json(frame.odom_pose)},
                      {"timestamp", frame.timestamp},
                      {"true_pose", pose_json(frame.true_pose)},
                      {"type", "frame"}};
    out << rec.dump() << "\n";
  }
}

LogData load_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  LogData log;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const json j = parse_or_throw(line, where);
    try {
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "log_header")
          throw ConfigError(where + ": first record must be log_header");
        const json& c = j.at("camera");
        log.camera.fx = c.at("fx").get<double>();
        log.camera.fy = c.at("fy").get<double>();
        log.camera.cx = c.at("cx").get<double>();
        log.camera.cy = c.at("cy").get<double>();
        log.camera.width = c.at("width").get<int>();
        log.camera.height = c.at("height").get<int>();
        log.camera_height = c.at("mount_height").get<double>();
        log.seed = j.at("seed").get<std::uint64_t>();
        if (!log.camera.valid())
          throw ConfigError(where + ": invalid camera in header");
        have_header = true;
        continue;
      }
      if (type != "frame")
        throw ConfigError(where + ": unexpected record type " + type);
      FrameRecord frame;
      frame.timestamp = j.at("timestamp").get<double>();
      frame.true_pose = pose_from(j.at("true_pose"), where);
      frame.odom_pose = pose_from(j.at("odom_pose"), where);
      frame.anchor_node = j.at("anchor_node").get<std::int64_t>();
      if (!log.frames.empty() &&
          frame.timestamp <= log.frames.back().timestamp)
        throw ConfigError(where + ": timestamps must be strictly increasing");
      for (const json& d : j.at("detections")) {
        DetectionRecord rec;
        const auto label = class_from_name(d.at("class").get<std::string>());
        if (!label) throw ConfigError(where + ": unknown detection class");
        rec.det.class_label = *label;
        const json& b = d.at("box");
        if (!b.is_array() || b.size() != 4)
          throw ConfigError(where + ": box must be [cx, cy, w, h]");
        rec.det.box = {b[0].get<double>(), b[1].get<double>(),
                       b[2].get<double>(), b[3].get<double>()};
        rec.det.confidence = d.at("confidence").get<double>();
        rec.det.timestamp = d.at("timestamp").get<double>();
        const json& p = d.at("patch");
        rec.patch.u0 = p.at("u0").get<int>();
        rec.patch.v0 = p.at("v0").get<int>();
        rec.patch.width = p.at("width").get<int>();
        rec.patch.height = p.at("height").get<int>();
        rec.patch.depths = p.at("depths").get<std::vector<double>>();
        if (rec.patch.width <= 0 || rec.patch.height <= 0 ||
            rec.patch.depths.size() !=
                static_cast<std::size_t>(rec.patch.width) * rec.patch.height)
          throw ConfigError(where + ": patch size mismatch");
        frame.detections.push_back(std::move(rec));
      }
      log.frames.push_back(std::move(frame));
    } catch (const json::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (!have_header) throw ConfigError(path + ": missing log header");
  return log;
}

void save_events(const std::vector<CorrectionEvent>& events,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  for (const auto& ev : events) {
    json corrections = json::object();
    for (const auto& [node, pose] : ev.corrections)
      corrections[std::to_string(node)] = pose_json(pose);
    const json rec = {{"corrections", corrections},
                      {"timestamp", ev.timestamp},
                      {"type", "correction"}};
    out << rec.dump() << "\n";
  }
}

std::vector<CorrectionEvent> load_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<CorrectionEvent> events;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const json j = parse_or_throw(line, where);
    try {
      if (j.at("type") != "correction")
        throw ConfigError(where + ": unexpected record type");
      CorrectionEvent ev;
      ev.timestamp = j.at("timestamp").get<double>();
      for (const auto& [key, value] : j.at("corrections").items()) {
        std::int64_t node = 0;
        try {
          node = std::stoll(key);
        } catch (const std::exception&) {
          throw ConfigError(where + ": bad node id '" + key + "'");
        }
        ev.corrections[node] = pose_from(value, where);
      }
      events.push_back(std::move(ev));
    } catch (const json::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return events;
}

void save_mask(const std::vector<char>& mask, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  for (std::size_t i = 0; i < mask.size(); ++i)
    out << i << " " << (mask[i] ? 1 : 0) << "\n";
}

std::vector<char> load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<char> mask;
  std::size_t idx = 0;
  int flag = 0;
  while (in >> idx >> flag) {
    if (idx != mask.size() || (flag != 0 && flag != 1))
      throw ConfigError(path + ": malformed mask line " +
                        std::to_string(mask.size() + 1));
    mask.push_back(static_cast<char>(flag));
  }
  if (!in.eof()) throw ConfigError(path + ": malformed mask file");
  return mask;
}

}  // namespace semmap

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "semmap/eval.hpp"
#include "semmap/manifest.hpp"
#include "semmap/serialization.hpp"
#include "semmap/version.hpp"

namespace fs = std::filesystem;
using namespace semmap;

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_stats(const std::string& path, double seconds) {
  std::ofstream out(path);
  out << "duration_seconds " << seconds << "\n";
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir) {
  Timer timer;
  const std::string config_text = read_bytes(scenario_path);
  const ScenarioConfig cfg = scenario_from_json_text(config_text);
  const ScenarioResult sim = run_scenario(cfg);

  fs::create_directories(out_dir);
  const auto out = [&](const char* name) {
    return (fs::path(out_dir) / name).string();
  };
  save_grid(sim.grid, out("grid.pgm"));
  save_log(log_from_scenario(cfg, sim.log), out("log.jsonl"));
  save_events(sim.events, out("events.jsonl"));
  save_annotations(sim.truth, out("truth.txt"));
  save_mask(sim.observed_truth, out("mask.txt"));

  RunManifest manifest;
  manifest.config_hash =
      hash_hex(fnv1a64(config_text.data(), config_text.size()));
  manifest.seed = cfg.seed;
  manifest.engine_version = kEngineVersion;
  manifest.inputs = {scenario_path};
  for (const char* name :
       {"grid.pgm", "grid.pgm.meta", "log.jsonl", "events.jsonl", "truth.txt",
        "mask.txt"})
    manifest.output_hashes[name] = hash_hex(hash_file(out(name)));
  save_manifest(manifest, out("manifest.json"));
  write_stats(out("run_stats.txt"), timer.seconds());

  std::cout << "simulated " << sim.log.size() << " frames, "
            << sim.events.size() << " correction events -> " << out_dir
            << "\n";
  return 0;
}

int cmd_track(const std::string& log_dir, const std::string& grid_path,
              const std::string& config_path, const std::string& out_path) {
  Timer timer;
  const auto in = [&](const char* name) {
    return (fs::path(log_dir) / name).string();
  };
  const LogData log = load_log(in("log.jsonl"));
  std::vector<CorrectionEvent> events;
  if (fs::exists(in("events.jsonl"))) events = load_events(in("events.jsonl"));
  load_grid(grid_path);  // validates the grid the map will reference

  PipelineConfig cfg;
  std::string config_text;
  if (!config_path.empty()) {
    config_text = read_bytes(config_path);
    cfg = pipeline_config_from_json_text(config_text);
  }

  const PipelineResult result = run_tracking(log, events, cfg);
  const AugmentedMap map{grid_path, result.tracker.instances};
  save_augmented(map, out_path);

  RunManifest manifest;
  manifest.config_hash =
      hash_hex(fnv1a64(config_text.data(), config_text.size()));
  manifest.seed = log.seed;
  manifest.engine_version = kEngineVersion;
  manifest.inputs = {in("log.jsonl"), grid_path};
  if (!config_path.empty()) manifest.inputs.push_back(config_path);
  manifest.output_hashes[fs::path(out_path).filename().string()] =
      hash_hex(hash_file(out_path));
  save_manifest(manifest, out_path + ".manifest.json");
  write_stats(out_path + ".run_stats.txt", timer.seconds());

  std::cout << "tracked " << log.frames.size() << " frames -> "
            << map.instances.size() << " instances ("
            << result.dropped_detections << " detections dropped)\n";
  return 0;
}

int cmd_eval(const std::string& augmented_path, const std::string& truth_path,
             const std::string& mask_path, double radius) {
  const AugmentedMap map = load_augmented(augmented_path);
  const auto truth = load_annotations(truth_path);
  std::vector<char> mask(truth.size(), 1);
  if (!mask_path.empty()) mask = load_mask(mask_path);
  const EvalReport report = evaluate(map, truth, mask, radius);
  std::cout << format_report(report);
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::string& values_csv, int seeds,
              const std::string& config_path, const std::string& out_path,
              const std::string& focus_class) {
  const ScenarioConfig base = load_scenario(scenario_path);
  PipelineConfig cfg;
  if (!config_path.empty()) cfg = load_pipeline_config(config_path);

  SweepParameter parameter;
  if (param == "delta") parameter = SweepParameter::delta;
  else if (param == "sigma_I" || param == "sigma_i")
    parameter = SweepParameter::sigma_i;
  else if (param == "max_range") parameter = SweepParameter::max_range;
  else throw ConfigError("sweep: unknown parameter '" + param + "'");

  std::vector<double> values;
  std::stringstream ss(values_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw ConfigError("sweep: bad value '" + token + "'");
    }
  }

  const auto focus = class_from_name(focus_class);
  if (!focus) throw ConfigError("sweep: unknown class '" + focus_class + "'");

  const SweepResult result = sweep(base, cfg, parameter, values, seeds);
  std::cout << format_sweep(result, *focus);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write " + out_path);
    for (const auto& point : result.points) {
      for (const auto& [label, agg] : point.per_class) {
        out << result.parameter << " " << point.value << " "
            << class_name(label) << " fp_rate " << agg.mean_fp_rate
            << " fn_rate " << agg.mean_fn_rate << " avg_error "
            << agg.mean_avg_error << " fp " << agg.mean_fp << " fn "
            << agg.mean_fn << "\n";
      }
    }
  }
  return 0;
}

int cmd_render(const std::string& augmented_path, const std::string& grid_path,
               const std::string& out_path) {
  const AugmentedMap map = load_augmented(augmented_path);
  const OccupancyGrid grid = load_grid(grid_path);
  const int clamped = render(grid, map, out_path);
  std::cout << "rendered " << map.instances.size() << " instances -> "
            << out_path << "\n";
  if (clamped > 0)
    std::cerr << "warning: " << clamped
              << " instance(s) outside the grid were clamped to the border\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"object-augmented 2D mapping engine"};
  app.set_version_flag("--version", kEngineVersion);
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  auto* simulate = app.add_subcommand(
      "simulate", "run a scenario and write its sensor log");
  simulate->add_option("--scenario", scenario_path, "scenario JSON")
      ->required();
  simulate->add_option("--out", out_dir, "output directory")->required();

  std::string log_dir, grid_path, config_path, augmented_path;
  auto* track = app.add_subcommand(
      "track", "replay a log through fitting, association and filtering");
  track->add_option("--log", log_dir, "simulate output directory")->required();
  track->add_option("--grid", grid_path, "occupancy grid PGM")->required();
  track->add_option("--config", config_path, "tracker config JSON");
  track->add_option("--out", augmented_path, "augmented map output")
      ->required();

  std::string truth_path, mask_path;
  double radius = 2.0;
  auto* eval_cmd =
      app.add_subcommand("eval", "score an augmented map against ground truth");
  eval_cmd->add_option("--augmented", augmented_path, "augmented map")
      ->required();
  eval_cmd->add_option("--truth", truth_path, "annotation file")->required();
  eval_cmd->add_option("--mask", mask_path, "observed-truth mask");
  eval_cmd->add_option("--radius", radius, "matching radius, meters");

  std::string param, values_csv, sweep_out, focus_class = "door";
  int seeds = 1;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "sensitivity sweep over one parameter");
  sweep_cmd->add_option("--scenario", scenario_path, "scenario JSON")
      ->required();
  sweep_cmd
      ->add_option("--param", param, "one of: delta, sigma_I, max_range")
      ->required();
  sweep_cmd->add_option("--values", values_csv, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--seeds", seeds, "seeds per value");
  sweep_cmd->add_option("--config", config_path, "tracker config JSON");
  sweep_cmd->add_option("--out", sweep_out, "result file");
  sweep_cmd->add_option("--class", focus_class, "class shown in the table");

  std::string render_out;
  auto* render_cmd =
      app.add_subcommand("render", "rasterize an augmented map overlay");
  render_cmd->add_option("--augmented", augmented_path, "augmented map")
      ->required();
  render_cmd->add_option("--grid", grid_path, "occupancy grid PGM")
      ->required();
  render_cmd->add_option("--out", render_out, "output PPM image")->required();

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir);
    if (track->parsed())
      return cmd_track(log_dir, grid_path, config_path, augmented_path);
    if (eval_cmd->parsed())
      return cmd_eval(augmented_path, truth_path, mask_path, radius);
    if (sweep_cmd->parsed())
      return cmd_sweep(scenario_path, param, values_csv, seeds, config_path,
                       sweep_out, focus_class);
    if (render_cmd->parsed())
      return cmd_render(augmented_path, grid_path, render_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

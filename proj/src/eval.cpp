#include "semmap/eval.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "semmap/assignment.hpp"

namespace semmap {

std::vector<InstanceMatch> match_instances(
    const std::vector<TrackedInstance>& instances,
    const std::vector<GroundTruthAnnotation>& truth, double radius) {
  if (radius <= 0.0) throw ConfigError("match_instances: radius must be > 0");

  std::vector<InstanceMatch> matches;
  for (ClassLabel label : kStaticClasses) {
    std::vector<int> inst_idx, truth_idx;
    for (int i = 0; i < static_cast<int>(instances.size()); ++i)
      if (instances[i].class_label == label) inst_idx.push_back(i);
    for (int i = 0; i < static_cast<int>(truth.size()); ++i)
      if (truth[i].class_label == label) truth_idx.push_back(i);
    if (inst_idx.empty() || truth_idx.empty()) continue;

    CostMatrix costs(inst_idx.size(), truth_idx.size());
    for (int r = 0; r < costs.rows(); ++r)
      for (int c = 0; c < costs.cols(); ++c)
        costs(r, c) = std::hypot(
            instances[inst_idx[r]].state.x - truth[truth_idx[c]].pose.x,
            instances[inst_idx[r]].state.y - truth[truth_idx[c]].pose.y);

    for (const auto& [r, c] : hungarian(costs)) {
      if (costs(r, c) > radius) continue;
      matches.push_back({inst_idx[r], truth_idx[c], costs(r, c)});
    }
  }
  return matches;
}

EvalReport evaluate(const AugmentedMap& map,
                    const std::vector<GroundTruthAnnotation>& truth,
                    const std::vector<char>& mask, double radius) {
  if (mask.size() != truth.size())
    throw ConfigError("evaluate: mask and truth sizes differ");

  // Only annotations the robot actually sensed take part.
  std::vector<GroundTruthAnnotation> observed;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (mask[i]) observed.push_back(truth[i]);

  const auto matches = match_instances(map.instances, observed, radius);

  EvalReport report;
  for (ClassLabel label : kStaticClasses) {
    ClassReport& cr = report.per_class[label];
    for (const auto& inst : map.instances)
      if (inst.class_label == label) ++cr.instances;
    for (const auto& t : observed)
      if (t.class_label == label) ++cr.truth_observed;

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& m : matches) {
      if (map.instances[m.instance].class_label != label) continue;
      ++cr.matched;
      sum += m.distance;
      sum_sq += m.distance * m.distance;
    }
    cr.fp = cr.instances - cr.matched;
    cr.fn = cr.truth_observed - cr.matched;
    if (cr.matched > 0) {
      cr.avg_error = sum / cr.matched;
      const double var = sum_sq / cr.matched - cr.avg_error * cr.avg_error;
      cr.std_error = std::sqrt(std::max(0.0, var));
    }
    const double denom = std::max(1, cr.truth_observed);
    cr.fp_rate = cr.fp / denom;
    cr.fn_rate = cr.fn / denom;
  }
  return report;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "class" << std::right << std::setw(8)
      << "matched" << std::setw(6) << "FP" << std::setw(6) << "FN"
      << std::setw(10) << "avg_err" << std::setw(10) << "std_err"
      << std::setw(9) << "FP_rate" << std::setw(9) << "FN_rate" << "\n";
  for (const auto& [label, cr] : report.per_class) {
    if (cr.instances == 0 && cr.truth_observed == 0) continue;
    out << std::left << std::setw(18) << class_name(label) << std::right
        << std::setw(8) << cr.matched << std::setw(6) << cr.fp << std::setw(6)
        << cr.fn << std::fixed << std::setprecision(3) << std::setw(10)
        << cr.avg_error << std::setw(10) << cr.std_error << std::setprecision(1)
        << std::setw(8) << 100.0 * cr.fp_rate << "%" << std::setw(8)
        << 100.0 * cr.fn_rate << "%" << "\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }
  return out.str();
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::delta: return "delta";
    case SweepParameter::sigma_i: return "sigma_I";
    case SweepParameter::max_range: return "max_range";
  }
  return "?";
}

SweepResult sweep(const ScenarioConfig& base, const PipelineConfig& cfg,
                  SweepParameter parameter, const std::vector<double>& values,
                  int seeds, double radius) {
  if (values.size() < 2) throw ConfigError("sweep: need at least 2 values");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw ConfigError("sweep: values must be strictly increasing");
  if (seeds < 1) throw ConfigError("sweep: need at least 1 seed");

  SweepResult result;
  result.parameter = sweep_parameter_name(parameter);

  for (double value : values) {
    ScenarioConfig scenario = base;
    PipelineConfig pipeline = cfg;
    switch (parameter) {
      case SweepParameter::delta: pipeline.assoc.set_delta(value); break;
      case SweepParameter::sigma_i: scenario.noise.sigma_i = value; break;
      case SweepParameter::max_range: pipeline.assoc.max_range = value; break;
    }

    SweepPoint point;
    point.value = value;
    std::map<ClassLabel, int> runs;
    for (int s = 0; s < seeds; ++s) {
      scenario.seed = base.seed + static_cast<std::uint64_t>(s);
      const ScenarioResult sim = run_scenario(scenario);
      const PipelineResult tracked = run_tracking(
          log_from_scenario(scenario, sim.log), sim.events, pipeline);
      const AugmentedMap map{"", tracked.tracker.instances};
      const EvalReport report =
          evaluate(map, sim.truth, sim.observed_truth, radius);

      for (const auto& [label, cr] : report.per_class) {
        if (cr.instances == 0 && cr.truth_observed == 0) continue;
        ClassAggregate& agg = point.per_class[label];
        agg.mean_matched += cr.matched;
        agg.mean_fp += cr.fp;
        agg.mean_fn += cr.fn;
        agg.mean_fp_rate += cr.fp_rate;
        agg.mean_fn_rate += cr.fn_rate;
        if (cr.matched > 0) {
          agg.mean_avg_error += cr.avg_error;
          ++agg.seeds_with_matches;
        }
        ++runs[label];
      }
    }
    for (auto& [label, agg] : point.per_class) {
      const double n = runs[label];
      agg.mean_matched /= n;
      agg.mean_fp /= n;
      agg.mean_fn /= n;
      agg.mean_fp_rate /= n;
      agg.mean_fn_rate /= n;
      if (agg.seeds_with_matches > 0)
        agg.mean_avg_error /= agg.seeds_with_matches;
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string format_sweep(const SweepResult& result, ClassLabel focus) {
  std::ostringstream out;
  out << std::left << std::setw(10) << result.parameter << std::right
      << std::setw(10) << "FP_rate" << std::setw(10) << "FN_rate"
      << std::setw(10) << "avg_err" << std::setw(10) << "FP" << std::setw(10)
      << "FN" << "  (" << class_name(focus) << ")\n";
  for (const auto& point : result.points) {
    const auto it = point.per_class.find(focus);
    if (it == point.per_class.end()) continue;
    const ClassAggregate& agg = it->second;
    out << std::left << std::setw(10) << point.value << std::right
        << std::fixed << std::setprecision(1) << std::setw(9)
        << 100.0 * agg.mean_fp_rate << "%" << std::setw(9)
        << 100.0 * agg.mean_fn_rate << "%" << std::setprecision(3)
        << std::setw(10) << agg.mean_avg_error << std::setprecision(2)
        << std::setw(10) << agg.mean_fp << std::setw(10) << agg.mean_fn
        << "\n";
    out.unsetf(std::ios::fixed);
    out << std::setprecision(6);
  }
  return out.str();
}

}  // namespace semmap

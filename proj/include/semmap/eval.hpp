#pragma once

#include <map>
#include <string>
#include <vector>

#include "semmap/map_io.hpp"
#include "semmap/pipeline.hpp"

namespace semmap {

struct ClassReport {
  int matched = 0;  // instances paired with an observed ground-truth object
  int fp = 0;
  int fn = 0;
  double avg_error = 0.0;
  double std_error = 0.0;
  double fp_rate = 0.0;  // per observed ground-truth object
  double fn_rate = 0.0;
  int truth_observed = 0;
  int instances = 0;
};

struct EvalReport {
  std::map<ClassLabel, ClassReport> per_class;
};

struct InstanceMatch {
  int instance = 0;  // index into the instance list
  int truth = 0;     // index into the annotation list
  double distance = 0.0;
};

// Per-class one-to-one matching between instances and annotations by
// minimum total Euclidean position distance; pairs farther than radius
// are discarded.
std::vector<InstanceMatch> match_instances(
    const std::vector<TrackedInstance>& instances,
    const std::vector<GroundTruthAnnotation>& truth, double radius);

// Scores a map against annotations. mask flags the annotations that
// entered sensing range during the run; only those can be matched or
// counted as FN, so matched + FN = observed and matched + FP = instances
// hold exactly per class.
EvalReport evaluate(const AugmentedMap& map,
                    const std::vector<GroundTruthAnnotation>& truth,
                    const std::vector<char>& mask, double radius = 2.0);

// Formats a report as an aligned table, one class per row.
std::string format_report(const EvalReport& report);

enum class SweepParameter { delta, sigma_i, max_range };

struct ClassAggregate {
  double mean_matched = 0.0;
  double mean_fp = 0.0;
  double mean_fn = 0.0;
  double mean_fp_rate = 0.0;
  double mean_fn_rate = 0.0;
  // Averaged over the seeds that produced at least one match, so empty
  // runs do not drag the error toward zero.
  double mean_avg_error = 0.0;
  int seeds_with_matches = 0;
};

struct SweepPoint {
  double value = 0.0;
  std::map<ClassLabel, ClassAggregate> per_class;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
};

// Runs scenario -> tracking -> evaluate for every (value, seed) pair and
// aggregates per class. Seeds are base.seed, base.seed + 1, ...
SweepResult sweep(const ScenarioConfig& base, const PipelineConfig& cfg,
                  SweepParameter parameter, const std::vector<double>& values,
                  int seeds, double radius = 2.0);

std::string sweep_parameter_name(SweepParameter p);
std::string format_sweep(const SweepResult& result, ClassLabel focus);

}  // namespace semmap

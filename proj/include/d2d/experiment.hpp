#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2d/model.hpp"
#include "d2d/orchestrate.hpp"

namespace d2d {

enum class PipelineKind {
  CentralizedSeparate,
  CentralizedJoint,
  DecentralizedSeparate,
  DecentralizedJoint,
  Baseline
};
enum class PartitionKind { AllUl, AllDl, HalfHalf };
enum class SweepParameter { None, Epsilon, Gamma };

FadingKind parse_fading(const std::string& name);
CsiMode parse_mode(const std::string& name);
PipelineKind parse_pipeline(const std::string& name);
PartitionKind parse_partition(const std::string& name);
SweepParameter parse_sweep_parameter(const std::string& name);

Partition make_partition(PartitionKind kind, int n_pairs);

struct ExperimentConfig {
  Geometry geometry;
  NetworkParams params;
  FadingKind fading = FadingKind::Exponential;
  CsiMode mode = CsiMode::Erm;
  PipelineKind pipeline = PipelineKind::CentralizedSeparate;
  PartitionKind partition = PartitionKind::AllDl;
  double epsilon = 0.1;
  double gamma = 10.0;
  int realizations = 100;
  uint64_t base_seed = 1;
  long long outage_samples = 10000;  // 0 skips the outage estimate
  bool random_discretize = true;
  int discretize_samples = 64;
  SweepParameter sweep = SweepParameter::None;
  std::vector<double> sweep_values;

  void validate() const;  // throws std::invalid_argument
};

/// Strict JSON parsing: unknown keys and malformed values are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct RealizationMetrics {
  double rate = 0.0;
  double fairness = 0.0;
  double outage = 0.0;  // mean outage probability over the shared channels
  double objective = 0.0;
  double iterations = 0.0;
  double messages = 0.0;
};

/// One network draw and one pipeline run. The instance depends only on
/// (base_seed, realization), so different modes and sweep points see paired
/// realizations.
RealizationMetrics run_one(const ExperimentConfig& cfg, uint64_t realization);

std::vector<RealizationMetrics> run_realizations(const ExperimentConfig& cfg);

struct ExperimentRow {
  double sweep_value = 0.0;
  double rate_mean = 0.0, rate_ci = 0.0;
  double fairness_mean = 0.0, fairness_ci = 0.0;
  double outage_mean = 0.0, outage_ci = 0.0;
  double iters_mean = 0.0, msgs_mean = 0.0;
};

/// Runs the sweep (a single row at the configured epsilon when no sweep is
/// set). ci columns are 1.96 * sd / sqrt(n).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

/// Fixed column order, one row per sweep value, %.17g formatting. The same
/// rows always give the same bytes. Throws on empty input.
std::string to_csv(const std::vector<ExperimentRow>& rows);
void write_csv(const std::vector<ExperimentRow>& rows, const std::string& path);

/// Mean outage of the shared channels of a finished allocation, by Monte
/// Carlo over the statistically known cross gains.
double allocation_outage(const NetworkInstance& inst, const AllocationResult& r,
                         long long samples, uint64_t seed);

}  // namespace d2d

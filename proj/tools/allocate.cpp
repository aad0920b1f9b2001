#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "d2d/experiment.hpp"

namespace {

// "epsilon=0.05:0.05:0.3" (start:step:stop, inclusive) or "gamma=1,5,10"
void apply_sweep(d2d::ExperimentConfig& cfg, const std::string& spec) {
  const size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("sweep must look like parameter=values");
  cfg.sweep = d2d::parse_sweep_parameter(spec.substr(0, eq));
  const std::string vals = spec.substr(eq + 1);
  if (vals.empty()) throw std::invalid_argument("sweep has no values");

  std::vector<double> out;
  if (vals.find(':') != std::string::npos) {
    double start = 0, step = 0, stop = 0;
    char extra = 0;
    if (std::sscanf(vals.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &extra) != 3 ||
        step <= 0.0)
      throw std::invalid_argument("range sweep must be start:step:stop with positive step");
    for (int k = 0;; ++k) {
      const double x = start + k * step;
      if (x > stop + 1e-12) break;
      out.push_back(x);
    }
  } else {
    size_t pos = 0;
    while (pos <= vals.size()) {
      size_t comma = vals.find(',', pos);
      if (comma == std::string::npos) comma = vals.size();
      out.push_back(std::stod(vals.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  cfg.sweep_values = std::move(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underlay device-to-device channel and power allocation simulator"};

  std::string config_path, mode, pipeline, partition, sweep, out_path;
  uint64_t seed = 0;
  int realizations = 0;
  double epsilon = -1.0, gamma = -1.0;
  bool baseline = false;

  app.add_option("--config", config_path, "JSON experiment configuration")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "csi mode: pcsi, erm, mrm");
  app.add_option("--pipeline", pipeline,
                 "centralized_separate, centralized_joint, decentralized_separate, "
                 "decentralized_joint, baseline");
  app.add_option("--partition", partition, "pair split for separate pipelines: all_ul, all_dl, half_half");
  app.add_option("--sweep", sweep, "parameter=start:step:stop or parameter=v1,v2,...");
  app.add_option("--seed", seed, "base seed for the realization stream");
  app.add_option("--realizations", realizations, "network draws per sweep point");
  app.add_option("--epsilon", epsilon, "allowed outage probability");
  app.add_option("--gamma", gamma, "fairness penalty weight");
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  app.add_flag("--baseline", baseline, "run the one-channel-per-pair reference scheme");

  CLI11_PARSE(app, argc, argv);

  try {
    d2d::ExperimentConfig cfg = d2d::load_config(config_path);
    if (!mode.empty()) cfg.mode = d2d::parse_mode(mode);
    if (!pipeline.empty()) cfg.pipeline = d2d::parse_pipeline(pipeline);
    if (!partition.empty()) cfg.partition = d2d::parse_partition(partition);
    if (baseline) cfg.pipeline = d2d::PipelineKind::Baseline;
    if (app.count("--seed")) cfg.base_seed = seed;
    if (app.count("--realizations")) cfg.realizations = realizations;
    if (app.count("--epsilon")) cfg.epsilon = epsilon;
    if (app.count("--gamma")) cfg.gamma = gamma;
    if (!sweep.empty()) apply_sweep(cfg, sweep);
    cfg.validate();

    std::vector<d2d::ExperimentRow> rows = d2d::run_experiment(cfg);
    if (out_path.empty())
      std::cout << d2d::to_csv(rows);
    else
      d2d::write_csv(rows, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

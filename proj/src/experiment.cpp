#include "d2d/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "d2d/oracle.hpp"

namespace d2d {

namespace {

using nlohmann::json;

uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

FadingKind parse_fading(const std::string& name) {
  if (name == "exponential") return FadingKind::Exponential;
  if (name == "gaussian") return FadingKind::Gaussian;
  if (name == "chi_squared") return FadingKind::ChiSquared;
  if (name == "log_normal") return FadingKind::LogNormal;
  bad("unknown fading kind: " + name);
}

CsiMode parse_mode(const std::string& name) {
  if (name == "pcsi") return CsiMode::Pcsi;
  if (name == "erm") return CsiMode::Erm;
  if (name == "mrm") return CsiMode::Mrm;
  bad("unknown csi mode: " + name);
}

PipelineKind parse_pipeline(const std::string& name) {
  if (name == "centralized_separate") return PipelineKind::CentralizedSeparate;
  if (name == "centralized_joint") return PipelineKind::CentralizedJoint;
  if (name == "decentralized_separate") return PipelineKind::DecentralizedSeparate;
  if (name == "decentralized_joint") return PipelineKind::DecentralizedJoint;
  if (name == "baseline") return PipelineKind::Baseline;
  bad("unknown pipeline: " + name);
}

PartitionKind parse_partition(const std::string& name) {
  if (name == "all_ul") return PartitionKind::AllUl;
  if (name == "all_dl") return PartitionKind::AllDl;
  if (name == "half_half") return PartitionKind::HalfHalf;
  bad("unknown partition: " + name);
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "none") return SweepParameter::None;
  if (name == "epsilon") return SweepParameter::Epsilon;
  if (name == "gamma") return SweepParameter::Gamma;
  bad("unknown sweep parameter: " + name);
}

Partition make_partition(PartitionKind kind, int n_pairs) {
  switch (kind) {
    case PartitionKind::AllUl:
      return Partition::all_ul(n_pairs);
    case PartitionKind::AllDl:
      return Partition::all_dl(n_pairs);
    case PartitionKind::HalfHalf:
      return Partition::half_half(n_pairs);
  }
  bad("unknown partition kind");
}

void ExperimentConfig::validate() const {
  params.validate();
  if (geometry.cell_radius_m <= 0.0) bad("geometry.cell_radius_m must be positive");
  if (geometry.d2d_radius_m <= 0.0) bad("geometry.d2d_radius_m must be positive");
  if (geometry.pathloss_exponent <= 0.0) bad("geometry.pathloss_exponent must be positive");
  if (geometry.ref_gain <= 0.0) bad("geometry.ref_gain must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) bad("epsilon must lie in (0, 1)");
  if (gamma < 0.0) bad("gamma must be nonnegative");
  if (realizations < 1) bad("realizations must be >= 1");
  if (outage_samples < 0) bad("outage_samples must be >= 0");
  if (discretize_samples < 1) bad("discretize_samples must be >= 1");
  if (sweep != SweepParameter::None && sweep_values.empty())
    bad("sweep_values must be nonempty when a sweep parameter is set");
  for (double v : sweep_values) {
    if (sweep == SweepParameter::Epsilon && !(v > 0.0 && v < 1.0))
      bad("swept epsilon values must lie in (0, 1)");
    if (sweep == SweepParameter::Gamma && v < 0.0) bad("swept gamma values must be nonnegative");
  }
}

namespace {

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) bad("unknown config key in " + where + ": " + it.key());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root = json::parse(json_text);
  if (!root.is_object()) bad("config root must be a JSON object");
  reject_unknown(root,
                 {"geometry", "params", "fading", "mode", "pipeline", "partition", "epsilon",
                  "gamma", "realizations", "base_seed", "outage_samples", "random_discretize",
                  "discretize_samples", "sweep"},
                 "config");

  ExperimentConfig cfg;
  if (root.contains("geometry")) {
    const json& g = root.at("geometry");
    reject_unknown(g, {"cell_radius_m", "d2d_radius_m", "pathloss_exponent", "ref_gain"},
                   "geometry");
    read_field(g, "cell_radius_m", cfg.geometry.cell_radius_m);
    read_field(g, "d2d_radius_m", cfg.geometry.d2d_radius_m);
    read_field(g, "pathloss_exponent", cfg.geometry.pathloss_exponent);
    read_field(g, "ref_gain", cfg.geometry.ref_gain);
  }
  if (root.contains("params")) {
    const json& p = root.at("params");
    reject_unknown(p,
                   {"n_channels_ul", "n_channels_dl", "n_pairs", "p_c_max_ul", "p_c_max_dl",
                    "p_d_max", "noise", "eta_c_min_ul", "eta_c_min_dl", "eta_d_min"},
                   "params");
    read_field(p, "n_channels_ul", cfg.params.n_channels_ul);
    read_field(p, "n_channels_dl", cfg.params.n_channels_dl);
    read_field(p, "n_pairs", cfg.params.n_pairs);
    read_field(p, "p_c_max_ul", cfg.params.p_c_max_ul);
    read_field(p, "p_c_max_dl", cfg.params.p_c_max_dl);
    read_field(p, "p_d_max", cfg.params.p_d_max);
    read_field(p, "noise", cfg.params.noise);
    read_field(p, "eta_c_min_ul", cfg.params.eta_c_min_ul);
    read_field(p, "eta_c_min_dl", cfg.params.eta_c_min_dl);
    read_field(p, "eta_d_min", cfg.params.eta_d_min);
  }
  if (root.contains("fading")) cfg.fading = parse_fading(root.at("fading").get<std::string>());
  if (root.contains("mode")) cfg.mode = parse_mode(root.at("mode").get<std::string>());
  if (root.contains("pipeline"))
    cfg.pipeline = parse_pipeline(root.at("pipeline").get<std::string>());
  if (root.contains("partition"))
    cfg.partition = parse_partition(root.at("partition").get<std::string>());
  read_field(root, "epsilon", cfg.epsilon);
  read_field(root, "gamma", cfg.gamma);
  read_field(root, "realizations", cfg.realizations);
  read_field(root, "base_seed", cfg.base_seed);
  read_field(root, "outage_samples", cfg.outage_samples);
  read_field(root, "random_discretize", cfg.random_discretize);
  read_field(root, "discretize_samples", cfg.discretize_samples);
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    reject_unknown(s, {"parameter", "values"}, "sweep");
    if (s.contains("parameter"))
      cfg.sweep = parse_sweep_parameter(s.at("parameter").get<std::string>());
    if (s.contains("values")) cfg.sweep_values = s.at("values").get<std::vector<double>>();
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

double allocation_outage(const NetworkInstance& inst, const AllocationResult& r,
                         long long samples, uint64_t seed) {
  if (samples <= 0) return 0.0;
  double sum = 0.0;
  long long cells = 0;
  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const bool ul = s == Spectrum::Uplink;
    const Mat& b = ul ? r.b_ul : r.b_dl;
    const Mat& pcm = ul ? r.p_c_ul : r.p_c_dl;
    const Mat& pdm = ul ? r.p_d_ul : r.p_d_dl;
    for (int i = 0; i < b.rows; ++i) {
      for (int j = 0; j < b.cols; ++j) {
        if (b(i, j) == 0.0) continue;
        CanonicalSub cs = make_canonical_subproblem(inst, s, i, j);
        const double pc = cs.swapped ? pdm(j, i) : pcm(i, j);
        const double pd = cs.swapped ? pcm(i, j) : pdm(j, i);
        oracle::OutageEstimate est = oracle::monte_carlo_outage(
            pc, pd, cs.sub, *cs.fading, samples,
            mix_seed(seed, (static_cast<uint64_t>(ul) << 32) ^ (static_cast<uint64_t>(i) << 16) ^
                               static_cast<uint64_t>(j)));
        sum += est.p_hat;
        ++cells;
      }
    }
  }
  return cells > 0 ? sum / static_cast<double>(cells) : 0.0;
}

RealizationMetrics run_one(const ExperimentConfig& cfg, uint64_t realization) {
  NetworkInstance inst =
      generate_instance(mix_seed(cfg.base_seed, realization), cfg.geometry, cfg.params, cfg.fading);

  PipelineConfig pc;
  pc.mode = cfg.mode;
  pc.epsilon = cfg.epsilon;
  pc.gamma = cfg.gamma;
  pc.random_discretize = cfg.random_discretize;
  pc.discretize_samples = cfg.discretize_samples;
  pc.seed = mix_seed(mix_seed(cfg.base_seed, realization), 0xd15c);

  Partition part = make_partition(cfg.partition, cfg.params.n_pairs);
  AllocationResult r;
  switch (cfg.pipeline) {
    case PipelineKind::CentralizedSeparate:
      r = run_centralized_separate(inst, part, pc);
      break;
    case PipelineKind::CentralizedJoint:
      r = run_centralized_joint(inst, pc);
      break;
    case PipelineKind::DecentralizedSeparate:
      r = run_decentralized_separate(inst, part, pc).first;
      break;
    case PipelineKind::DecentralizedJoint:
      r = run_decentralized_joint(inst, pc).first;
      break;
    case PipelineKind::Baseline:
      r = run_single_channel_baseline(inst, part, pc);
      break;
  }

  RealizationMetrics m;
  m.rate = r.total_rate;
  m.fairness = r.fairness_delta;
  m.objective = r.objective;
  m.iterations = r.iterations;
  m.messages = static_cast<double>(r.messages_exchanged);
  m.outage = allocation_outage(inst, r, cfg.outage_samples,
                               mix_seed(mix_seed(cfg.base_seed, realization), 0x07a6e));
  return m;
}

std::vector<RealizationMetrics> run_realizations(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RealizationMetrics> out;
  out.reserve(static_cast<size_t>(cfg.realizations));
  for (int r = 0; r < cfg.realizations; ++r) out.push_back(run_one(cfg, static_cast<uint64_t>(r)));
  return out;
}

namespace {

struct MeanCi {
  double mean = 0.0, ci = 0.0;
};

MeanCi aggregate(const std::vector<RealizationMetrics>& ms, double RealizationMetrics::*field) {
  MeanCi out;
  const double n = static_cast<double>(ms.size());
  for (const RealizationMetrics& m : ms) out.mean += m.*field;
  out.mean /= n;
  if (ms.size() > 1) {
    double ss = 0.0;
    for (const RealizationMetrics& m : ms) {
      const double d = m.*field - out.mean;
      ss += d * d;
    }
    out.ci = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<double> values = cfg.sweep == SweepParameter::None
                                   ? std::vector<double>{cfg.epsilon}
                                   : cfg.sweep_values;

  std::vector<ExperimentRow> rows;
  rows.reserve(values.size());
  for (double val : values) {
    ExperimentConfig point = cfg;
    if (cfg.sweep == SweepParameter::Epsilon) point.epsilon = val;
    if (cfg.sweep == SweepParameter::Gamma) point.gamma = val;

    std::vector<RealizationMetrics> ms = run_realizations(point);
    ExperimentRow row;
    row.sweep_value = val;
    MeanCi rate = aggregate(ms, &RealizationMetrics::rate);
    MeanCi fair = aggregate(ms, &RealizationMetrics::fairness);
    MeanCi outage = aggregate(ms, &RealizationMetrics::outage);
    row.rate_mean = rate.mean;
    row.rate_ci = rate.ci;
    row.fairness_mean = fair.mean;
    row.fairness_ci = fair.ci;
    row.outage_mean = outage.mean;
    row.outage_ci = outage.ci;
    row.iters_mean = aggregate(ms, &RealizationMetrics::iterations).mean;
    row.msgs_mean = aggregate(ms, &RealizationMetrics::messages).mean;
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("to_csv: no rows");
  std::string out =
      "sweep_value,rate_mean,rate_ci,fairness_mean,fairness_ci,outage_mean,outage_ci,"
      "iters_mean,msgs_mean\n";
  char buf[64];
  auto put = [&](double x, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
    out += sep;
  };
  for (const ExperimentRow& r : rows) {
    put(r.sweep_value, ',');
    put(r.rate_mean, ',');
    put(r.rate_ci, ',');
    put(r.fairness_mean, ',');
    put(r.fairness_ci, ',');
    put(r.outage_mean, ',');
    put(r.outage_ci, ',');
    put(r.iters_mean, ',');
    put(r.msgs_mean, '\n');
  }
  return out;
}

void write_csv(const std::vector<ExperimentRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << to_csv(rows);
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace d2d

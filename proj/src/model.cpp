#include "d2d/model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace d2d {

void NetworkParams::validate() const {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("NetworkParams: ") + msg);
  };
  need(n_channels_ul >= 1, "n_channels_ul must be >= 1");
  need(n_channels_dl >= 1, "n_channels_dl must be >= 1");
  need(n_pairs >= 1, "n_pairs must be >= 1");
  need(p_c_max_ul > 0, "p_c_max_ul must be > 0");
  need(p_c_max_dl > 0, "p_c_max_dl must be > 0");
  need(p_d_max > 0, "p_d_max must be > 0");
  need(noise > 0, "noise must be > 0");
  need(eta_c_min_ul > 0, "eta_c_min_ul must be > 0");
  need(eta_c_min_dl > 0, "eta_c_min_dl must be > 0");
  need(eta_d_min > 0, "eta_d_min must be > 0");
  need(epsilon > 0 && epsilon < 1, "epsilon must be in (0,1)");
  need(gamma >= 0, "gamma must be >= 0");
}

namespace {

constexpr double kMinDistanceM = 1.0;

double path_gain(const Geometry& g, const Vec2& a, const Vec2& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  double d = std::sqrt(dx * dx + dy * dy);
  if (d < kMinDistanceM) d = kMinDistanceM;
  return g.ref_gain * std::pow(d, -g.pathloss_exponent);
}

Vec2 uniform_disc(std::mt19937_64& rng, const Vec2& center, double radius) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double r = radius * std::sqrt(u01(rng));
  double ang = 2.0 * std::numbers::pi * u01(rng);
  return {center.x + r * std::cos(ang), center.y + r * std::sin(ang)};
}

FadingModel make_fading(FadingKind kind, double mean) {
  switch (kind) {
    case FadingKind::Exponential: return FadingModel::exponential(mean);
    case FadingKind::Gaussian:    return FadingModel::gaussian(mean, 0.25 * mean * mean);
    case FadingKind::ChiSquared:  return FadingModel::chi_squared(mean, 0.25 * mean * mean);
    case FadingKind::LogNormal:   return FadingModel::log_normal(mean, 0.25 * mean * mean);
  }
  throw std::invalid_argument("unknown fading kind");
}

}  // namespace

NetworkInstance generate_instance(uint64_t seed, const Geometry& geometry,
                                  const NetworkParams& params, FadingKind fading) {
  params.validate();
  if (!(geometry.cell_radius_m > 0) || !(geometry.d2d_radius_m > 0) ||
      !(geometry.pathloss_exponent > 0) || !(geometry.ref_gain > 0)) {
    throw std::invalid_argument("Geometry fields must be positive");
  }

  NetworkInstance inst;
  inst.params = params;
  inst.geometry = geometry;
  inst.fading_kind = fading;
  inst.seed = seed;

  std::mt19937_64 rng(seed);
  const Vec2 bs{0.0, 0.0};

  inst.pos_cu_ul.reserve(params.n_channels_ul);
  for (int i = 0; i < params.n_channels_ul; ++i)
    inst.pos_cu_ul.push_back(uniform_disc(rng, bs, geometry.cell_radius_m));
  inst.pos_cu_dl.reserve(params.n_channels_dl);
  for (int i = 0; i < params.n_channels_dl; ++i)
    inst.pos_cu_dl.push_back(uniform_disc(rng, bs, geometry.cell_radius_m));
  inst.pos_d2d_tx.reserve(params.n_pairs);
  inst.pos_d2d_rx.reserve(params.n_pairs);
  for (int j = 0; j < params.n_pairs; ++j) {
    Vec2 tx = uniform_disc(rng, bs, geometry.cell_radius_m);
    inst.pos_d2d_tx.push_back(tx);
    inst.pos_d2d_rx.push_back(uniform_disc(rng, tx, geometry.d2d_radius_m));
  }

  for (int i = 0; i < params.n_channels_ul; ++i)
    inst.g_c_ul.push_back(path_gain(geometry, inst.pos_cu_ul[i], bs));
  for (int i = 0; i < params.n_channels_dl; ++i)
    inst.g_c_dl.push_back(path_gain(geometry, bs, inst.pos_cu_dl[i]));
  for (int j = 0; j < params.n_pairs; ++j) {
    inst.g_d.push_back(path_gain(geometry, inst.pos_d2d_tx[j], inst.pos_d2d_rx[j]));
    inst.h_d_ul.push_back(path_gain(geometry, inst.pos_d2d_tx[j], bs));
    inst.h_c_dl.push_back(path_gain(geometry, bs, inst.pos_d2d_rx[j]));
  }

  inst.h_c_ul_model.resize(params.n_channels_ul);
  for (int i = 0; i < params.n_channels_ul; ++i) {
    for (int j = 0; j < params.n_pairs; ++j) {
      double mean = path_gain(geometry, inst.pos_cu_ul[i], inst.pos_d2d_rx[j]);
      inst.h_c_ul_model[i].push_back(make_fading(fading, mean));
    }
  }
  inst.h_d_dl_model.resize(params.n_pairs);
  for (int j = 0; j < params.n_pairs; ++j) {
    for (int i = 0; i < params.n_channels_dl; ++i) {
      double mean = path_gain(geometry, inst.pos_d2d_tx[j], inst.pos_cu_dl[i]);
      inst.h_d_dl_model[j].push_back(make_fading(fading, mean));
    }
  }
  return inst;
}

double rate_shared(double p_sig, double g, double p_int, double h, double noise) {
  return std::log2(1.0 + p_sig * g / (noise + p_int * h));
}

double rate_solo(double p_c_max, double g_c, double noise) {
  return std::log2(1.0 + p_c_max * g_c / noise);
}

double rate_gain_v(int i, int j, double p_c, double p_d, const NetworkInstance& inst,
                   Spectrum spectrum, double h_eff) {
  const NetworkParams& p = inst.params;
  if (spectrum == Spectrum::Downlink) {
    double r_c = rate_shared(p_c, inst.g_c_dl[i], p_d, h_eff, p.noise);
    double r_d = rate_shared(p_d, inst.g_d[j], p_c, inst.h_c_dl[j], p.noise);
    return r_c + r_d - rate_solo(p.p_c_max_dl, inst.g_c_dl[i], p.noise);
  }
  double r_c = rate_shared(p_c, inst.g_c_ul[i], p_d, inst.h_d_ul[j], p.noise);
  double r_d = rate_shared(p_d, inst.g_d[j], p_c, h_eff, p.noise);
  return r_c + r_d - rate_solo(p.p_c_max_ul, inst.g_c_ul[i], p.noise);
}

double total_rate(const Mat& b, const Mat& v, const std::vector<double>& solo) {
  double total = 0.0;
  for (int i = 0; i < b.rows; ++i) {
    total += solo[static_cast<size_t>(i)];
    for (int j = 0; j < b.cols; ++j) {
      if (b(i, j) != 0.0) total += b(i, j) * v(i, j);
    }
  }
  return total;
}

double fairness_delta(const Mat& b, int n_channels, int n_pairs) {
  double m0 = static_cast<double>(n_channels) / n_pairs;
  double s = 0.0;
  for (int j = 0; j < b.cols; ++j) {
    double mj = 0.0;
    for (int i = 0; i < b.rows; ++i) mj += b(i, j);
    s += (mj - m0) * (mj - m0);
  }
  return s * n_pairs / (static_cast<double>(n_channels) * n_channels);
}

double joint_fairness_delta(const Mat& b_ul, const Mat& b_dl, const NetworkParams& params) {
  int n_pairs = params.n_pairs;
  double m0 = static_cast<double>(params.n_channels_ul + params.n_channels_dl) / n_pairs;
  double s = 0.0;
  for (int j = 0; j < n_pairs; ++j) {
    double mj = 0.0;
    for (int i = 0; i < b_ul.rows; ++i) mj += b_ul(i, j);
    for (int i = 0; i < b_dl.rows; ++i) mj += b_dl(i, j);
    s += (mj - m0) * (mj - m0);
  }
  return s / (m0 * m0 * n_pairs);
}

std::vector<double> solo_rates(const NetworkInstance& inst, Spectrum s) {
  std::vector<double> out;
  int n = inst.n_channels(s);
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    double g = s == Spectrum::Uplink ? inst.g_c_ul[i] : inst.g_c_dl[i];
    out.push_back(rate_solo(inst.p_c_max(s), g, inst.params.noise));
  }
  return out;
}

}  // namespace d2d

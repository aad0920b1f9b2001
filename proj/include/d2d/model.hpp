#pragma once

#include <cstdint>
#include <vector>

#include "d2d/fading.hpp"
#include "d2d/matrix.hpp"

namespace d2d {

enum class Spectrum { Uplink, Downlink };
enum class CsiMode { Pcsi, Erm, Mrm };

struct NetworkParams {
  int n_channels_ul = 10;
  int n_channels_dl = 10;
  int n_pairs = 10;
  double p_c_max_ul = 1.0;   // cellular user transmit cap (uplink)
  double p_c_max_dl = 10.0;  // base station transmit cap per downlink channel
  double p_d_max = 0.5;      // device pair transmit cap
  double noise = 1e-3;
  double eta_c_min_ul = 1.0;  // cellular SINR floor, uplink channels
  double eta_c_min_dl = 1.0;  // cellular SINR floor, downlink channels
  double eta_d_min = 1.0;     // device pair SINR floor
  double epsilon = 0.1;       // allowed outage probability
  double gamma = 10.0;        // fairness penalty weight

  void validate() const;  // throws std::invalid_argument with the offending field
};

struct Geometry {
  double cell_radius_m = 500.0;
  double d2d_radius_m = 5.0;
  double pathloss_exponent = 2.0;
  double ref_gain = 1.0;  // path gain at the 1 m clamp distance
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// One realization of the network: deterministic link gains plus fading models
/// for the two cross links that are only known statistically. The base
/// station sits at the origin. Channel i in a spectrum is owned by cellular
/// user i of that spectrum.
struct NetworkInstance {
  NetworkParams params;
  Geometry geometry;
  FadingKind fading_kind = FadingKind::Exponential;
  uint64_t seed = 0;

  // deterministic direct gains
  std::vector<double> g_c_ul;  // uplink cellular user -> base station
  std::vector<double> g_c_dl;  // base station -> downlink cellular user
  std::vector<double> g_d;     // pair transmitter -> pair receiver

  // deterministic interference gains (measurable at the base station side)
  std::vector<double> h_d_ul;  // pair transmitter -> base station
  std::vector<double> h_c_dl;  // base station -> pair receiver

  // statistically known interference gains
  // h_c_ul_model[i][j]: uplink cellular user i -> receiver of pair j
  // h_d_dl_model[j][i]: transmitter of pair j -> downlink cellular user i
  std::vector<std::vector<FadingModel>> h_c_ul_model;
  std::vector<std::vector<FadingModel>> h_d_dl_model;

  // node positions, kept for provenance
  std::vector<Vec2> pos_cu_ul, pos_cu_dl, pos_d2d_tx, pos_d2d_rx;

  int n_channels(Spectrum s) const {
    return s == Spectrum::Uplink ? params.n_channels_ul : params.n_channels_dl;
  }
  double p_c_max(Spectrum s) const {
    return s == Spectrum::Uplink ? params.p_c_max_ul : params.p_c_max_dl;
  }
  double eta_c_min(Spectrum s) const {
    return s == Spectrum::Uplink ? params.eta_c_min_ul : params.eta_c_min_dl;
  }
  const FadingModel& cross_fading(Spectrum s, int i, int j) const {
    return s == Spectrum::Uplink ? h_c_ul_model[i][j] : h_d_dl_model[j][i];
  }
};

/// Deterministic instance builder. Positions are drawn uniformly: cellular
/// users and pair transmitters in the cell disc, each pair receiver in a disc
/// of radius d2d_radius_m around its transmitter. Distances are clamped below
/// at 1 m before the path-loss law ref_gain * d^-alpha is applied. Fading
/// means equal the path gain of the corresponding cross link; the variance of
/// the Gaussian / chi-squared / log-normal kinds is (mean/2)^2.
NetworkInstance generate_instance(uint64_t seed, const Geometry& geometry,
                                  const NetworkParams& params, FadingKind fading);

/// log2(1 + p_sig*g / (noise + p_int*h))
double rate_shared(double p_sig, double g, double p_int, double h, double noise);

/// Rate of an unshared cellular channel, transmit power at its cap.
double rate_solo(double p_c_max, double g_c, double noise);

/// Sum-rate change when pair j shares channel i of the given spectrum at
/// powers (p_c, p_d), relative to the channel staying unshared. h_eff is the
/// value substituted for the statistically known cross gain of that spectrum
/// (downlink: pair tx -> cellular user; uplink: cellular user -> pair rx).
/// May be negative; the unshared channel keeps rate_solo as its baseline.
double rate_gain_v(int i, int j, double p_c, double p_d, const NetworkInstance& inst,
                   Spectrum spectrum, double h_eff);

/// Total rate over one spectrum given a binary assignment b (n_channels x
/// n_pairs), per-cell utilities v, and per-channel solo rates.
double total_rate(const Mat& b, const Mat& v, const std::vector<double>& solo_rates);

/// Normalized variance of per-pair channel counts around n_channels/n_pairs.
/// Zero is perfectly fair; larger is worse.
double fairness_delta(const Mat& b, int n_channels, int n_pairs);

/// Fairness over both spectra jointly, counts m_j^(ul) + m_j^(dl) against the
/// reference (n_channels_ul + n_channels_dl) / n_pairs.
double joint_fairness_delta(const Mat& b_ul, const Mat& b_dl, const NetworkParams& params);

std::vector<double> solo_rates(const NetworkInstance& inst, Spectrum s);

}  // namespace d2d

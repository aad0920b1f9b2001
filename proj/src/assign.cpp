#include "d2d/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace d2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRowMassFloor = 1e-6;

double clip_utility(double v) { return v < kUtilityFloor ? kUtilityFloor : v; }

// splitmix64 round, used to derive independent seeds
uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double relaxed_objective_g(const Mat& b, const Mat& v, double gamma) {
  double g = 0.0;
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (b(i, j) != 0.0) g += b(i, j) * clip_utility(v(i, j));
  return g - gamma * fairness_delta(b, b.rows, b.cols);
}

Mat grad_g(const Mat& b, const Mat& v, double gamma) {
  const int nc = b.rows, nd = b.cols;
  const double k1 = gamma * nd / (static_cast<double>(nc) * nc);
  const double k2 = static_cast<double>(nc) / nd;
  Mat g(nc, nd);
  for (int j = 0; j < nd; ++j) {
    double mj = 0.0;
    for (int i = 0; i < nc; ++i) mj += b(i, j);
    double pen = 2.0 * k1 * (mj - k2);
    for (int i = 0; i < nc; ++i) g(i, j) = clip_utility(v(i, j)) - pen;
  }
  return g;
}

void project_column(std::vector<double>& x) {
  double sum = 0.0;
  for (double& xi : x) {
    if (xi < 0.0) xi = 0.0;
    sum += xi;
  }
  if (sum <= 1.0) return;
  // unit-simplex projection of the clipped vector
  std::vector<double> srt(x);
  std::sort(srt.begin(), srt.end(), std::greater<double>());
  double csum = 0.0, tau = 0.0;
  for (size_t k = 0; k < srt.size(); ++k) {
    csum += srt[k];
    double t = (csum - 1.0) / static_cast<double>(k + 1);
    if (k + 1 == srt.size() || srt[k + 1] <= t) {
      tau = t;
      break;
    }
  }
  for (double& xi : x) xi = std::max(0.0, xi - tau);
}

namespace detail {

SeparateStepParams separate_step_params(int n_channels, int n_pairs, double gamma,
                                        double step_override) {
  SeparateStepParams sp;
  sp.k1 = gamma * n_pairs / (static_cast<double>(n_channels) * n_channels);
  sp.k2 = static_cast<double>(n_channels) / n_pairs;
  // Curvature of the penalty gradient per column is 2*k1*nc; with gamma = 0
  // the objective is linear and any step lands on the optimal face.
  const double L = 2.0 * sp.k1 * n_channels;
  sp.step = step_override > 0.0 ? step_override : (L > 0.0 ? 1.0 / L : 1e6);
  return sp;
}

JointStepParams joint_step_params(int ncu, int ncd, int n_pairs, double gamma,
                                  double step_override) {
  JointStepParams sp;
  sp.m0 = static_cast<double>(ncu + ncd) / n_pairs;
  sp.k1 = gamma / (sp.m0 * sp.m0 * n_pairs);
  const double L = 2.0 * sp.k1 * (ncu + ncd);
  sp.step = step_override > 0.0 ? step_override : (L > 0.0 ? 1.0 / L : 1e6);
  return sp;
}

std::vector<char> pin_mask(const Mat& v) {
  std::vector<char> pinned(v.a.size());
  for (size_t k = 0; k < v.a.size(); ++k) pinned[k] = v.a[k] <= kUtilityFloor ? 1 : 0;
  return pinned;
}

// Pinned cells never enter the arithmetic, so sentinel utilities stay inert.
void pgd_step(Mat& b, const Mat& v, const SeparateStepParams& sp,
              const std::vector<char>& pinned) {
  const int nc = b.rows, nd = b.cols;
  for (int j = 0; j < nd; ++j) {
    double mj = 0.0;
    for (int i = 0; i < nc; ++i) mj += b(i, j);
    double pen = 2.0 * sp.k1 * (mj - sp.k2);
    for (int i = 0; i < nc; ++i) {
      if (pinned[static_cast<size_t>(i) * nd + j]) continue;
      b(i, j) += sp.step * (v(i, j) - pen);
    }
  }
  std::vector<double> row(nd);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nd; ++j) row[j] = b(i, j);
    project_column(row);
    for (int j = 0; j < nd; ++j) b(i, j) = pinned[static_cast<size_t>(i) * nd + j] ? 0.0 : row[j];
  }
}

}  // namespace detail

PgdResult pgd_assign(const Mat& v, double gamma, const PGDConfig& cfg, std::vector<Mat>* trace) {
  const int nc = v.rows, nd = v.cols;
  const detail::SeparateStepParams sp = detail::separate_step_params(nc, nd, gamma, cfg.step_size);

  PgdResult res;
  res.b = Mat(nc, nd, 0.0);
  res.step_size = sp.step;
  std::vector<char> pinned = detail::pin_mask(v);

  double prev = relaxed_objective_g(res.b, v, gamma);
  res.objective_trace.push_back(prev);
  for (int k = 0; k < cfg.max_iters; ++k) {
    detail::pgd_step(res.b, v, sp, pinned);
    double cur = relaxed_objective_g(res.b, v, gamma);
    res.objective_trace.push_back(cur);
    res.iterations = k + 1;
    if (trace) trace->push_back(res.b);
    if (std::fabs(cur - prev) <= cfg.objective_tol * std::max(1.0, std::fabs(cur))) break;
    prev = cur;
  }
  return res;
}

namespace {

double joint_relaxed_objective(const Mat& bu, const Mat& bd, const Mat& vu, const Mat& vd,
                               double gamma, const NetworkParams& params) {
  double g = 0.0;
  for (size_t k = 0; k < bu.a.size(); ++k)
    if (bu.a[k] != 0.0) g += bu.a[k] * clip_utility(vu.a[k]);
  for (size_t k = 0; k < bd.a.size(); ++k)
    if (bd.a[k] != 0.0) g += bd.a[k] * clip_utility(vd.a[k]);
  return g - gamma * joint_fairness_delta(bu, bd, params);
}

}  // namespace

namespace detail {

void pgd_step_joint(Mat& bu, Mat& bd, const Mat& vu, const Mat& vd, const JointStepParams& sp,
                    const std::vector<char>& pin_u, const std::vector<char>& pin_d) {
  const int nd = bu.cols;
  for (int j = 0; j < nd; ++j) {
    double mj = 0.0;
    for (int i = 0; i < bu.rows; ++i) mj += bu(i, j);
    for (int i = 0; i < bd.rows; ++i) mj += bd(i, j);
    double pen = 2.0 * sp.k1 * (mj - sp.m0);
    for (int i = 0; i < bu.rows; ++i) {
      if (pin_u[static_cast<size_t>(i) * nd + j]) continue;
      bu(i, j) += sp.step * (vu(i, j) - pen);
    }
    for (int i = 0; i < bd.rows; ++i) {
      if (pin_d[static_cast<size_t>(i) * nd + j]) continue;
      bd(i, j) += sp.step * (vd(i, j) - pen);
    }
  }
  std::vector<double> row(nd);
  auto project_rows = [&](Mat& b, const std::vector<char>& pin) {
    for (int i = 0; i < b.rows; ++i) {
      for (int j = 0; j < nd; ++j) row[j] = b(i, j);
      project_column(row);
      for (int j = 0; j < nd; ++j) b(i, j) = pin[static_cast<size_t>(i) * nd + j] ? 0.0 : row[j];
    }
  };
  project_rows(bu, pin_u);
  project_rows(bd, pin_d);
}

}  // namespace detail

JointPgdResult pgd_assign_joint(const Mat& v_ul, const Mat& v_dl, double gamma,
                                const NetworkParams& params, const PGDConfig& cfg,
                                std::vector<Mat>* trace_ul, std::vector<Mat>* trace_dl) {
  const int nd = params.n_pairs;
  const int ncu = v_ul.rows, ncd = v_dl.rows;
  const detail::JointStepParams sp = detail::joint_step_params(ncu, ncd, nd, gamma, cfg.step_size);

  JointPgdResult res;
  res.b_ul = Mat(ncu, nd, 0.0);
  res.b_dl = Mat(ncd, nd, 0.0);
  res.step_size = sp.step;
  std::vector<char> pin_u = detail::pin_mask(v_ul), pin_d = detail::pin_mask(v_dl);

  double prev = joint_relaxed_objective(res.b_ul, res.b_dl, v_ul, v_dl, gamma, params);
  res.objective_trace.push_back(prev);
  for (int k = 0; k < cfg.max_iters; ++k) {
    detail::pgd_step_joint(res.b_ul, res.b_dl, v_ul, v_dl, sp, pin_u, pin_d);
    double cur = joint_relaxed_objective(res.b_ul, res.b_dl, v_ul, v_dl, gamma, params);
    res.objective_trace.push_back(cur);
    res.iterations = k + 1;
    if (trace_ul) trace_ul->push_back(res.b_ul);
    if (trace_dl) trace_dl->push_back(res.b_dl);
    if (std::fabs(cur - prev) <= cfg.objective_tol * std::max(1.0, std::fabs(cur))) break;
    prev = cur;
  }
  return res;
}

double assignment_objective(const Mat& b, const Mat& v, double gamma) {
  double g = 0.0;
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (b(i, j) != 0.0) g += b(i, j) * clip_utility(v(i, j));
  return g - gamma * fairness_delta(b, b.rows, b.cols);
}

double joint_assignment_objective(const Mat& b_ul, const Mat& b_dl, const Mat& v_ul,
                                  const Mat& v_dl, double gamma, const NetworkParams& params) {
  return joint_relaxed_objective(b_ul, b_dl, v_ul, v_dl, gamma, params);
}

Mat discretize_max(const Mat& b_relaxed) {
  Mat b(b_relaxed.rows, b_relaxed.cols, 0.0);
  for (int i = 0; i < b_relaxed.rows; ++i) {
    int arg = -1;
    double best = kRowMassFloor;
    for (int j = 0; j < b_relaxed.cols; ++j) {
      if (b_relaxed(i, j) > best) {
        best = b_relaxed(i, j);
        arg = j;
      }
    }
    if (arg >= 0) b(i, arg) = 1.0;
  }
  return b;
}

namespace {

template <typename Score, typename Sampler>
Mat rounded_best(const Mat& rel, int n_samples, uint64_t seed, Score score, Sampler sample_row) {
  Mat best = discretize_max(rel);
  double best_score = score(best);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int s = 1; s < n_samples; ++s) {
    Mat cand(rel.rows, rel.cols, 0.0);
    for (int i = 0; i < rel.rows; ++i) {
      int j = sample_row(rel, i, u01(rng));
      if (j >= 0) cand(i, j) = 1.0;
    }
    double sc = score(cand);
    if (sc > best_score) {
      best_score = sc;
      best = std::move(cand);
    }
  }
  return best;
}

int sample_categorical(const Mat& rel, int i, double u) {
  double mass = 0.0;
  for (int j = 0; j < rel.cols; ++j) mass += rel(i, j);
  if (mass <= 1e-12) return -1;
  // leftover mass 1 - sum leaves the channel unshared
  double x = u * std::max(mass, 1.0);
  double acc = 0.0;
  for (int j = 0; j < rel.cols; ++j) {
    acc += rel(i, j);
    if (x < acc) return j;
  }
  return -1;
}

}  // namespace

Mat discretize_random(const Mat& b_relaxed, int n_samples, const Mat& v, double gamma,
                      uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("discretize_random: n_samples must be >= 1");
  return rounded_best(
      b_relaxed, n_samples, seed,
      [&](const Mat& b) { return assignment_objective(b, v, gamma); }, sample_categorical);
}

std::pair<Mat, Mat> discretize_random_joint(const Mat& bu_rel, const Mat& bd_rel, const Mat& v_ul,
                                            const Mat& v_dl, double gamma,
                                            const NetworkParams& params, int n_samples,
                                            uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("discretize_random_joint: n_samples must be >= 1");
  Mat best_u = discretize_max(bu_rel), best_d = discretize_max(bd_rel);
  double best_score = joint_assignment_objective(best_u, best_d, v_ul, v_dl, gamma, params);
  std::mt19937_64 rng(mix_seed(seed, 0x6a01));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int s = 1; s < n_samples; ++s) {
    Mat cu(bu_rel.rows, bu_rel.cols, 0.0), cd(bd_rel.rows, bd_rel.cols, 0.0);
    for (int i = 0; i < bu_rel.rows; ++i) {
      int j = sample_categorical(bu_rel, i, u01(rng));
      if (j >= 0) cu(i, j) = 1.0;
    }
    for (int i = 0; i < bd_rel.rows; ++i) {
      int j = sample_categorical(bd_rel, i, u01(rng));
      if (j >= 0) cd(i, j) = 1.0;
    }
    double sc = joint_assignment_objective(cu, cd, v_ul, v_dl, gamma, params);
    if (sc > best_score) {
      best_score = sc;
      best_u = std::move(cu);
      best_d = std::move(cd);
    }
  }
  return {best_u, best_d};
}

namespace {

enum class Side { None, Ul, Dl };

Side active_side(const Mat& bu, const Mat& bd, int j, bool& both) {
  bool u = false, d = false;
  for (int i = 0; i < bu.rows; ++i) u = u || bu(i, j) != 0.0;
  for (int i = 0; i < bd.rows; ++i) d = d || bd(i, j) != 0.0;
  both = u && d;
  if (u && !d) return Side::Ul;
  if (d && !u) return Side::Dl;
  return Side::None;
}

// Greedily hand the freed channels of one spectrum to pairs that may still
// take them (not active or locked on the other side, not in conflict). Each
// hand-off must improve the joint objective, so the repaired assignment is
// never worse than simply dropping the freed channels.
void reassign_freed(Mat& bu, Mat& bd, Spectrum spec, const Mat& v_ul, const Mat& v_dl,
                    double gamma, const NetworkParams& params, const std::vector<int>& freed,
                    const std::vector<char>& eligible) {
  Mat& b = spec == Spectrum::Uplink ? bu : bd;
  const Mat& v = spec == Spectrum::Uplink ? v_ul : v_dl;
  for (int i : freed) {
    double base = joint_assignment_objective(bu, bd, v_ul, v_dl, gamma, params);
    int arg = -1;
    double best = base;
    for (int j = 0; j < b.cols; ++j) {
      if (!eligible[j]) continue;
      if (v(i, j) <= kUtilityFloor) continue;
      b(i, j) = 1.0;
      double sc = joint_assignment_objective(bu, bd, v_ul, v_dl, gamma, params);
      b(i, j) = 0.0;
      if (sc > best) {
        best = sc;
        arg = j;
      }
    }
    if (arg >= 0) b(i, arg) = 1.0;
  }
}

}  // namespace

std::pair<Mat, Mat> exclusivity_projection(Mat b_ul, Mat b_dl, const Mat& v_ul, const Mat& v_dl,
                                           double gamma, const NetworkParams& params) {
  const int nd = params.n_pairs;
  std::vector<Side> locked(nd, Side::None);

  for (int j = 0; j < nd; ++j) {
    bool both = false;
    Side s = active_side(b_ul, b_dl, j, both);
    if (!both) {
      if (s != Side::None) locked[j] = s;
      continue;
    }

    // eligibility for the re-offered channels of each spectrum: pairs that
    // are not attached to the opposite spectrum and not themselves waiting
    // for resolution
    auto eligibility = [&](Spectrum spec) {
      std::vector<char> ok(nd, 0);
      for (int q = 0; q < nd; ++q) {
        if (q == j) continue;
        bool qboth = false;
        Side qs = active_side(b_ul, b_dl, q, qboth);
        if (qboth) continue;
        Side other = spec == Spectrum::Uplink ? Side::Dl : Side::Ul;
        if (qs == other || locked[q] == other) continue;
        ok[q] = 1;
      }
      return ok;
    };

    // option A: keep the uplink side, free and re-offer the downlink channels
    Mat au = b_ul, ad = b_dl;
    {
      std::vector<int> freed;
      for (int i = 0; i < ad.rows; ++i)
        if (ad(i, j) != 0.0) {
          ad(i, j) = 0.0;
          freed.push_back(i);
        }
      reassign_freed(au, ad, Spectrum::Downlink, v_ul, v_dl, gamma, params, freed,
                     eligibility(Spectrum::Downlink));
    }
    double score_a = joint_assignment_objective(au, ad, v_ul, v_dl, gamma, params);

    // option B: keep the downlink side
    Mat bu = b_ul, bd = b_dl;
    {
      std::vector<int> freed;
      for (int i = 0; i < bu.rows; ++i)
        if (bu(i, j) != 0.0) {
          bu(i, j) = 0.0;
          freed.push_back(i);
        }
      reassign_freed(bu, bd, Spectrum::Uplink, v_ul, v_dl, gamma, params, freed,
                     eligibility(Spectrum::Uplink));
    }
    double score_b = joint_assignment_objective(bu, bd, v_ul, v_dl, gamma, params);

    if (score_a >= score_b) {
      b_ul = std::move(au);
      b_dl = std::move(ad);
      locked[j] = Side::Ul;
    } else {
      b_ul = std::move(bu);
      b_dl = std::move(bd);
      locked[j] = Side::Dl;
    }
  }
  return {b_ul, b_dl};
}

Mat greedy_single_channel(const Mat& v) {
  Mat b(v.rows, v.cols, 0.0);
  std::vector<char> chan_used(v.rows, 0), pair_used(v.cols, 0);
  for (;;) {
    int bi = -1, bj = -1;
    double best = 0.0;
    for (int i = 0; i < v.rows; ++i) {
      if (chan_used[i]) continue;
      for (int j = 0; j < v.cols; ++j) {
        if (pair_used[j]) continue;
        if (v(i, j) > best) {
          best = v(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    b(bi, bj) = 1.0;
    chan_used[bi] = 1;
    pair_used[bj] = 1;
  }
  return b;
}

}  // namespace d2d

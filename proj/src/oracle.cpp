#include "d2d/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace d2d::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double solo_term(const PowerSubproblem& sub) {
  return std::log2(1.0 + sub.p_c_max * sub.g_c / sub.noise);
}

}  // namespace

GridResult grid_search_power(const PowerSubproblem& sub, const FadingModel* fading,
                             double epsilon, PowerObjective objective, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("grid_search_power: grid_n must be >= 1");
  double h_obj = sub.h_d2d_to_cu, h_con = sub.h_d2d_to_cu;
  if (objective != PowerObjective::FullKnowledge) {
    if (!fading) throw std::invalid_argument("grid_search_power: fading model required");
    h_con = fading->quantile(1.0 - epsilon);
    h_obj = objective == PowerObjective::MeanValue ? fading->mean() : h_con;
  }

  const double solo = solo_term(sub);
  GridResult best;
  best.value = -kInf;
  for (int a = 0; a <= grid_n; ++a) {
    const double p_c = sub.p_c_max * a / grid_n;
    for (int b = 0; b <= grid_n; ++b) {
      const double p_d = sub.p_d_max * b / grid_n;
      const double sinr_c = p_c * sub.g_c / (sub.noise + p_d * h_con);
      const double sinr_d = p_d * sub.g_d / (sub.noise + p_c * sub.h_cu_to_d2d);
      if (sinr_c < sub.eta_c_min || sinr_d < sub.eta_d_min) continue;
      const double value = std::log2(1.0 + p_c * sub.g_c / (sub.noise + p_d * h_obj)) +
                           std::log2(1.0 + p_d * sub.g_d / (sub.noise + p_c * sub.h_cu_to_d2d)) -
                           solo;
      if (!best.feasible || value > best.value) {
        best.feasible = true;
        best.value = value;
        best.p_c = p_c;
        best.p_d = p_d;
      }
    }
  }
  return best;
}

namespace {

bool next_choice(std::vector<int>& choice, int n_pairs) {
  for (size_t i = 0; i < choice.size(); ++i) {
    if (++choice[i] < n_pairs) return true;
    choice[i] = -1;  // -1 keeps the channel unshared
  }
  return false;
}

void guard_space(int slots, int n_pairs) {
  double combos = std::pow(static_cast<double>(n_pairs) + 1.0, slots);
  if (combos > 2e7)
    throw std::invalid_argument("exhaustive assignment: search space too large");
}

}  // namespace

ExhaustiveResult exhaustive_assignment(const Mat& v, double gamma) {
  const int nc = v.rows, nd = v.cols;
  guard_space(nc, nd);

  ExhaustiveResult best;
  best.b = Mat(nc, nd, 0.0);
  best.objective = -kInf;
  const double m_ref = static_cast<double>(nc) / nd;

  std::vector<int> choice(static_cast<size_t>(nc), -1);
  std::vector<int> counts(static_cast<size_t>(nd), 0);
  do {
    double sum = 0.0;
    bool valid = true;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < nc && valid; ++i) {
      int j = choice[static_cast<size_t>(i)];
      if (j < 0) continue;
      if (v(i, j) <= kUtilityFloor) {
        valid = false;
        break;
      }
      sum += v(i, j);
      ++counts[static_cast<size_t>(j)];
    }
    if (!valid) continue;
    double delta = 0.0;
    for (int j = 0; j < nd; ++j) {
      double d = counts[static_cast<size_t>(j)] - m_ref;
      delta += d * d;
    }
    delta *= static_cast<double>(nd) / (static_cast<double>(nc) * nc);
    double obj = sum - gamma * delta;
    if (obj > best.objective) {
      best.objective = obj;
      best.b = Mat(nc, nd, 0.0);
      for (int i = 0; i < nc; ++i)
        if (choice[static_cast<size_t>(i)] >= 0) best.b(i, choice[static_cast<size_t>(i)]) = 1.0;
    }
  } while (next_choice(choice, nd));
  return best;
}

ExhaustiveJointResult exhaustive_assignment_joint(const Mat& v_ul, const Mat& v_dl, double gamma,
                                                  const NetworkParams& params) {
  const int ncu = v_ul.rows, ncd = v_dl.rows, nd = params.n_pairs;
  guard_space(ncu + ncd, nd);

  ExhaustiveJointResult best;
  best.b_ul = Mat(ncu, nd, 0.0);
  best.b_dl = Mat(ncd, nd, 0.0);
  best.objective = -kInf;
  const double m0 = static_cast<double>(ncu + ncd) / nd;

  std::vector<int> choice(static_cast<size_t>(ncu + ncd), -1);
  std::vector<int> counts(static_cast<size_t>(nd), 0);
  std::vector<char> in_ul(static_cast<size_t>(nd), 0), in_dl(static_cast<size_t>(nd), 0);
  do {
    double sum = 0.0;
    bool valid = true;
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(in_ul.begin(), in_ul.end(), 0);
    std::fill(in_dl.begin(), in_dl.end(), 0);
    for (int s = 0; s < ncu + ncd && valid; ++s) {
      int j = choice[static_cast<size_t>(s)];
      if (j < 0) continue;
      const bool ul = s < ncu;
      const double vv = ul ? v_ul(s, j) : v_dl(s - ncu, j);
      if (vv <= kUtilityFloor) {
        valid = false;
        break;
      }
      (ul ? in_ul : in_dl)[static_cast<size_t>(j)] = 1;
      if (in_ul[static_cast<size_t>(j)] && in_dl[static_cast<size_t>(j)]) {
        valid = false;  // a pair may only appear in one spectrum
        break;
      }
      sum += vv;
      ++counts[static_cast<size_t>(j)];
    }
    if (!valid) continue;
    double delta = 0.0;
    for (int j = 0; j < nd; ++j) {
      double d = counts[static_cast<size_t>(j)] - m0;
      delta += d * d;
    }
    delta /= m0 * m0 * nd;
    double obj = sum - gamma * delta;
    if (obj > best.objective) {
      best.objective = obj;
      best.b_ul = Mat(ncu, nd, 0.0);
      best.b_dl = Mat(ncd, nd, 0.0);
      for (int s = 0; s < ncu + ncd; ++s) {
        int j = choice[static_cast<size_t>(s)];
        if (j < 0) continue;
        if (s < ncu)
          best.b_ul(s, j) = 1.0;
        else
          best.b_dl(s - ncu, j) = 1.0;
      }
    }
  } while (next_choice(choice, nd));
  return best;
}

OutageEstimate monte_carlo_outage(double p_c, double p_d, const PowerSubproblem& sub,
                                  const FadingModel& fading, long long n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("monte_carlo_outage: n must be >= 1");
  std::mt19937_64 rng(seed);
  long long bad = 0;
  for (long long k = 0; k < n; ++k) {
    const double h = fading.sample(rng);
    const double sinr = p_c * sub.g_c / (sub.noise + p_d * h);
    if (sinr < sub.eta_c_min) ++bad;
  }
  OutageEstimate est;
  est.n = n;
  est.p_hat = static_cast<double>(bad) / n;
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
  return est;
}

GainDeviation expected_gain_deviation(const PowerSubproblem& sub, double p_c, double p_d,
                                      const FadingModel& fading, long long n, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("expected_gain_deviation: n must be >= 2");
  const double solo = solo_term(sub);
  const double r_d =
      std::log2(1.0 + p_d * sub.g_d / (sub.noise + p_c * sub.h_cu_to_d2d));
  auto util = [&](double h) {
    return std::log2(1.0 + p_c * sub.g_c / (sub.noise + p_d * h)) + r_d - solo;
  };

  std::mt19937_64 rng(seed);
  double mean = 0.0, m2 = 0.0;
  for (long long k = 0; k < n; ++k) {
    const double x = util(fading.sample(rng));
    const double d = x - mean;
    mean += d / static_cast<double>(k + 1);
    m2 += d * (x - mean);
  }

  GainDeviation out;
  out.mc_mean = mean;
  out.substituted = util(fading.mean());
  out.rel_dev = std::fabs(mean - out.substituted) / std::max(std::fabs(mean), 1e-300);
  out.std_err = std::sqrt(m2 / (static_cast<double>(n) - 1.0) / static_cast<double>(n));
  return out;
}

ConvergenceReport convergence_probe(const std::vector<double>& trace, double mono_tol) {
  ConvergenceReport rep;
  for (size_t k = 0; k + 1 < trace.size(); ++k)
    if (trace[k + 1] < trace[k] - mono_tol) rep.monotone = false;
  if (trace.size() < 2) {
    rep.finite_convergence = true;
    return rep;
  }

  const double f_star = trace.back();
  const double floor = 1e-14 * std::max(1.0, std::fabs(f_star));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  // skip the initial point and the final one (zero gap by construction)
  for (size_t k = 1; k + 1 < trace.size(); ++k) {
    const double gap = f_star - trace[k];
    if (gap <= floor) continue;
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  rep.n_points = n;
  if (n < 3) {
    rep.finite_convergence = true;
    return rep;
  }
  const double den = n * sxx - sx * sx;
  rep.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  return rep;
}

namespace {

bool is_binary(const Mat& b) {
  for (double x : b.a)
    if (x != 0.0 && x != 1.0) return false;
  return true;
}

}  // namespace

AuditReport audit_allocation(const NetworkInstance& inst, const AllocationResult& r,
                             CsiMode mode, double epsilon, bool exclusivity_required) {
  AuditReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  const NetworkParams& p = inst.params;
  const double rel = 1e-9;

  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const bool ul = s == Spectrum::Uplink;
    const Mat& b = ul ? r.b_ul : r.b_dl;
    const char* tag = ul ? "ul" : "dl";
    if (b.rows != inst.n_channels(s) || b.cols != p.n_pairs) {
      fail(std::string("assignment shape mismatch, ") + tag);
      continue;
    }
    if (!is_binary(b)) fail(std::string("assignment not binary, ") + tag);
    for (int i = 0; i < b.rows; ++i) {
      double rs = 0.0;
      for (int j = 0; j < b.cols; ++j) rs += b(i, j);
      if (rs > 1.0) fail(std::string("channel shared by several pairs, ") + tag);
    }
  }
  if (!rep.ok) return rep;

  if (exclusivity_required) {
    for (int j = 0; j < p.n_pairs; ++j) {
      bool in_ul = false, in_dl = false;
      for (int i = 0; i < r.b_ul.rows; ++i) in_ul = in_ul || r.b_ul(i, j) != 0.0;
      for (int i = 0; i < r.b_dl.rows; ++i) in_dl = in_dl || r.b_dl(i, j) != 0.0;
      if (in_ul && in_dl) fail("pair " + std::to_string(j) + " active in both spectra");
    }
  }

  double rate = 0.0;
  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const bool ul = s == Spectrum::Uplink;
    const Mat& b = ul ? r.b_ul : r.b_dl;
    const Mat& v = ul ? r.v_ul : r.v_dl;
    const Mat& pcm = ul ? r.p_c_ul : r.p_c_dl;
    const Mat& pdm = ul ? r.p_d_ul : r.p_d_dl;
    const char* tag = ul ? "ul" : "dl";

    for (int i = 0; i < b.rows; ++i) {
      const double g_c = ul ? inst.g_c_ul[static_cast<size_t>(i)]
                            : inst.g_c_dl[static_cast<size_t>(i)];
      rate += std::log2(1.0 + inst.p_c_max(s) * g_c / p.noise);
      for (int j = 0; j < b.cols; ++j) {
        if (b(i, j) == 0.0) continue;
        auto cell = std::string(tag) + " channel " + std::to_string(i) + " pair " +
                    std::to_string(j);
        const double pc = pcm(i, j), pd = pdm(j, i);
        if (pc < 0.0 || pc > inst.p_c_max(s) * (1.0 + rel)) fail("cellular power out of range, " + cell);
        if (pd < 0.0 || pd > p.p_d_max * (1.0 + rel)) fail("device power out of range, " + cell);

        const FadingModel& f = inst.cross_fading(s, i, j);
        const double h_gov = mode == CsiMode::Pcsi ? f.mean() : f.quantile(1.0 - epsilon);
        const double h_obj = mode == CsiMode::Mrm ? f.quantile(1.0 - epsilon) : f.mean();
        const double g_d = inst.g_d[static_cast<size_t>(j)];

        double sinr_cu, sinr_d2d, r_c, r_d;
        if (ul) {
          const double h_bs = inst.h_d_ul[static_cast<size_t>(j)];
          sinr_cu = pc * g_c / (p.noise + pd * h_bs);
          sinr_d2d = pd * g_d / (p.noise + pc * h_gov);
          r_c = std::log2(1.0 + pc * g_c / (p.noise + pd * h_bs));
          r_d = std::log2(1.0 + pd * g_d / (p.noise + pc * h_obj));
        } else {
          const double h_rx = inst.h_c_dl[static_cast<size_t>(j)];
          sinr_cu = pc * g_c / (p.noise + pd * h_gov);
          sinr_d2d = pd * g_d / (p.noise + pc * h_rx);
          r_c = std::log2(1.0 + pc * g_c / (p.noise + pd * h_obj));
          r_d = std::log2(1.0 + pd * g_d / (p.noise + pc * h_rx));
        }
        if (sinr_cu < inst.eta_c_min(s) * (1.0 - rel)) fail("cellular rate floor violated, " + cell);
        if (sinr_d2d < p.eta_d_min * (1.0 - rel)) fail("device rate floor violated, " + cell);

        const double solo = std::log2(1.0 + inst.p_c_max(s) * g_c / p.noise);
        const double v_expect = r_c + r_d - solo;
        if (std::fabs(v_expect - v(i, j)) > 1e-8 * std::max(1.0, std::fabs(v_expect)))
          fail("reported utility inconsistent, " + cell);
        rate += v_expect;
      }
    }
  }
  if (std::fabs(rate - r.total_rate) > 1e-6 * std::max(1.0, std::fabs(rate)))
    fail("reported total rate inconsistent");

  return rep;
}

}  // namespace d2d::oracle

#include "d2d/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace d2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasSlack = 1e-12;

bool ge_slack(double lhs, double rhs) {
  double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return lhs >= rhs - kFeasSlack * scale;
}

bool point_feasible(const PowerSubproblem& s, double h_con, double p_c, double p_d) {
  if (!std::isfinite(p_c) || !std::isfinite(p_d)) return false;
  if (!ge_slack(p_c, 0.0) || !ge_slack(s.p_c_max, p_c)) return false;
  if (!ge_slack(p_d, 0.0) || !ge_slack(s.p_d_max, p_d)) return false;
  if (!ge_slack(p_c * s.g_c, s.eta_c_min * (s.noise + p_d * h_con))) return false;
  if (!ge_slack(p_d * s.g_d, s.eta_d_min * (s.noise + p_c * s.h_cu_to_d2d))) return false;
  return true;
}

double shared_sum_rate(const PowerSubproblem& s, double h_obj, double p_c, double p_d) {
  return std::log2(1.0 + p_c * s.g_c / (s.noise + p_d * h_obj)) +
         std::log2(1.0 + p_d * s.g_d / (s.noise + p_c * s.h_cu_to_d2d));
}

double solo_term(const PowerSubproblem& s) {
  return std::log2(1.0 + s.p_c_max * s.g_c / s.noise);
}

struct Candidate {
  double p_c, p_d;
};

// Pairwise intersections of the four border lines (both caps, both SINR
// floors at equality) plus the axis corners. At most a handful; infeasible
// ones are filtered by the caller.
void border_candidates(const PowerSubproblem& s, double h_con, std::vector<Candidate>& out) {
  out.clear();
  const double a1 = s.eta_c_min * s.noise / s.g_c;        // floor C at p_d = 0
  const double b1 = s.eta_c_min * h_con / s.g_c;          // floor C slope
  const double a2 = s.eta_d_min * s.noise / s.g_d;        // floor D at p_c = 0
  const double b2 = s.eta_d_min * s.h_cu_to_d2d / s.g_d;  // floor D slope

  out.push_back({s.p_c_max, s.p_d_max});
  // floor C boundary meets p_c cap
  if (h_con > 0.0) out.push_back({s.p_c_max, (s.p_c_max * s.g_c / s.eta_c_min - s.noise) / h_con});
  // floor D boundary meets p_c cap
  out.push_back({s.p_c_max, a2 + b2 * s.p_c_max});
  // floor C boundary meets p_d cap
  out.push_back({a1 + b1 * s.p_d_max, s.p_d_max});
  // floor D boundary meets p_d cap
  if (s.h_cu_to_d2d > 0.0)
    out.push_back({(s.p_d_max * s.g_d / s.eta_d_min - s.noise) / s.h_cu_to_d2d, s.p_d_max});
  // both floors at equality
  if (b1 * b2 < 1.0) {
    double pc = (a1 + b1 * a2) / (1.0 - b1 * b2);
    out.push_back({pc, a2 + b2 * pc});
  }
  out.push_back({s.p_c_max, 0.0});
  out.push_back({0.0, s.p_d_max});
}

}  // namespace

PowerSolution solve_power_vertex(const PowerSubproblem& sub, double h_obj, double h_con) {
  PowerSolution best;
  best.utility = -kInf;
  if (!(sub.g_c > 0.0) || !(sub.g_d > 0.0)) return best;

  std::vector<Candidate> cands;
  cands.reserve(8);
  border_candidates(sub, h_con, cands);

  const double solo = solo_term(sub);
  for (const Candidate& c : cands) {
    if (!point_feasible(sub, h_con, c.p_c, c.p_d)) continue;
    double pc = std::clamp(c.p_c, 0.0, sub.p_c_max);
    double pd = std::clamp(c.p_d, 0.0, sub.p_d_max);
    double u = shared_sum_rate(sub, h_obj, pc, pd) - solo;
    if (!best.feasible || u > best.utility) {
      best.p_c = pc;
      best.p_d = pd;
      best.utility = u;
      best.feasible = true;
    }
  }
  return best;
}

PowerSolution solve_power_pcsi(const PowerSubproblem& sub) {
  return solve_power_vertex(sub, sub.h_d2d_to_cu, sub.h_d2d_to_cu);
}

PowerSolution solve_power_erm(const PowerSubproblem& sub, const FadingModel& fading,
                              double epsilon) {
  return solve_power_vertex(sub, fading.mean(), fading.quantile(1.0 - epsilon));
}

namespace {

double f0_at(const PowerSubproblem& s, double h_q, double p_c, double p_d) {
  return shared_sum_rate(s, h_q, p_c, p_d);
}

// Feasible interval for p_c with p_d held fixed; empty -> lo > hi.
void slice_pc(const PowerSubproblem& s, double h_q, double p_d, double& lo, double& hi) {
  lo = std::max(0.0, s.eta_c_min * (s.noise + p_d * h_q) / s.g_c);
  hi = s.p_c_max;
  if (s.h_cu_to_d2d > 0.0) {
    hi = std::min(hi, (p_d * s.g_d / s.eta_d_min - s.noise) / s.h_cu_to_d2d);
  } else if (p_d * s.g_d < s.eta_d_min * s.noise) {
    hi = -1.0;  // floor D cannot hold at this p_d regardless of p_c
  }
}

// Feasible interval for p_d with p_c held fixed.
void slice_pd(const PowerSubproblem& s, double h_q, double p_c, double& lo, double& hi) {
  lo = std::max(0.0, s.eta_d_min * (s.noise + p_c * s.h_cu_to_d2d) / s.g_d);
  hi = s.p_d_max;
  if (h_q > 0.0) {
    hi = std::min(hi, (p_c * s.g_c / s.eta_c_min - s.noise) / h_q);
  } else if (p_c * s.g_c < s.eta_c_min * s.noise) {
    hi = -1.0;
  }
}

double project_interval(double x, double lo, double hi, bool* clamped_empty) {
  if (lo > hi) {
    // numerically empty slice; fall back to the nearest boundary midpoint
    *clamped_empty = true;
    return 0.5 * (lo + hi);
  }
  return std::clamp(x, lo, hi);
}

FPState fp_sweep(const FPState& st, const PowerSubproblem& s, double h_q, bool* clamped) {
  FPState n = st;
  const double N = s.noise;

  n.z1 = st.p_c * s.g_c / (N + st.p_d * h_q);
  n.z2 = st.p_d * s.g_d / (N + st.p_c * s.h_cu_to_d2d);

  n.y1 = std::sqrt((1.0 + n.z1) * st.p_c * s.g_c) / (st.p_c * s.g_c + N + st.p_d * h_q);
  n.y2 = std::sqrt((1.0 + n.z2) * st.p_d * s.g_d) /
         (st.p_d * s.g_d + N + st.p_c * s.h_cu_to_d2d);

  double denom_c = n.y1 * n.y1 * s.g_c + n.y2 * n.y2 * s.h_cu_to_d2d;
  double pc_unc = n.y1 * n.y1 * (1.0 + n.z1) * s.g_c / (denom_c * denom_c);
  double lo, hi;
  slice_pc(s, h_q, st.p_d, lo, hi);
  n.p_c = project_interval(pc_unc, lo, hi, clamped);

  double denom_d = n.y2 * n.y2 * s.g_d + n.y1 * n.y1 * h_q;
  double pd_unc = n.y2 * n.y2 * (1.0 + n.z2) * s.g_d / (denom_d * denom_d);
  slice_pd(s, h_q, n.p_c, lo, hi);
  n.p_d = project_interval(pd_unc, lo, hi, clamped);

  n.objective_f0 = f0_at(s, h_q, n.p_c, n.p_d);
  return n;
}

}  // namespace

double mrm_objective_f0(double p_c, double p_d, const PowerSubproblem& sub,
                        const FadingModel& fading, double epsilon) {
  return f0_at(sub, fading.quantile(1.0 - epsilon), p_c, p_d);
}

FPState fp_iterate(const FPState& state, const PowerSubproblem& sub, const FadingModel& fading,
                   double epsilon) {
  bool clamped = false;
  return fp_sweep(state, sub, fading.quantile(1.0 - epsilon), &clamped);
}

PowerSolution solve_power_mrm(const PowerSubproblem& sub, const FadingModel& fading,
                              double epsilon, double tol, int max_iters,
                              std::vector<double>* trace) {
  const double h_q = fading.quantile(1.0 - epsilon);

  // Feasibility and starting point from the border-intersection scan with
  // the quantile gain in both the objective and the floor.
  PowerSolution start = solve_power_vertex(sub, h_q, h_q);
  if (!start.feasible) {
    PowerSolution none;
    none.utility = -kInf;
    return none;
  }

  FPState st;
  st.p_c = start.p_c;
  st.p_d = start.p_d;
  st.objective_f0 = f0_at(sub, h_q, st.p_c, st.p_d);
  if (trace) trace->push_back(st.objective_f0);

  bool clamped = false;
  for (int k = 0; k < max_iters; ++k) {
    FPState nx = fp_sweep(st, sub, h_q, &clamped);
    double dp = std::max(std::fabs(nx.p_c - st.p_c), std::fabs(nx.p_d - st.p_d));
    st = nx;
    if (trace) trace->push_back(st.objective_f0);
    if (dp < tol) break;
  }

  PowerSolution out;
  out.p_c = st.p_c;
  out.p_d = st.p_d;
  out.utility = st.objective_f0 - solo_term(sub);
  out.feasible = true;
  out.clamped = clamped;
  return out;
}

}  // namespace d2d

#pragma once

#include <vector>

#include "d2d/fading.hpp"

namespace d2d {

/// Two-transmitter power allocation on one shared channel, written in the
/// orientation where the statistically known cross gain interferes with the
/// cellular receiver. The uplink case is mapped into this orientation by
/// swapping the two link roles (see orchestrate).
struct PowerSubproblem {
  double g_c = 0.0;          // cellular link direct gain
  double g_d = 0.0;          // device link direct gain
  double h_cu_to_d2d = 0.0;  // cellular tx -> device rx, deterministic
  double h_d2d_to_cu = 0.0;  // device tx -> cellular rx; true (or mean) gain
  double noise = 0.0;
  double p_c_max = 0.0;
  double p_d_max = 0.0;
  double eta_c_min = 0.0;
  double eta_d_min = 0.0;
};

struct PowerSolution {
  double p_c = 0.0;
  double p_d = 0.0;
  double utility = 0.0;  // governing objective; -inf when infeasible
  bool feasible = false;
  bool clamped = false;  // a fixed-point sweep hit an empty feasibility slice
};

/// State of the alternating quadratic-transform iteration.
struct FPState {
  double z1 = 0.0, z2 = 0.0;  // SINR slack variables
  double y1 = 0.0, y2 = 0.0;  // quadratic-transform auxiliaries
  double p_c = 0.0, p_d = 0.0;
  double objective_f0 = 0.0;
};

/// Core border-intersection search: maximizes
///   log2(1 + p_c g_c/(N + p_d h_obj)) + log2(1 + p_d g_d/(N + p_c h_cd))
/// minus the unshared-channel rate, over the box [0,p_c_max]x[0,p_d_max] cut
/// by the two SINR floors, the cellular one evaluated at gain h_con. The
/// optimum of this objective lies at an intersection of active borders, so
/// only those candidates are scanned.
PowerSolution solve_power_vertex(const PowerSubproblem& sub, double h_obj, double h_con);

/// Full-knowledge solver: the stored h_d2d_to_cu is treated as the true gain.
PowerSolution solve_power_pcsi(const PowerSubproblem& sub);

/// Outage-constrained solver with a mean-value objective: the cellular SINR
/// floor holds with probability 1-epsilon (fading gain replaced by its upper
/// quantile), while the objective scores the fading gain at its mean.
PowerSolution solve_power_erm(const PowerSubproblem& sub, const FadingModel& fading,
                              double epsilon);

/// Rate guaranteed with probability 1-epsilon at powers (p_c, p_d): both log
/// terms of the shared-channel rate with the fading gain at quantile(1-eps).
/// Excludes the constant unshared-channel rate.
double mrm_objective_f0(double p_c, double p_d, const PowerSubproblem& sub,
                        const FadingModel& fading, double epsilon);

/// One sweep of the alternating closed-form updates (slacks, auxiliaries,
/// then each power projected onto its 1-D feasible interval).
FPState fp_iterate(const FPState& state, const PowerSubproblem& sub, const FadingModel& fading,
                   double epsilon);

/// Guaranteed-rate solver: feasibility precheck and starting point from the
/// border-intersection scan, then alternating updates until the power change
/// drops below tol. The objective is nondecreasing across sweeps. Utility is
/// the guaranteed rate minus the unshared-channel rate. If trace is non-null
/// it receives the objective after every sweep.
PowerSolution solve_power_mrm(const PowerSubproblem& sub, const FadingModel& fading,
                              double epsilon, double tol = 1e-8, int max_iters = 10000,
                              std::vector<double>* trace = nullptr);

}  // namespace d2d

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2d/fading.hpp"
#include "d2d/matrix.hpp"
#include "d2d/model.hpp"
#include "d2d/orchestrate.hpp"
#include "d2d/power.hpp"

// Slow reference implementations used to validate the fast solvers. These
// re-derive every quantity from the problem data on purpose; they must not
// call into the solver code paths they check.
namespace d2d::oracle {

enum class PowerObjective {
  FullKnowledge,  // objective and constraint at the stored cross gain
  MeanValue,      // objective at the fading mean, constraint at quantile(1-eps)
  Guaranteed      // objective and constraint at quantile(1-eps)
};

struct GridResult {
  double p_c = 0.0;
  double p_d = 0.0;
  double value = 0.0;  // utility of the best feasible grid point
  bool feasible = false;
};

/// Exhaustive scan of an (n+1)x(n+1) power grid over the feasible box.
GridResult grid_search_power(const PowerSubproblem& sub, const FadingModel* fading,
                             double epsilon, PowerObjective objective, int grid_n);

struct ExhaustiveResult {
  Mat b;
  double objective = 0.0;
};

/// Brute force over all (n_pairs+1)^n_channels binary assignments of one
/// spectrum. Cells with sentinel utility cannot be chosen. Throws if the
/// search space exceeds ~2e7 combinations.
ExhaustiveResult exhaustive_assignment(const Mat& v, double gamma);

struct ExhaustiveJointResult {
  Mat b_ul, b_dl;
  double objective = 0.0;
};

/// Brute force over both spectra with per-pair spectrum exclusivity enforced.
ExhaustiveJointResult exhaustive_assignment_joint(const Mat& v_ul, const Mat& v_dl, double gamma,
                                                  const NetworkParams& params);

struct OutageEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  long long n = 0;
};

/// Empirical probability that the rate-floor of the canonical cellular slot
/// fails at powers (p_c, p_d) when the cross gain is drawn from the fading
/// model: Pr[p_c g_c / (N + p_d h) < eta_c_min].
OutageEstimate monte_carlo_outage(double p_c, double p_d, const PowerSubproblem& sub,
                                  const FadingModel& fading, long long n, uint64_t seed);

struct GainDeviation {
  double mc_mean = 0.0;      // E[v(h)] by Monte Carlo
  double substituted = 0.0;  // v(E[h])
  double rel_dev = 0.0;      // |mc_mean - substituted| / |mc_mean|
  double std_err = 0.0;      // of the Monte Carlo mean
};

/// How far the mean-substituted utility sits from the true expected utility
/// at fixed powers.
GainDeviation expected_gain_deviation(const PowerSubproblem& sub, double p_c, double p_d,
                                      const FadingModel& fading, long long n, uint64_t seed);

struct ConvergenceReport {
  bool monotone = true;          // nondecreasing within mono_tol
  bool finite_convergence = false;  // gap to the final value vanished outright
  double slope = 0.0;            // log-log decay rate of the gap, valid if !finite
  int n_points = 0;              // gap samples used for the fit
};

/// Checks an objective trace for monotonicity and estimates the decay rate of
/// f_final - f_k against the iteration index.
ConvergenceReport convergence_probe(const std::vector<double>& trace, double mono_tol);

struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Independent feasibility and consistency audit of a finished allocation:
/// binary matrices, channel row sums, optional per-pair exclusivity, power
/// caps, both rate floors at the mode's governing gains, reported utilities
/// and the total rate.
AuditReport audit_allocation(const NetworkInstance& inst, const AllocationResult& r,
                             CsiMode mode, double epsilon, bool exclusivity_required);

}  // namespace d2d::oracle

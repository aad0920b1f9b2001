#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "d2d/matrix.hpp"
#include "d2d/model.hpp"

namespace d2d {

/// Utilities below this are treated as "sharing impossible" and the cell is
/// pinned to zero throughout the relaxed ascent.
constexpr double kUtilityFloor = -1e18;

struct PGDConfig {
  double step_size = 0.0;  // <= 0 selects 1/L from the penalty curvature
  int max_iters = 5000;
  double objective_tol = 1e-12;  // relative change that counts as converged
};

struct PgdResult {
  Mat b;  // relaxed assignment, entries in [0,1], per-channel sums <= 1
  std::vector<double> objective_trace;
  int iterations = 0;
  double step_size = 0.0;
};

struct JointPgdResult {
  Mat b_ul, b_dl;
  std::vector<double> objective_trace;
  int iterations = 0;
  double step_size = 0.0;
};

/// Relaxed assignment objective: sum of per-cell utilities minus the
/// gamma-weighted fairness penalty. Utilities at or below kUtilityFloor
/// contribute through their clipped value (their cells are pinned to zero by
/// the ascent, so in practice they contribute nothing).
double relaxed_objective_g(const Mat& b, const Mat& v, double gamma);

/// Gradient of relaxed_objective_g. Linear in b: each column's entries move
/// together through that pair's channel count.
Mat grad_g(const Mat& b, const Mat& v, double gamma);

/// Euclidean projection onto { x >= 0, sum(x) <= 1 }: clip negatives, and if
/// the clipped mass still exceeds one, project onto the unit simplex.
void project_column(std::vector<double>& x);

/// Projected gradient ascent over per-channel allocation vectors. Cells with
/// utility <= kUtilityFloor stay exactly zero. When trace is non-null every
/// post-projection iterate is appended to it.
PgdResult pgd_assign(const Mat& v, double gamma, const PGDConfig& cfg = {},
                     std::vector<Mat>* trace = nullptr);

/// Joint ascent over both spectra; the fairness penalty couples the two
/// matrices through combined per-pair counts. Per-pair spectrum exclusivity
/// is NOT enforced here; see exclusivity_projection.
JointPgdResult pgd_assign_joint(const Mat& v_ul, const Mat& v_dl, double gamma,
                                const NetworkParams& params, const PGDConfig& cfg = {},
                                std::vector<Mat>* trace_ul = nullptr,
                                std::vector<Mat>* trace_dl = nullptr);

namespace detail {

/// Building blocks shared by the centralized loop and the round-based
/// distributed simulation, so both produce bit-identical iterates.
struct SeparateStepParams {
  double k1 = 0.0, k2 = 0.0, step = 0.0;
};
SeparateStepParams separate_step_params(int n_channels, int n_pairs, double gamma,
                                        double step_override);

struct JointStepParams {
  double k1 = 0.0, m0 = 0.0, step = 0.0;
};
JointStepParams joint_step_params(int ncu, int ncd, int n_pairs, double gamma,
                                  double step_override);

std::vector<char> pin_mask(const Mat& v);

/// One ascent-plus-projection step: per-pair column updates from the current
/// counts, then per-channel projection. Pinned cells stay zero.
void pgd_step(Mat& b, const Mat& v, const SeparateStepParams& sp, const std::vector<char>& pinned);
void pgd_step_joint(Mat& bu, Mat& bd, const Mat& vu, const Mat& vd, const JointStepParams& sp,
                    const std::vector<char>& pin_u, const std::vector<char>& pin_d);

}  // namespace detail

/// Binary objective for one spectrum: sum of selected utilities minus
/// gamma * fairness_delta.
double assignment_objective(const Mat& b, const Mat& v, double gamma);

/// Binary objective over both spectra with the joint fairness penalty.
double joint_assignment_objective(const Mat& b_ul, const Mat& b_dl, const Mat& v_ul,
                                  const Mat& v_dl, double gamma, const NetworkParams& params);

/// Per channel, assign the pair with the largest relaxed mass; rows whose
/// entries all sit below 1e-6 stay unassigned. Ties go to the lowest index.
Mat discretize_max(const Mat& b_relaxed);

/// Randomized rounding: per channel, pick pair j with probability
/// proportional to its relaxed mass (or leave unassigned with the leftover
/// mass). The argmax rounding is always included as candidate zero; the
/// realization with the best binary objective wins.
Mat discretize_random(const Mat& b_relaxed, int n_samples, const Mat& v, double gamma,
                      uint64_t seed);

/// Joint-version randomized rounding, scored by the joint objective.
std::pair<Mat, Mat> discretize_random_joint(const Mat& bu_rel, const Mat& bd_rel,
                                            const Mat& v_ul, const Mat& v_dl, double gamma,
                                            const NetworkParams& params, int n_samples,
                                            uint64_t seed);

/// Enforce per-pair spectrum exclusivity on binary assignments: every pair
/// active in both spectra is resolved to the side with the higher joint
/// objective, and the channels freed on the deselected side are greedily
/// re-offered to pairs that can still take them. Never worse than zeroing
/// the weaker side outright.
std::pair<Mat, Mat> exclusivity_projection(Mat b_ul, Mat b_dl, const Mat& v_ul, const Mat& v_dl,
                                           double gamma, const NetworkParams& params);

/// One-channel-per-pair reference scheme: greedy matching by utility,
/// stopping when no positive-utility (channel, pair) cell remains.
Mat greedy_single_channel(const Mat& v);

}  // namespace d2d

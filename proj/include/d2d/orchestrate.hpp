#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "d2d/assign.hpp"
#include "d2d/matrix.hpp"
#include "d2d/model.hpp"
#include "d2d/power.hpp"

namespace d2d {

/// Static split of the pairs across the two spectra for the separate
/// pipelines. Every pair must appear in exactly one list.
struct Partition {
  std::vector<int> ul_pairs;
  std::vector<int> dl_pairs;

  static Partition all_ul(int n_pairs);
  static Partition all_dl(int n_pairs);
  static Partition half_half(int n_pairs);  // first half uplink, rest downlink
  void validate(int n_pairs) const;
};

struct MessageLog {
  long long rounds = 0;
  long long assignment_scalars = 0;  // allocation vector entries, both directions
  long long power_scalars = 0;       // cellular power reports, pair to base station
  long long total() const { return assignment_scalars + power_scalars; }
};

struct PipelineConfig {
  CsiMode mode = CsiMode::Erm;
  double epsilon = 0.1;
  double gamma = 10.0;
  PGDConfig pgd;
  bool random_discretize = true;
  int discretize_samples = 64;
  uint64_t seed = 1;        // drives randomized rounding only
  double mrm_tol = 1e-8;
  int mrm_max_iters = 10000;
  bool record_trace = false;  // keep per-iteration relaxed matrices
};

struct AllocationResult {
  Mat b_ul, b_dl;            // binary assignments, channels x pairs
  Mat v_ul, v_dl;            // utilities under the governing objective
  Mat p_c_ul, p_c_dl;        // cellular powers per (channel, pair)
  Mat p_d_ul, p_d_dl;        // device powers per (pair, channel)
  double total_rate = 0.0;   // both spectra, unshared channels at solo rate
  double fairness_delta = 0.0;
  double fairness_joint = 0.0;
  double objective = 0.0;    // assignment objective the pipeline maximized
  int iterations = 0;        // ascent iterations or distributed rounds
  long long messages_exchanged = 0;
  std::vector<Mat> trace_ul, trace_dl;  // relaxed iterates when recorded
};

/// Power stage for one spectrum: solves every (channel, pair) subproblem with
/// the mode's solver. Pairs outside `allowed` get the -inf sentinel.
struct PowerTables {
  Mat utility;  // -inf where sharing is infeasible or not allowed
  Mat p_c;      // channels x pairs
  Mat p_d;      // pairs x channels
};
PowerTables build_power_tables(const NetworkInstance& inst, Spectrum spectrum, CsiMode mode,
                               double epsilon, const std::vector<char>& allowed,
                               double mrm_tol = 1e-8, int mrm_max_iters = 10000);

/// The uplink subproblem in the canonical orientation of PowerSubproblem
/// (roles swapped so the statistically known gain faces the "cellular" slot).
/// utility_offset corrects the unshared-rate constant after the swap;
/// swapped solutions report (p_c, p_d) back in spectrum terms.
struct CanonicalSub {
  PowerSubproblem sub;
  const FadingModel* fading = nullptr;
  bool swapped = false;
  double utility_offset = 0.0;
  double solo_rate = 0.0;
};
CanonicalSub make_canonical_subproblem(const NetworkInstance& inst, Spectrum spectrum, int i,
                                       int j);

AllocationResult run_centralized_separate(const NetworkInstance& inst, const Partition& part,
                                          const PipelineConfig& cfg);
AllocationResult run_centralized_joint(const NetworkInstance& inst, const PipelineConfig& cfg);

/// Round-based simulations of the distributed schemes: every pair refreshes
/// its powers, takes one ascent step on its own allocation column(s), and
/// exchanges the column with the base station, which projects and replies.
/// Convergence: allocation change below 1e-6 in max norm for three straight
/// rounds with power change below 1e-8.
std::pair<AllocationResult, MessageLog> run_decentralized_separate(const NetworkInstance& inst,
                                                                   const Partition& part,
                                                                   const PipelineConfig& cfg);
std::pair<AllocationResult, MessageLog> run_decentralized_joint(const NetworkInstance& inst,
                                                                const PipelineConfig& cfg);

/// Reference scheme: one channel per pair by greedy matching, powers from the
/// same mode-governed tables.
AllocationResult run_single_channel_baseline(const NetworkInstance& inst, const Partition& part,
                                             const PipelineConfig& cfg);

}  // namespace d2d

#include "d2d/orchestrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace d2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRoundAssignTol = 1e-6;
constexpr double kRoundPowerTol = 1e-8;
constexpr int kStableRounds = 3;

// splitmix64 round, decorrelates the per-spectrum rounding streams
uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<char> member_mask(const std::vector<int>& members, int n_pairs) {
  std::vector<char> mask(static_cast<size_t>(n_pairs), 0);
  for (int j : members) mask[static_cast<size_t>(j)] = 1;
  return mask;
}

Mat gather_columns(const Mat& full, const std::vector<int>& members) {
  Mat out(full.rows, static_cast<int>(members.size()));
  for (int i = 0; i < full.rows; ++i)
    for (size_t c = 0; c < members.size(); ++c) out(i, static_cast<int>(c)) = full(i, members[c]);
  return out;
}

void scatter_columns(const Mat& reduced, const std::vector<int>& members, Mat& full) {
  for (int i = 0; i < reduced.rows; ++i)
    for (size_t c = 0; c < members.size(); ++c) full(i, members[c]) = reduced(i, static_cast<int>(c));
}

double max_abs(const Mat& m) {
  double mx = 0.0;
  for (double x : m.a) mx = std::max(mx, std::fabs(x));
  return mx;
}

const std::vector<int>& part_members(const Partition& part, Spectrum s) {
  return s == Spectrum::Uplink ? part.ul_pairs : part.dl_pairs;
}

// Shared scoring of a finished allocation. For the separate pipelines the
// fairness and objective are computed per spectrum over that spectrum's own
// pairs and channel count, then channel-weighted; the joint pipelines use the
// combined-count fairness.
AllocationResult base_result(const NetworkInstance& inst, const PowerTables& tu,
                             const PowerTables& td, Mat b_ul, Mat b_dl, bool joint,
                             const Partition* part, double gamma) {
  AllocationResult r;
  r.b_ul = std::move(b_ul);
  r.b_dl = std::move(b_dl);
  r.v_ul = tu.utility;
  r.v_dl = td.utility;
  r.p_c_ul = tu.p_c;
  r.p_c_dl = td.p_c;
  r.p_d_ul = tu.p_d;
  r.p_d_dl = td.p_d;

  const std::vector<double> su = solo_rates(inst, Spectrum::Uplink);
  const std::vector<double> sd = solo_rates(inst, Spectrum::Downlink);
  r.total_rate = total_rate(r.b_ul, r.v_ul, su) + total_rate(r.b_dl, r.v_dl, sd);
  r.fairness_joint = joint_fairness_delta(r.b_ul, r.b_dl, inst.params);

  if (joint) {
    r.fairness_delta = r.fairness_joint;
    r.objective = joint_assignment_objective(r.b_ul, r.b_dl, r.v_ul, r.v_dl, gamma, inst.params);
  } else {
    double weight = 0.0, fsum = 0.0, obj = 0.0;
    for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
      const std::vector<int>& members = part_members(*part, s);
      if (members.empty()) continue;
      const int nc = inst.n_channels(s);
      const Mat& b = s == Spectrum::Uplink ? r.b_ul : r.b_dl;
      const Mat& v = s == Spectrum::Uplink ? r.v_ul : r.v_dl;
      Mat br = gather_columns(b, members), vr = gather_columns(v, members);
      fsum += nc * fairness_delta(br, nc, static_cast<int>(members.size()));
      weight += nc;
      obj += assignment_objective(br, vr, gamma);
    }
    r.fairness_delta = weight > 0.0 ? fsum / weight : 0.0;
    r.objective = obj;
  }
  return r;
}

}  // namespace

Partition Partition::all_ul(int n_pairs) {
  Partition p;
  p.ul_pairs.resize(static_cast<size_t>(n_pairs));
  std::iota(p.ul_pairs.begin(), p.ul_pairs.end(), 0);
  return p;
}

Partition Partition::all_dl(int n_pairs) {
  Partition p;
  p.dl_pairs.resize(static_cast<size_t>(n_pairs));
  std::iota(p.dl_pairs.begin(), p.dl_pairs.end(), 0);
  return p;
}

Partition Partition::half_half(int n_pairs) {
  Partition p;
  for (int j = 0; j < n_pairs / 2; ++j) p.ul_pairs.push_back(j);
  for (int j = n_pairs / 2; j < n_pairs; ++j) p.dl_pairs.push_back(j);
  return p;
}

void Partition::validate(int n_pairs) const {
  std::vector<int> seen(static_cast<size_t>(n_pairs), 0);
  auto mark = [&](const std::vector<int>& v) {
    for (int j : v) {
      if (j < 0 || j >= n_pairs) throw std::invalid_argument("partition: pair index out of range");
      ++seen[static_cast<size_t>(j)];
    }
  };
  mark(ul_pairs);
  mark(dl_pairs);
  for (int c : seen)
    if (c != 1) throw std::invalid_argument("partition: every pair must appear exactly once");
}

CanonicalSub make_canonical_subproblem(const NetworkInstance& inst, Spectrum spectrum, int i,
                                       int j) {
  const NetworkParams& p = inst.params;
  CanonicalSub cs;
  cs.fading = &inst.cross_fading(spectrum, i, j);
  cs.sub.noise = p.noise;
  cs.sub.h_d2d_to_cu = cs.fading->mean();
  if (spectrum == Spectrum::Downlink) {
    cs.sub.g_c = inst.g_c_dl[static_cast<size_t>(i)];
    cs.sub.g_d = inst.g_d[static_cast<size_t>(j)];
    cs.sub.h_cu_to_d2d = inst.h_c_dl[static_cast<size_t>(j)];
    cs.sub.p_c_max = p.p_c_max_dl;
    cs.sub.p_d_max = p.p_d_max;
    cs.sub.eta_c_min = p.eta_c_min_dl;
    cs.sub.eta_d_min = p.eta_d_min;
    cs.swapped = false;
    cs.solo_rate = rate_solo(p.p_c_max_dl, cs.sub.g_c, p.noise);
    cs.utility_offset = 0.0;
  } else {
    // Uplink: the random gain hits the pair receiver, so the device link takes
    // the cellular slot of the canonical form and vice versa.
    cs.sub.g_c = inst.g_d[static_cast<size_t>(j)];
    cs.sub.g_d = inst.g_c_ul[static_cast<size_t>(i)];
    cs.sub.h_cu_to_d2d = inst.h_d_ul[static_cast<size_t>(j)];
    cs.sub.p_c_max = p.p_d_max;
    cs.sub.p_d_max = p.p_c_max_ul;
    cs.sub.eta_c_min = p.eta_d_min;
    cs.sub.eta_d_min = p.eta_c_min_ul;
    cs.swapped = true;
    cs.solo_rate = rate_solo(p.p_c_max_ul, cs.sub.g_d, p.noise);
    // the solver subtracts the solo rate of its "cellular" slot; shift to the
    // true unshared rate of channel i
    cs.utility_offset = rate_solo(p.p_d_max, cs.sub.g_c, p.noise) - cs.solo_rate;
  }
  return cs;
}

PowerTables build_power_tables(const NetworkInstance& inst, Spectrum spectrum, CsiMode mode,
                               double epsilon, const std::vector<char>& allowed, double mrm_tol,
                               int mrm_max_iters) {
  const NetworkParams& p = inst.params;
  const int nc = inst.n_channels(spectrum), nd = p.n_pairs;
  if (static_cast<int>(allowed.size()) != nd)
    throw std::invalid_argument("build_power_tables: allowed mask must have one entry per pair");

  PowerTables t;
  t.utility = Mat(nc, nd, -kInf);
  t.p_c = Mat(nc, nd, 0.0);
  t.p_d = Mat(nd, nc, 0.0);
  for (int j = 0; j < nd; ++j) {
    if (!allowed[static_cast<size_t>(j)]) continue;
    for (int i = 0; i < nc; ++i) {
      CanonicalSub cs = make_canonical_subproblem(inst, spectrum, i, j);
      PowerSolution sol;
      switch (mode) {
        case CsiMode::Pcsi:
          sol = solve_power_pcsi(cs.sub);
          break;
        case CsiMode::Erm:
          sol = solve_power_erm(cs.sub, *cs.fading, epsilon);
          break;
        case CsiMode::Mrm:
          sol = solve_power_mrm(cs.sub, *cs.fading, epsilon, mrm_tol, mrm_max_iters);
          break;
      }
      if (!sol.feasible) continue;
      t.utility(i, j) = sol.utility + cs.utility_offset;
      t.p_c(i, j) = cs.swapped ? sol.p_d : sol.p_c;
      t.p_d(j, i) = cs.swapped ? sol.p_c : sol.p_d;
    }
  }
  return t;
}

AllocationResult run_centralized_separate(const NetworkInstance& inst, const Partition& part,
                                          const PipelineConfig& cfg) {
  const NetworkParams& p = inst.params;
  part.validate(p.n_pairs);

  PowerTables tu = build_power_tables(inst, Spectrum::Uplink, cfg.mode, cfg.epsilon,
                                      member_mask(part.ul_pairs, p.n_pairs), cfg.mrm_tol,
                                      cfg.mrm_max_iters);
  PowerTables td = build_power_tables(inst, Spectrum::Downlink, cfg.mode, cfg.epsilon,
                                      member_mask(part.dl_pairs, p.n_pairs), cfg.mrm_tol,
                                      cfg.mrm_max_iters);

  Mat b_ul(p.n_channels_ul, p.n_pairs, 0.0), b_dl(p.n_channels_dl, p.n_pairs, 0.0);
  int iterations = 0;
  std::vector<Mat> trace_ul, trace_dl;
  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const std::vector<int>& members = part_members(part, s);
    if (members.empty()) continue;
    const PowerTables& t = s == Spectrum::Uplink ? tu : td;
    Mat& b = s == Spectrum::Uplink ? b_ul : b_dl;

    Mat vr = gather_columns(t.utility, members);
    std::vector<Mat> rel_trace;
    PgdResult res = pgd_assign(vr, cfg.gamma, cfg.pgd, cfg.record_trace ? &rel_trace : nullptr);
    Mat bin = cfg.random_discretize
                  ? discretize_random(res.b, cfg.discretize_samples, vr, cfg.gamma,
                                      mix_seed(cfg.seed, s == Spectrum::Uplink ? 0 : 1))
                  : discretize_max(res.b);
    scatter_columns(bin, members, b);
    iterations = std::max(iterations, res.iterations);

    if (cfg.record_trace) {
      std::vector<Mat>& out = s == Spectrum::Uplink ? trace_ul : trace_dl;
      for (const Mat& m : rel_trace) {
        Mat full(b.rows, b.cols, 0.0);
        scatter_columns(m, members, full);
        out.push_back(std::move(full));
      }
    }
  }

  AllocationResult r =
      base_result(inst, tu, td, std::move(b_ul), std::move(b_dl), false, &part, cfg.gamma);
  r.iterations = iterations;
  r.trace_ul = std::move(trace_ul);
  r.trace_dl = std::move(trace_dl);
  return r;
}

AllocationResult run_centralized_joint(const NetworkInstance& inst, const PipelineConfig& cfg) {
  const NetworkParams& p = inst.params;
  const std::vector<char> all(static_cast<size_t>(p.n_pairs), 1);
  PowerTables tu = build_power_tables(inst, Spectrum::Uplink, cfg.mode, cfg.epsilon, all,
                                      cfg.mrm_tol, cfg.mrm_max_iters);
  PowerTables td = build_power_tables(inst, Spectrum::Downlink, cfg.mode, cfg.epsilon, all,
                                      cfg.mrm_tol, cfg.mrm_max_iters);

  std::vector<Mat> trace_ul, trace_dl;
  JointPgdResult res = pgd_assign_joint(tu.utility, td.utility, cfg.gamma, p, cfg.pgd,
                                        cfg.record_trace ? &trace_ul : nullptr,
                                        cfg.record_trace ? &trace_dl : nullptr);

  Mat bu, bd;
  if (cfg.random_discretize) {
    std::tie(bu, bd) = discretize_random_joint(res.b_ul, res.b_dl, tu.utility, td.utility,
                                               cfg.gamma, p, cfg.discretize_samples, cfg.seed);
  } else {
    bu = discretize_max(res.b_ul);
    bd = discretize_max(res.b_dl);
  }
  std::tie(bu, bd) = exclusivity_projection(std::move(bu), std::move(bd), tu.utility, td.utility,
                                            cfg.gamma, p);

  AllocationResult r =
      base_result(inst, tu, td, std::move(bu), std::move(bd), true, nullptr, cfg.gamma);
  r.iterations = res.iterations;
  r.trace_ul = std::move(trace_ul);
  r.trace_dl = std::move(trace_dl);
  return r;
}

namespace {

// Per-cell state of the guaranteed-rate mode in the round-based simulations:
// each pair advances its own alternating update once per round.
struct FpCell {
  CanonicalSub cs;
  FPState st;
  int i = 0;   // channel
  int jr = 0;  // reduced column
  int j = 0;   // pair
};

struct SpectrumWork {
  Spectrum spec = Spectrum::Downlink;
  std::vector<int> members;
  int nc = 0;
  PowerTables tables;  // full width
  Mat vr;              // reduced utilities driving the ascent
  Mat b;               // reduced relaxed allocation
  std::vector<char> pinned;
  detail::SeparateStepParams sp;
  std::vector<FpCell> cells;
};

SpectrumWork make_work(const NetworkInstance& inst, Spectrum s, const std::vector<int>& members,
                       const PipelineConfig& cfg, const std::vector<double>& solo) {
  const NetworkParams& p = inst.params;
  SpectrumWork w;
  w.spec = s;
  w.members = members;
  w.nc = inst.n_channels(s);
  const int n_s = static_cast<int>(members.size());

  if (cfg.mode != CsiMode::Mrm) {
    w.tables = build_power_tables(inst, s, cfg.mode, cfg.epsilon, member_mask(members, p.n_pairs),
                                  cfg.mrm_tol, cfg.mrm_max_iters);
    w.vr = gather_columns(w.tables.utility, members);
  } else {
    w.tables.utility = Mat(w.nc, p.n_pairs, -kInf);
    w.tables.p_c = Mat(w.nc, p.n_pairs, 0.0);
    w.tables.p_d = Mat(p.n_pairs, w.nc, 0.0);
    w.vr = Mat(w.nc, n_s, -kInf);
    for (int c = 0; c < n_s; ++c) {
      const int j = members[static_cast<size_t>(c)];
      for (int i = 0; i < w.nc; ++i) {
        FpCell cell;
        cell.cs = make_canonical_subproblem(inst, s, i, j);
        // feasibility check plus starting vertex, no sweeps yet
        PowerSolution init = solve_power_mrm(cell.cs.sub, *cell.cs.fading, cfg.epsilon,
                                             cfg.mrm_tol, 0);
        if (!init.feasible) continue;
        cell.st.p_c = init.p_c;
        cell.st.p_d = init.p_d;
        cell.st.objective_f0 =
            mrm_objective_f0(init.p_c, init.p_d, cell.cs.sub, *cell.cs.fading, cfg.epsilon);
        cell.i = i;
        cell.jr = c;
        cell.j = j;
        w.vr(i, c) = cell.st.objective_f0 - solo[static_cast<size_t>(i)];
        w.cells.push_back(cell);
      }
    }
  }
  w.b = Mat(w.nc, n_s, 0.0);
  w.pinned = detail::pin_mask(w.vr);
  return w;
}

// One alternating-update sweep for every active cell; returns the largest
// power movement and refreshes the reduced utilities.
double advance_fp_cells(SpectrumWork& w, const PipelineConfig& cfg,
                        const std::vector<double>& solo) {
  double dp = 0.0;
  for (FpCell& cell : w.cells) {
    FPState nx = fp_iterate(cell.st, cell.cs.sub, *cell.cs.fading, cfg.epsilon);
    dp = std::max(dp, std::max(std::fabs(nx.p_c - cell.st.p_c), std::fabs(nx.p_d - cell.st.p_d)));
    cell.st = nx;
    w.vr(cell.i, cell.jr) = cell.st.objective_f0 - solo[static_cast<size_t>(cell.i)];
  }
  return dp;
}

// Copy the evolved utilities and powers of the guaranteed-rate cells back
// into the full-width tables used for reporting.
void finalize_fp_tables(SpectrumWork& w) {
  for (const FpCell& cell : w.cells) {
    w.tables.utility(cell.i, cell.j) = w.vr(cell.i, cell.jr);
    w.tables.p_c(cell.i, cell.j) = cell.cs.swapped ? cell.st.p_d : cell.st.p_c;
    w.tables.p_d(cell.j, cell.i) = cell.cs.swapped ? cell.st.p_c : cell.st.p_d;
  }
}

}  // namespace

std::pair<AllocationResult, MessageLog> run_decentralized_separate(const NetworkInstance& inst,
                                                                   const Partition& part,
                                                                   const PipelineConfig& cfg) {
  const NetworkParams& p = inst.params;
  part.validate(p.n_pairs);

  const std::vector<double> su = solo_rates(inst, Spectrum::Uplink);
  const std::vector<double> sd = solo_rates(inst, Spectrum::Downlink);

  std::vector<SpectrumWork> works;
  long long per_round_assign = 0, per_round_power = 0;
  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const std::vector<int>& members = part_members(part, s);
    if (members.empty()) continue;
    works.push_back(make_work(inst, s, members, cfg, s == Spectrum::Uplink ? su : sd));
    SpectrumWork& w = works.back();
    w.sp = detail::separate_step_params(w.nc, static_cast<int>(members.size()), cfg.gamma,
                                        cfg.pgd.step_size);
    // each member pair sends its allocation column up and receives the
    // projected column back, plus one power report per channel
    per_round_assign += 2LL * w.nc * static_cast<long long>(members.size());
    per_round_power += static_cast<long long>(w.nc) * static_cast<long long>(members.size());
  }

  double first_round_dp = 0.0;
  if (cfg.mode != CsiMode::Mrm)
    for (const SpectrumWork& w : works)
      first_round_dp = std::max(first_round_dp, std::max(max_abs(w.tables.p_c), max_abs(w.tables.p_d)));

  MessageLog log;
  std::vector<Mat> trace_ul, trace_dl;
  int consec = 0, rounds = 0;
  for (int round = 1; round <= cfg.pgd.max_iters; ++round) {
    double dp = 0.0;
    if (cfg.mode == CsiMode::Mrm) {
      for (SpectrumWork& w : works)
        dp = std::max(dp, advance_fp_cells(w, cfg, w.spec == Spectrum::Uplink ? su : sd));
    } else {
      // closed-form powers are refreshed each round but never move after the
      // first exchange
      dp = round == 1 ? first_round_dp : 0.0;
    }

    double db = 0.0;
    for (SpectrumWork& w : works) {
      Mat prev = w.b;
      detail::pgd_step(w.b, w.vr, w.sp, w.pinned);
      db = std::max(db, max_abs_diff(prev, w.b));
      if (cfg.record_trace) {
        Mat full(w.nc, p.n_pairs, 0.0);
        scatter_columns(w.b, w.members, full);
        (w.spec == Spectrum::Uplink ? trace_ul : trace_dl).push_back(std::move(full));
      }
    }

    ++log.rounds;
    log.assignment_scalars += per_round_assign;
    log.power_scalars += per_round_power;
    rounds = round;

    consec = db < kRoundAssignTol ? consec + 1 : 0;
    if (consec >= kStableRounds && dp < kRoundPowerTol) break;
  }

  Mat b_ul(p.n_channels_ul, p.n_pairs, 0.0), b_dl(p.n_channels_dl, p.n_pairs, 0.0);
  PowerTables tu, td;
  tu.utility = Mat(p.n_channels_ul, p.n_pairs, -kInf);
  tu.p_c = Mat(p.n_channels_ul, p.n_pairs, 0.0);
  tu.p_d = Mat(p.n_pairs, p.n_channels_ul, 0.0);
  td.utility = Mat(p.n_channels_dl, p.n_pairs, -kInf);
  td.p_c = Mat(p.n_channels_dl, p.n_pairs, 0.0);
  td.p_d = Mat(p.n_pairs, p.n_channels_dl, 0.0);

  for (SpectrumWork& w : works) {
    if (cfg.mode == CsiMode::Mrm) finalize_fp_tables(w);
    Mat bin = cfg.random_discretize
                  ? discretize_random(w.b, cfg.discretize_samples, w.vr, cfg.gamma,
                                      mix_seed(cfg.seed, w.spec == Spectrum::Uplink ? 0 : 1))
                  : discretize_max(w.b);
    Mat& b = w.spec == Spectrum::Uplink ? b_ul : b_dl;
    scatter_columns(bin, w.members, b);
    (w.spec == Spectrum::Uplink ? tu : td) = std::move(w.tables);
  }

  AllocationResult r =
      base_result(inst, tu, td, std::move(b_ul), std::move(b_dl), false, &part, cfg.gamma);
  r.iterations = rounds;
  r.messages_exchanged = log.total();
  r.trace_ul = std::move(trace_ul);
  r.trace_dl = std::move(trace_dl);
  return {std::move(r), log};
}

std::pair<AllocationResult, MessageLog> run_decentralized_joint(const NetworkInstance& inst,
                                                                const PipelineConfig& cfg) {
  const NetworkParams& p = inst.params;
  std::vector<int> all_pairs(static_cast<size_t>(p.n_pairs));
  std::iota(all_pairs.begin(), all_pairs.end(), 0);

  const std::vector<double> su = solo_rates(inst, Spectrum::Uplink);
  const std::vector<double> sd = solo_rates(inst, Spectrum::Downlink);

  SpectrumWork wu = make_work(inst, Spectrum::Uplink, all_pairs, cfg, su);
  SpectrumWork wd = make_work(inst, Spectrum::Downlink, all_pairs, cfg, sd);
  const detail::JointStepParams sp =
      detail::joint_step_params(wu.nc, wd.nc, p.n_pairs, cfg.gamma, cfg.pgd.step_size);

  const long long per_round_assign = 2LL * p.n_pairs * (wu.nc + wd.nc);
  const long long per_round_power = static_cast<long long>(p.n_pairs) * (wu.nc + wd.nc);

  double first_round_dp = 0.0;
  if (cfg.mode != CsiMode::Mrm)
    for (const SpectrumWork* w : {&wu, &wd})
      first_round_dp =
          std::max(first_round_dp, std::max(max_abs(w->tables.p_c), max_abs(w->tables.p_d)));

  MessageLog log;
  std::vector<Mat> trace_ul, trace_dl;
  int consec = 0, rounds = 0;
  for (int round = 1; round <= cfg.pgd.max_iters; ++round) {
    double dp = 0.0;
    if (cfg.mode == CsiMode::Mrm) {
      dp = std::max(advance_fp_cells(wu, cfg, su), advance_fp_cells(wd, cfg, sd));
    } else {
      dp = round == 1 ? first_round_dp : 0.0;
    }

    Mat prev_u = wu.b, prev_d = wd.b;
    detail::pgd_step_joint(wu.b, wd.b, wu.vr, wd.vr, sp, wu.pinned, wd.pinned);
    double db = std::max(max_abs_diff(prev_u, wu.b), max_abs_diff(prev_d, wd.b));
    if (cfg.record_trace) {
      trace_ul.push_back(wu.b);
      trace_dl.push_back(wd.b);
    }

    ++log.rounds;
    log.assignment_scalars += per_round_assign;
    log.power_scalars += per_round_power;
    rounds = round;

    consec = db < kRoundAssignTol ? consec + 1 : 0;
    if (consec >= kStableRounds && dp < kRoundPowerTol) break;
  }

  if (cfg.mode == CsiMode::Mrm) {
    finalize_fp_tables(wu);
    finalize_fp_tables(wd);
  }

  Mat bu, bd;
  if (cfg.random_discretize) {
    std::tie(bu, bd) =
        discretize_random_joint(wu.b, wd.b, wu.tables.utility, wd.tables.utility, cfg.gamma, p,
                                cfg.discretize_samples, cfg.seed);
  } else {
    bu = discretize_max(wu.b);
    bd = discretize_max(wd.b);
  }
  std::tie(bu, bd) = exclusivity_projection(std::move(bu), std::move(bd), wu.tables.utility,
                                            wd.tables.utility, cfg.gamma, p);

  AllocationResult r = base_result(inst, wu.tables, wd.tables, std::move(bu), std::move(bd), true,
                                   nullptr, cfg.gamma);
  r.iterations = rounds;
  r.messages_exchanged = log.total();
  r.trace_ul = std::move(trace_ul);
  r.trace_dl = std::move(trace_dl);
  return {std::move(r), log};
}

AllocationResult run_single_channel_baseline(const NetworkInstance& inst, const Partition& part,
                                             const PipelineConfig& cfg) {
  const NetworkParams& p = inst.params;
  part.validate(p.n_pairs);

  PowerTables tu = build_power_tables(inst, Spectrum::Uplink, cfg.mode, cfg.epsilon,
                                      member_mask(part.ul_pairs, p.n_pairs), cfg.mrm_tol,
                                      cfg.mrm_max_iters);
  PowerTables td = build_power_tables(inst, Spectrum::Downlink, cfg.mode, cfg.epsilon,
                                      member_mask(part.dl_pairs, p.n_pairs), cfg.mrm_tol,
                                      cfg.mrm_max_iters);

  Mat b_ul(p.n_channels_ul, p.n_pairs, 0.0), b_dl(p.n_channels_dl, p.n_pairs, 0.0);
  for (Spectrum s : {Spectrum::Uplink, Spectrum::Downlink}) {
    const std::vector<int>& members = part_members(part, s);
    if (members.empty()) continue;
    const PowerTables& t = s == Spectrum::Uplink ? tu : td;
    Mat bin = greedy_single_channel(gather_columns(t.utility, members));
    scatter_columns(bin, members, s == Spectrum::Uplink ? b_ul : b_dl);
  }

  return base_result(inst, tu, td, std::move(b_ul), std::move(b_dl), false, &part, cfg.gamma);
}

}  // namespace d2d

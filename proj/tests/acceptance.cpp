// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL] line
// (details indented below it); the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "d2d/experiment.hpp"
#include "d2d/oracle.hpp"
#include "d2d/orchestrate.hpp"

using namespace d2d;

namespace {

double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& d) {
  MeanSe r;
  if (d.empty()) return r;
  for (double x : d) r.mean += x;
  r.mean /= static_cast<double>(d.size());
  double ss = 0.0;
  for (double x : d) ss += (x - r.mean) * (x - r.mean);
  if (d.size() > 1)
    r.se = std::sqrt(ss / (static_cast<double>(d.size()) - 1.0) /
                     static_cast<double>(d.size()));
  return r;
}

// one-sided paired claim "mean difference >= 0" at 95%: fails only when the
// mean is significantly negative
bool paired_geq(const std::vector<double>& d) {
  MeanSe m = mean_se(d);
  return m.mean + 1.96 * m.se >= 0.0;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile_of(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double idx = q * (static_cast<double>(v.size()) - 1.0);
  size_t lo = static_cast<size_t>(idx);
  size_t hi = std::min(lo + 1, v.size() - 1);
  double w = idx - static_cast<double>(lo);
  return (1.0 - w) * v[lo] + w * v[hi];
}

PowerSubproblem random_subproblem(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PowerSubproblem s;
  s.g_c = 0.5 + 2.5 * u(rng);
  s.g_d = 1.0 + 5.0 * u(rng);
  s.h_cu_to_d2d = 0.3 * u(rng);
  s.h_d2d_to_cu = 0.05 + 0.35 * u(rng);
  s.noise = 0.2 + 0.8 * u(rng);
  s.p_c_max = 0.5 + 1.5 * u(rng);
  s.p_d_max = 0.3 + 1.2 * u(rng);
  s.eta_c_min = 0.2 + 0.6 * u(rng);
  s.eta_d_min = 0.2 + 0.6 * u(rng);
  return s;
}

NetworkInstance make_net(uint64_t seed, int nc_ul, int nc_dl, int nd) {
  Geometry geo;
  geo.cell_radius_m = 500.0;
  geo.d2d_radius_m = 5.0;
  geo.pathloss_exponent = 2.0;
  geo.ref_gain = 1000.0;
  NetworkParams p;
  p.n_channels_ul = nc_ul;
  p.n_channels_dl = nc_dl;
  p.n_pairs = nd;
  p.p_c_max_ul = 1.0;
  p.p_c_max_dl = 10.0;
  p.p_d_max = 0.5;
  p.noise = 1e-3;
  return generate_instance(seed, geo, p, FadingKind::Exponential);
}

void report(int idx, bool ok, const std::string& what, double elapsed) {
  std::printf("[%s] %d. %s (%.1fs)\n", ok ? "PASS" : "FAIL", idx, what.c_str(), elapsed);
}

// ---------------------------------------------------------------- criterion 1

bool criterion_power_vs_grid() {
  const double t0 = now_s();
  std::mt19937_64 rng(0xC1);
  int done = 0;
  double min_margin_full = 1e9, min_margin_mean = 1e9;
  while (done < 100) {
    PowerSubproblem s = random_subproblem(rng);
    FadingModel f = FadingModel::exponential(s.h_d2d_to_cu);
    PowerSolution full = solve_power_pcsi(s);
    PowerSolution erm = solve_power_erm(s, f, 0.1);
    if (!full.feasible || !erm.feasible) continue;
    oracle::GridResult gf =
        oracle::grid_search_power(s, nullptr, 0.0, oracle::PowerObjective::FullKnowledge, 2000);
    oracle::GridResult gm =
        oracle::grid_search_power(s, &f, 0.1, oracle::PowerObjective::MeanValue, 2000);
    if (!gf.feasible || !gm.feasible) continue;
    ++done;
    min_margin_full = std::min(min_margin_full, full.utility - gf.value);
    min_margin_mean = std::min(min_margin_mean, erm.utility - gm.value);
  }
  const double el = now_s() - t0;
  const bool ok = min_margin_full >= -1e-6 && min_margin_mean >= -1e-6 && el < 60.0;
  std::printf("    full-knowledge min margin over 2001^2 grid: %.3e\n", min_margin_full);
  std::printf("    mean-objective min margin over 2001^2 grid: %.3e\n", min_margin_mean);
  report(1, ok, "closed-form power solvers dominate a 2000x2000 grid search on 100 subproblems",
         el);
  return ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_fp_stationarity() {
  const double t0 = now_s();
  std::mt19937_64 rng(0xC2);
  const double eps = 0.1;
  int done = 0, monotone_bad = 0, global_hits = 0, local_hits = 0, unresolved = 0;
  while (done < 100) {
    PowerSubproblem s = random_subproblem(rng);
    FadingModel f = FadingModel::exponential(s.h_d2d_to_cu);
    std::vector<double> trace;
    PowerSolution sol = solve_power_mrm(s, f, eps, 1e-10, 20000, &trace);
    if (!sol.feasible) continue;
    ++done;
    for (size_t k = 0; k + 1 < trace.size(); ++k)
      if (trace[k + 1] < trace[k] - 1e-9) {
        ++monotone_bad;
        break;
      }
    oracle::GridResult g =
        oracle::grid_search_power(s, &f, eps, oracle::PowerObjective::Guaranteed, 500);
    if (!g.feasible || sol.utility >= g.value - 1e-3) {
      ++global_hits;
      continue;
    }
    // grid beat the fixed point by more than the tolerance: verify the fixed
    // point is still a local maximum on a refined box around it
    const double h_q = f.quantile(1.0 - eps);
    const double rc = 0.02 * s.p_c_max, rd = 0.02 * s.p_d_max;
    double best_local = sol.utility;
    for (int a = 0; a <= 100; ++a)
      for (int b = 0; b <= 100; ++b) {
        double pc = std::clamp(sol.p_c - rc + 2.0 * rc * a / 100.0, 0.0, s.p_c_max);
        double pd = std::clamp(sol.p_d - rd + 2.0 * rd * b / 100.0, 0.0, s.p_d_max);
        if (pc * s.g_c / (s.noise + pd * h_q) < s.eta_c_min) continue;
        if (pd * s.g_d / (s.noise + pc * s.h_cu_to_d2d) < s.eta_d_min) continue;
        double val = std::log2(1.0 + pc * s.g_c / (s.noise + pd * h_q)) +
                     std::log2(1.0 + pd * s.g_d / (s.noise + pc * s.h_cu_to_d2d)) -
                     std::log2(1.0 + s.p_c_max * s.g_c / s.noise);
        best_local = std::max(best_local, val);
      }
    if (best_local <= sol.utility + 1e-6)
      ++local_hits;
    else
      ++unresolved;
  }
  const double el = now_s() - t0;
  const bool ok = monotone_bad == 0 && unresolved == 0 && el < 120.0;
  std::printf("    monotone traces: %d/100, near grid optimum: %d, locally optimal: %d, "
              "neither: %d\n",
              100 - monotone_bad, global_hits, local_hits, unresolved);
  report(2, ok,
         "alternating power updates are monotone and land on (near-)optimal fixed points", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_outage_calibration() {
  const double t0 = now_s();
  const double etas[] = {0.05, 0.1, 0.2, 0.3};
  const long long per_cell = 5000;  // 20 allocations x 5000 = 1e5 samples per point
  bool ok = true;
  double pcsi_min = 1.0, pcsi_max = 0.0;
  std::printf("    eps    erm_outage  mrm_outage  pcsi_outage  3sigma\n");
  for (double eps : etas) {
    std::mt19937_64 rng(0xC3);
    int done = 0, draws = 0;
    double erm_sum = 0.0, mrm_sum = 0.0, pcsi_sum = 0.0;
    long long salt = 0;
    while (done < 20 && ++draws < 5000) {
      PowerSubproblem s;
      std::uniform_real_distribution<double> u(0.0, 1.0);
      s.g_c = 1.0;
      s.g_d = 5.0;
      s.h_cu_to_d2d = 0.01 + 0.09 * u(rng);
      s.h_d2d_to_cu = 0.2 + 0.3 * u(rng);
      s.noise = 0.1;
      s.p_c_max = 2.0;
      s.p_d_max = 50.0;
      s.eta_c_min = 1.0;
      s.eta_d_min = 1.0;
      ++salt;
      FadingModel f = FadingModel::exponential(s.h_d2d_to_cu);
      PowerSolution erm = solve_power_erm(s, f, eps);
      PowerSolution mrm = solve_power_mrm(s, f, eps, 1e-10, 20000);
      PowerSolution pcsi = solve_power_pcsi(s);  // plans with the mean gain
      if (!erm.feasible || !mrm.feasible || !pcsi.feasible) continue;
      // the regime is chosen so the cellular floor is active at the planning
      // gain; only then is the outage pinned to its budget
      const double h_q = f.quantile(1.0 - eps);
      const double slack = erm.p_c * s.g_c / (s.noise + erm.p_d * h_q) / s.eta_c_min - 1.0;
      if (std::fabs(slack) > 1e-6) continue;
      ++done;
      erm_sum += oracle::monte_carlo_outage(erm.p_c, erm.p_d, s, f, per_cell,
                                            0x3100 + static_cast<uint64_t>(salt))
                     .p_hat;
      mrm_sum += oracle::monte_carlo_outage(mrm.p_c, mrm.p_d, s, f, per_cell,
                                            0x3200 + static_cast<uint64_t>(salt))
                     .p_hat;
      pcsi_sum += oracle::monte_carlo_outage(pcsi.p_c, pcsi.p_d, s, f, per_cell,
                                             0x3300 + static_cast<uint64_t>(salt))
                      .p_hat;
    }
    if (done < 20) {
      ok = false;
      std::printf("    %-6.2f could not collect 20 binding allocations\n", eps);
      continue;
    }
    const double erm_out = erm_sum / 20.0, mrm_out = mrm_sum / 20.0, pcsi_out = pcsi_sum / 20.0;
    const double sigma3 = 3.0 * std::sqrt(eps * (1.0 - eps) / (20.0 * per_cell));
    std::printf("    %-6.2f %-11.4f %-11.4f %-12.4f %.4f\n", eps, erm_out, mrm_out, pcsi_out,
                sigma3);
    if (std::fabs(erm_out - eps) > sigma3) ok = false;
    if (mrm_out > eps + sigma3) ok = false;
    if (pcsi_out <= 0.3) ok = false;  // must exceed every tested budget
    pcsi_min = std::min(pcsi_min, pcsi_out);
    pcsi_max = std::max(pcsi_max, pcsi_out);
  }
  if (pcsi_max - pcsi_min > 0.02) ok = false;  // constant across budgets
  const double el = now_s() - t0;
  ok = ok && el < 300.0;
  report(3, ok,
         "empirical outage sits at the budget for the chance-constrained modes and far above "
         "it when fading is ignored",
         el);
  return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_assignment_vs_exhaustive() {
  const double t0 = now_s();
  PipelineConfig cfg;
  cfg.mode = CsiMode::Pcsi;
  cfg.gamma = 1.0;
  cfg.discretize_samples = 64;

  std::vector<double> sep_ratio, joint_ratio;
  for (uint64_t r = 0; r < 100; ++r) {
    NetworkInstance inst = make_net(40000 + r, 3, 3, 2);
    Partition part = Partition::all_dl(inst.params.n_pairs);
    AllocationResult res = run_centralized_separate(inst, part, cfg);
    std::vector<char> allowed(static_cast<size_t>(inst.params.n_pairs), 1);
    PowerTables t = build_power_tables(inst, Spectrum::Downlink, cfg.mode, cfg.epsilon, allowed);
    oracle::ExhaustiveResult ex = oracle::exhaustive_assignment(t.utility, cfg.gamma);
    if (ex.objective > 1e-9)
      sep_ratio.push_back(res.objective / ex.objective);
    else
      sep_ratio.push_back(res.objective >= ex.objective - 1e-9 ? 1.0 : 0.0);

    NetworkInstance ji = make_net(41000 + r, 2, 2, 2);
    AllocationResult jres = run_centralized_joint(ji, cfg);
    std::vector<char> jallowed(static_cast<size_t>(ji.params.n_pairs), 1);
    PowerTables tu = build_power_tables(ji, Spectrum::Uplink, cfg.mode, cfg.epsilon, jallowed);
    PowerTables td = build_power_tables(ji, Spectrum::Downlink, cfg.mode, cfg.epsilon, jallowed);
    oracle::ExhaustiveJointResult jex =
        oracle::exhaustive_assignment_joint(tu.utility, td.utility, cfg.gamma, ji.params);
    if (jex.objective > 1e-9)
      joint_ratio.push_back(jres.objective / jex.objective);
    else
      joint_ratio.push_back(jres.objective >= jex.objective - 1e-9 ? 1.0 : 0.0);
  }
  const double el = now_s() - t0;
  const double med_sep = median(sep_ratio), med_joint = median(joint_ratio);
  std::printf("    one-spectrum ratio to exhaustive: p10=%.4f p50=%.4f p90=%.4f min=%.4f\n",
              quantile_of(sep_ratio, 0.10), med_sep, quantile_of(sep_ratio, 0.90),
              quantile_of(sep_ratio, 0.0));
  std::printf("    two-spectra  ratio to exhaustive: p10=%.4f p50=%.4f p90=%.4f min=%.4f\n",
              quantile_of(joint_ratio, 0.10), med_joint, quantile_of(joint_ratio, 0.90),
              quantile_of(joint_ratio, 0.0));
  const bool ok = med_sep >= 0.90 && med_joint >= 0.95 && el < 300.0;
  report(4, ok, "relax-and-round pipelines reach the exhaustive optimum at the median", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_gradient() {
  const double t0 = now_s();
  std::mt19937_64 rng(0xC5);
  std::uniform_real_distribution<double> uv(-1.0, 2.0), ub(0.0, 1.0);
  const double h = 1e-5;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int nc = 2 + static_cast<int>(rng() % 4);
    const int nd = 2 + static_cast<int>(rng() % 4);
    Mat v(nc, nd, 0.0);
    for (double& x : v.a) x = uv(rng);
    Mat b(nc, nd, 0.0);
    for (int i = 0; i < nc; ++i) {
      std::vector<double> row(static_cast<size_t>(nd));
      for (double& x : row) x = ub(rng);
      project_column(row);
      for (int j = 0; j < nd; ++j) b(i, j) = row[static_cast<size_t>(j)];
    }
    Mat g = grad_g(b, v, 7.5);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nd; ++j) {
        Mat bp = b, bm = b;
        bp(i, j) += h;
        bm(i, j) -= h;
        double fd = (relaxed_objective_g(bp, v, 7.5) - relaxed_objective_g(bm, v, 7.5)) / (2 * h);
        worst = std::max(worst, std::fabs(g(i, j) - fd) /
                                    std::max({1.0, std::fabs(g(i, j)), std::fabs(fd)}));
      }
  }
  const double el = now_s() - t0;
  const bool ok = worst <= 1e-5 && el < 10.0;
  std::printf("    worst relative gradient error: %.3e\n", worst);
  report(5, ok, "analytic ascent gradient matches central finite differences", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_ascent_rate() {
  const double t0 = now_s();
  std::vector<double> slopes;
  int finite = 0, failures = 0;
  for (uint64_t k = 0; k < 20; ++k) {
    NetworkInstance inst = make_net(60000 + k, 10, 10, 10);
    std::vector<char> allowed(static_cast<size_t>(inst.params.n_pairs), 1);
    PowerTables t = build_power_tables(inst, Spectrum::Downlink, CsiMode::Erm, 0.1, allowed);
    PgdResult r = pgd_assign(t.utility, 10.0, {});
    oracle::ConvergenceReport rep = oracle::convergence_probe(r.objective_trace, 1e-9);
    if (!rep.monotone) ++failures;
    if (rep.finite_convergence) {
      ++finite;
      continue;
    }
    slopes.push_back(rep.slope);
    if (rep.slope > -0.8) ++failures;
  }
  const double el = now_s() - t0;
  const bool ok = failures == 0 && el < 60.0;
  std::printf("    finite convergence: %d/20, slopes: median=%.2f max=%.2f\n", finite,
              slopes.empty() ? 0.0 : median(slopes),
              slopes.empty() ? 0.0 : *std::max_element(slopes.begin(), slopes.end()));
  report(6, ok, "projected ascent objective gap decays at first order or faster", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_distributed_equivalence() {
  const double t0 = now_s();
  double worst_diff = 0.0;
  bool accounting_ok = true;
  std::vector<double> mrm_rel;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    NetworkInstance inst = make_net(70000 + seed, 5, 5, 4);
    Partition part = Partition::all_dl(inst.params.n_pairs);
    for (CsiMode mode : {CsiMode::Pcsi, CsiMode::Erm}) {
      PipelineConfig cfg;
      cfg.mode = mode;
      cfg.gamma = 10.0;
      cfg.discretize_samples = 8;
      cfg.record_trace = true;
      AllocationResult cent = run_centralized_separate(inst, part, cfg);
      auto [dec, log] = run_decentralized_separate(inst, part, cfg);
      size_t common = std::min(cent.trace_dl.size(), dec.trace_dl.size());
      for (size_t k = 0; k < common; ++k)
        worst_diff = std::max(worst_diff, max_abs_diff(cent.trace_dl[k], dec.trace_dl[k]));
      if (log.assignment_scalars != log.rounds * 2 * 5 * 4) accounting_ok = false;
    }
    PipelineConfig mc;
    mc.mode = CsiMode::Mrm;
    mc.gamma = 10.0;
    mc.discretize_samples = 8;
    AllocationResult cent = run_centralized_separate(inst, part, mc);
    auto [dec, log] = run_decentralized_separate(inst, part, mc);
    mrm_rel.push_back(std::fabs(dec.total_rate - cent.total_rate) /
                      std::max(1e-12, cent.total_rate));
  }
  const double el = now_s() - t0;
  const double med = median(mrm_rel);
  const bool ok = worst_diff <= 1e-12 && accounting_ok && med <= 0.05 && el < 180.0;
  std::printf("    worst relaxed-iterate difference: %.3e, per-round scalar accounting %s\n",
              worst_diff, accounting_ok ? "exact" : "wrong");
  std::printf("    distributed guaranteed-rate deviation: median=%.4f%% p90=%.4f%%\n",
              100.0 * med, 100.0 * quantile_of(mrm_rel, 0.90));
  report(7, ok, "distributed rounds replay the centralized ascent and stay within budget", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_figure_shapes() {
  const double t0 = now_s();
  const int reps = 500;
  const std::vector<double> eps_grid{0.05, 0.1, 0.2, 0.3};

  // per-realization rates for every arm, paired through the instance seed
  std::vector<std::vector<double>> erm_eps(eps_grid.size()), mrm_eps(eps_grid.size());
  std::vector<double> pcsi_dl, base_rate, base_fair, ul_rate, hh_rate, joint_rate;
  std::vector<double> erm_fair, pcsi_fair, mrm_fair;

  PipelineConfig cfg;
  cfg.gamma = 10.0;
  cfg.discretize_samples = 16;

  for (int r = 0; r < reps; ++r) {
    NetworkInstance inst = make_net(80000 + static_cast<uint64_t>(r), 10, 10, 10);
    Partition dl = Partition::all_dl(10), ul = Partition::all_ul(10), hh = Partition::half_half(10);

    for (size_t e = 0; e < eps_grid.size(); ++e) {
      PipelineConfig c = cfg;
      c.epsilon = eps_grid[e];
      c.mode = CsiMode::Erm;
      AllocationResult re = run_centralized_separate(inst, dl, c);
      erm_eps[e].push_back(re.total_rate);
      if (eps_grid[e] == 0.1) {
        erm_fair.push_back(re.fairness_delta);
        ul_rate.push_back(run_centralized_separate(inst, ul, c).total_rate);
        hh_rate.push_back(run_centralized_separate(inst, hh, c).total_rate);
        joint_rate.push_back(run_centralized_joint(inst, c).total_rate);
        AllocationResult rb = run_single_channel_baseline(inst, dl, c);
        base_rate.push_back(rb.total_rate);
        base_fair.push_back(rb.fairness_delta);
      }
      c.mode = CsiMode::Mrm;
      AllocationResult rm = run_centralized_separate(inst, dl, c);
      mrm_eps[e].push_back(rm.total_rate);
      if (eps_grid[e] == 0.1) mrm_fair.push_back(rm.fairness_delta);
    }
    PipelineConfig cp = cfg;
    cp.mode = CsiMode::Pcsi;
    AllocationResult rp = run_centralized_separate(inst, dl, cp);
    pcsi_dl.push_back(rp.total_rate);
    pcsi_fair.push_back(rp.fairness_delta);
  }

  auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
  };
  auto show = [&](const char* name, const std::vector<double>& d, bool pass) {
    MeanSe m = mean_se(d);
    std::printf("    %-34s mean diff %+.4f +- %.4f  %s\n", name, m.mean, 1.96 * m.se,
                pass ? "ok" : "VIOLATED");
  };

  bool ok = true;
  for (size_t e = 0; e + 1 < eps_grid.size(); ++e) {
    bool p1 = paired_geq(diff(erm_eps[e + 1], erm_eps[e]));
    bool p2 = paired_geq(diff(mrm_eps[e + 1], mrm_eps[e]));
    char buf[64];
    std::snprintf(buf, sizeof buf, "mean-mode rate, eps %.2f->%.2f", eps_grid[e],
                  eps_grid[e + 1]);
    show(buf, diff(erm_eps[e + 1], erm_eps[e]), p1);
    std::snprintf(buf, sizeof buf, "guaranteed-mode rate, eps %.2f->%.2f", eps_grid[e],
                  eps_grid[e + 1]);
    show(buf, diff(mrm_eps[e + 1], mrm_eps[e]), p2);
    ok = ok && p1 && p2;
  }
  for (size_t e = 0; e < eps_grid.size(); ++e) {
    bool p1 = paired_geq(diff(pcsi_dl, erm_eps[e]));
    bool p2 = paired_geq(diff(erm_eps[e], mrm_eps[e]));
    char buf[64];
    std::snprintf(buf, sizeof buf, "full-knowledge >= mean, eps %.2f", eps_grid[e]);
    show(buf, diff(pcsi_dl, erm_eps[e]), p1);
    std::snprintf(buf, sizeof buf, "mean >= guaranteed, eps %.2f", eps_grid[e]);
    show(buf, diff(erm_eps[e], mrm_eps[e]), p2);
    ok = ok && p1 && p2;
  }
  {
    size_t e01 = 1;  // eps = 0.1 slot
    for (auto [name, arm] : {std::pair<const char*, const std::vector<double>*>{
                                 "multi-channel mean mode", &erm_eps[e01]},
                             {"multi-channel guaranteed mode", &mrm_eps[e01]},
                             {"multi-channel full knowledge", &pcsi_dl}}) {
      bool p = paired_geq(diff(*arm, base_rate));
      std::string label = std::string(name) + std::string(" >= one-channel");
      show(label.c_str(), diff(*arm, base_rate), p);
      ok = ok && p;
    }
    for (auto [name, arm] : {std::pair<const char*, const std::vector<double>*>{
                                 "fairness: mean mode", &erm_fair},
                             {"fairness: guaranteed mode", &mrm_fair},
                             {"fairness: full knowledge", &pcsi_fair}}) {
      bool p = paired_geq(diff(*arm, base_fair));  // baseline spread is lowest
      show(name, diff(*arm, base_fair), p);
      ok = ok && p;
    }
    bool pud = paired_geq(diff(ul_rate, erm_eps[e01]));
    show("uplink reuse >= downlink reuse", diff(ul_rate, erm_eps[e01]), pud);
    ok = ok && pud;
    for (auto [name, arm] : {std::pair<const char*, const std::vector<double>*>{
                                 "joint >= all-downlink", &erm_eps[e01]},
                             {"joint >= all-uplink", &ul_rate},
                             {"joint >= half-half", &hh_rate}}) {
      bool p = paired_geq(diff(joint_rate, *arm));
      show(name, diff(joint_rate, *arm), p);
      ok = ok && p;
    }
  }
  const double el = now_s() - t0;
  ok = ok && el < 900.0;
  report(8, ok, "figure-level orderings hold over 500 paired realizations", el);
  return ok;
}

// ---------------------------------------------------------------- criterion 9

bool criterion_mean_substitution() {
  const double t0 = now_s();
  PowerSubproblem s;
  s.g_c = 1.0;
  s.g_d = 2.0;
  s.h_cu_to_d2d = 0.0;
  s.noise = 1.0;
  s.p_c_max = 1.0;
  s.p_d_max = 0.5;
  const double mean = 0.2, var = 0.01;
  bool ok = true;
  std::printf("    kind         substituted   mc_mean       rel_dev\n");
  const struct {
    const char* name;
    FadingModel model;
  } kinds[] = {
      {"exponential", FadingModel::exponential(mean)},
      {"gaussian", FadingModel::gaussian(mean, var)},
      {"chi_squared", FadingModel::chi_squared(mean, var)},
      {"log_normal", FadingModel::log_normal(mean, var)},
  };
  for (const auto& k : kinds) {
    oracle::GainDeviation dev =
        oracle::expected_gain_deviation(s, 1.0, 0.5, k.model, 1000000, 0xC9);
    std::printf("    %-12s %-13.6f %-13.6f %.4f%%\n", k.name, dev.substituted, dev.mc_mean,
                100.0 * dev.rel_dev);
    if (dev.rel_dev >= 0.01) ok = false;
  }
  const double el = now_s() - t0;
  ok = ok && el < 60.0;
  report(9, ok, "mean substitution stays within one percent of the true expected gain", el);
  return ok;
}

}  // namespace

int main() {
  int fails = 0;
  fails += !criterion_power_vs_grid();
  fails += !criterion_fp_stationarity();
  fails += !criterion_outage_calibration();
  fails += !criterion_assignment_vs_exhaustive();
  fails += !criterion_gradient();
  fails += !criterion_ascent_rate();
  fails += !criterion_distributed_equivalence();
  fails += !criterion_figure_shapes();
  fails += !criterion_mean_substitution();
  std::printf("%d/9 criteria passed\n", 9 - fails);
  return fails;
}

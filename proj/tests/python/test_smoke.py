"""End-to-end smoke tests for the python bindings.

Light sanity checks only; the heavy numerical validation lives in the C++
unit and acceptance suites.
"""

import math

import numpy as np
import pytest

import d2dalloc as dd


def small_instance(seed=7, nc=3, nd=3):
    geo = dd.Geometry()
    geo.ref_gain = 1000.0
    par = dd.NetworkParams()
    par.n_channels_ul = nc
    par.n_channels_dl = nc
    par.n_pairs = nd
    par.validate()
    return dd.generate_instance(seed, geo, par, dd.FadingKind.Exponential)


def test_mat_numpy_roundtrip():
    m = dd.Mat(2, 3, 1.5)
    m[1, 2] = -4.0
    arr = np.asarray(m)
    assert arr.shape == (2, 3)
    assert arr[1, 2] == -4.0
    assert arr[0, 0] == 1.5
    back = dd.Mat.from_array(arr * 2)
    assert back[1, 2] == -8.0
    assert dd.max_abs_diff(m, dd.Mat.from_array(arr)) == 0.0
    with pytest.raises(IndexError):
        m[2, 0]


def test_fading_quantiles_and_sampling():
    f = dd.FadingModel.exponential(0.2)
    assert f.mean == pytest.approx(0.2)
    # exponential inverse CDF has a closed form
    assert f.quantile(0.9) == pytest.approx(-0.2 * math.log(0.1), rel=1e-12)
    rng1, rng2 = dd.Rng(42), dd.Rng(42)
    xs = [f.sample(rng1) for _ in range(100)]
    ys = [f.sample(rng2) for _ in range(100)]
    assert xs == ys
    assert all(x >= 0 for x in xs)
    g = dd.FadingModel.log_normal(0.2, 0.01)
    assert g.quantile(0.2) < g.quantile(0.8)


def test_instance_shapes():
    inst = small_instance()
    assert len(inst.g_c_ul) == 3 and len(inst.g_c_dl) == 3 and len(inst.g_d) == 3
    assert all(g > 0 for g in inst.g_d)
    assert inst.cross_fading(dd.Spectrum.Downlink, 0, 1).mean > 0
    solo = dd.solo_rates(inst, dd.Spectrum.Downlink)
    assert len(solo) == 3 and all(r > 0 for r in solo)


def canonical_subproblem():
    sub = dd.PowerSubproblem()
    sub.g_c = 2.0
    sub.g_d = 4.0
    sub.h_cu_to_d2d = 0.1
    sub.h_d2d_to_cu = 0.2
    sub.noise = 0.5
    sub.p_c_max = 1.0
    sub.p_d_max = 1.0
    sub.eta_c_min = 0.5
    sub.eta_d_min = 0.5
    return sub


def test_power_solvers_ordering():
    sub = canonical_subproblem()
    fad = dd.FadingModel.exponential(sub.h_d2d_to_cu)
    pcsi = dd.solve_power_pcsi(sub)
    erm = dd.solve_power_erm(sub, fad, 0.1)
    mrm = dd.solve_power_mrm(sub, fad, 0.1)
    assert pcsi.feasible and erm.feasible and mrm.feasible
    assert pcsi.p_c <= sub.p_c_max + 1e-12 and pcsi.p_d <= sub.p_d_max + 1e-12
    # the guaranteed rate cannot beat the mean-value rate, which cannot beat
    # full knowledge (identical feasible sets, increasingly pessimistic gains)
    assert mrm.utility <= erm.utility + 1e-9
    assert erm.utility <= pcsi.utility + 1e-9
    # full-knowledge utility restates the two shared-rate terms minus solo
    shared = dd.rate_shared(pcsi.p_c, sub.g_c, pcsi.p_d, sub.h_d2d_to_cu, sub.noise) \
        + dd.rate_shared(pcsi.p_d, sub.g_d, pcsi.p_c, sub.h_cu_to_d2d, sub.noise)
    assert pcsi.utility == pytest.approx(shared - dd.rate_solo(sub.p_c_max, sub.g_c, sub.noise), abs=1e-10)
    sol, trace = dd.solve_power_mrm_trace(sub, fad, 0.1)
    assert sol.utility == pytest.approx(mrm.utility, abs=1e-12)
    assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))


def test_power_matches_grid_oracle():
    sub = canonical_subproblem()
    sol = dd.solve_power_pcsi(sub)
    grid = dd.oracle.grid_search_power(sub, None, 0.0,
                                       dd.oracle.PowerObjective.FullKnowledge, 400)
    assert grid.feasible
    assert sol.utility >= grid.value - 1e-6


def test_assignment_roundtrip():
    v = dd.Mat.from_array(np.array([[3.0, 1.0, -2.0],
                                    [0.5, 2.5, 1.0],
                                    [1.0, 1.0, 4.0]]))
    res = dd.pgd_assign(v, 1.0)
    b = np.asarray(res.b)
    assert b.min() >= -1e-12
    assert b.sum(axis=1).max() <= 1.0 + 1e-9
    trace = res.objective_trace
    assert all(b2 >= a2 - 1e-9 for a2, b2 in zip(trace, trace[1:]))
    hard = dd.discretize_max(res.b)
    h = np.asarray(hard)
    assert set(np.unique(h)) <= {0.0, 1.0}
    assert h.sum(axis=1).max() <= 1.0
    ex = dd.oracle.exhaustive_assignment(v, 1.0)
    best = dd.discretize_random(res.b, 32, v, 1.0, 99)
    assert dd.assignment_objective(best, v, 1.0) <= ex.objective + 1e-9
    proj = dd.project_column([0.5, 0.8])
    assert proj == pytest.approx([0.35, 0.65])


def test_pipelines_and_audit():
    inst = small_instance()
    cfg = dd.PipelineConfig()
    cfg.mode = dd.CsiMode.Erm
    cfg.epsilon = 0.1
    cfg.gamma = 1.0
    cfg.discretize_samples = 8
    part = dd.Partition.all_dl(inst.params.n_pairs)

    cent = dd.run_centralized_separate(inst, part, cfg)
    audit = dd.oracle.audit_allocation(inst, cent, cfg.mode, cfg.epsilon, False)
    assert audit.ok, audit.violations
    assert cent.total_rate > 0

    dec, log = dd.run_decentralized_separate(inst, part, cfg)
    assert log.rounds > 0 and log.total() == dec.messages_exchanged
    assert dd.oracle.audit_allocation(inst, dec, cfg.mode, cfg.epsilon, False).ok
    # same relaxed ascent on both sides, so the rates agree
    assert dec.total_rate == pytest.approx(cent.total_rate, abs=1e-9)

    joint = dd.run_centralized_joint(inst, cfg)
    ja = dd.oracle.audit_allocation(inst, joint, cfg.mode, cfg.epsilon, True)
    assert ja.ok, ja.violations

    base = dd.run_single_channel_baseline(inst, part, cfg)
    assert dd.oracle.audit_allocation(inst, base, cfg.mode, cfg.epsilon, False).ok
    assert base.iterations == 0


def test_power_tables_mask():
    inst = small_instance()
    tabs = dd.build_power_tables(inst, dd.Spectrum.Downlink, dd.CsiMode.Pcsi, 0.1,
                                 allowed=[True, False, True])
    u = np.asarray(tabs.utility)
    assert u.shape == (3, 3)
    assert np.all(u[:, 1] <= dd.UTILITY_FLOOR)


def test_experiment_driver():
    cfg = dd.parse_config("""
    {
      "geometry": {"cell_radius_m": 500, "d2d_radius_m": 5,
                   "pathloss_exponent": 2.0, "ref_gain": 1000.0},
      "params": {"n_channels_ul": 3, "n_channels_dl": 3, "n_pairs": 3,
                 "p_c_max_ul": 1.0, "p_c_max_dl": 10.0, "p_d_max": 0.5,
                 "noise": 1e-3, "eta_c_min_ul": 1.0, "eta_c_min_dl": 1.0,
                 "eta_d_min": 1.0},
      "fading": "exponential",
      "mode": "erm",
      "pipeline": "centralized_separate",
      "partition": "all_dl",
      "epsilon": 0.1,
      "gamma": 10.0,
      "realizations": 2,
      "base_seed": 5,
      "outage_samples": 200,
      "discretize_samples": 8
    }
    """)
    assert cfg.mode == dd.CsiMode.Erm
    rows = dd.run_experiment(cfg)
    assert len(rows) == 1
    assert rows[0].rate_mean > 0
    csv = dd.to_csv(rows)
    header = csv.splitlines()[0]
    assert header == ("sweep_value,rate_mean,rate_ci,fairness_mean,fairness_ci,"
                      "outage_mean,outage_ci,iters_mean,msgs_mean")
    m1 = dd.run_one(cfg, 0)
    m2 = dd.run_one(cfg, 0)
    assert m1.rate == m2.rate and m1.outage == m2.outage
    with pytest.raises(Exception):
        dd.parse_config('{"unknown_key": 1}')


def test_convergence_probe():
    trace = [-1.0 / (k + 1) for k in range(100)] + [0.0]
    rep = dd.oracle.convergence_probe(trace, 1e-12)
    assert rep.monotone
    assert rep.finite_convergence or rep.slope < -0.8

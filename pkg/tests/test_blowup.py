import math

import numpy as np
import pytest

from tricomi_lab import DomainError
from tricomi_lab.blowup import (
    BlowupVerdict,
    RiccatiProblem,
    VerdictKind,
    forcing_mass,
    functional_series,
    g1_lower_bound,
    matching_riccati,
    riccati_oracle,
    riccati_trace,
    sweep,
)
from tricomi_lab.exponents import ModelParams, blowup_parameters, p_critical
from tricomi_lab.solver import SolverConfig, Termination, run_model
from tricomi_lab.specfun import phi_speed


# ------------------------------------------------------------- functionals

def test_zero_field_series_vanish():
    params = ModelParams(1, 3, 2.0, M=1.0, amplitude=0.0)
    cfg = SolverConfig(params=params, sigma=0, t_max=2.0, cells=256, n_out=21)
    traj = run_model(cfg)
    series = functional_series(traj)
    assert np.all(series.G == 0.0)
    assert np.all(series.G1 == 0.0)
    assert np.all(series.denom > 0.0)  # depends only on the weight


def test_linear_run_G_is_affine():
    # integrating the equation kills the t^m Lap(u) term, so G'' = 0
    params = ModelParams(2, 3, 2.0, M=1.0, amplitude=1.0)
    cfg = SolverConfig(params=params, sigma=0, t_max=2.0, cells=1024, n_out=41)
    traj = run_model(cfg)
    series = functional_series(traj)
    model = series.G[0] + (series.G[1] - series.G[0]) / series.times[1] * series.times
    assert np.max(np.abs(series.G - model)) < 1e-6 * max(1.0, abs(series.G[0]))


def test_nonlinear_G_convex_increasing():
    params = ModelParams(1, 3, 1.5, M=1.0, amplitude=1.0)
    cfg = SolverConfig(params=params, sigma=1, t_max=5.0, cells=512, n_out=101)
    traj = run_model(cfg)
    series = functional_series(traj)
    d2 = np.diff(series.G, n=2)
    assert np.all(d2 > -1e-10)  # convex
    assert series.G[-1] > series.G[0]


def test_Gpp_equals_forcing_mass():
    params = ModelParams(1, 3, 1.5, M=1.0, amplitude=1.0)
    cfg = SolverConfig(params=params, sigma=1, t_max=5.0, cells=512, n_out=201)
    traj = run_model(cfg)
    series = functional_series(traj)
    mass = forcing_mass(traj)
    dt = series.times[1] - series.times[0]
    d2 = (series.G[2:] - 2 * series.G[1:-1] + series.G[:-2]) / dt**2
    rel = np.abs(d2 - mass[1:-1]) / np.abs(mass[1:-1])
    assert np.max(rel) < 0.02


def test_denominator_estimate_shape():
    # denom(t) <= C t^{-mp/4} (M + phi(t))^{(n-1)(p-1) - (n-1)p/2}
    m, n, p, M = 1, 3, 1.5, 1.0
    fitted = []
    for cells in (512, 1024):
        params = ModelParams(m, n, p, M=M, amplitude=0.0)
        cfg = SolverConfig(params=params, sigma=0, t_max=10.0, cells=cells, n_out=81)
        traj = run_model(cfg)
        series = functional_series(traj)
        keep = (series.times >= 2.0) & (series.times <= 10.0)
        t = series.times[keep]
        e = (n - 1) * (p - 1.0) - (n - 1) * p / 2.0
        bound_shape = t ** (-m * p / 4.0) * (M + phi_speed(m, t)) ** e
        ratio = series.denom[keep] / bound_shape
        assert np.all(np.isfinite(ratio))
        fitted.append(float(np.max(ratio)))
    assert abs(fitted[1] - fitted[0]) / fitted[1] < 0.10


# ------------------------------------------------------------- riccati

def test_riccati_textbook_example():
    prob = RiccatiProblem(
        C0=2.0, C1=1.0, R=1.0, alpha=0.0, q=0.0, p=2.0,
        G_a=2.0, Gp_a=0.0, horizon=100.0,
    )
    t_star = riccati_oracle(prob)
    assert t_star is not None and t_star < 5.0


def test_riccati_held_parameters_blow_up():
    # the m=1, n=3, p=1.5 exponents satisfy the comparison criteria
    bp = blowup_parameters(1, 3, 1.5)
    assert bp.riccati_criterion and bp.alpha_supercritical
    prob = matching_riccati(1, 3, 1.5, horizon=1e4)
    assert riccati_oracle(prob) is not None


def test_riccati_violated_parameters_survive_horizon():
    prob = matching_riccati(1, 3, 2.6, horizon=1e3)
    assert not prob.criteria_hold
    trace = riccati_trace(prob)
    assert trace.blowup_time is None
    # sub-polynomial tail: at most linear growth remains
    assert trace.growth_slope < 1.5


def test_riccati_iff_lattice():
    for m in range(5):
        for p in (1.2, 1.4, 1.8, 2.2, 2.6):
            prob = matching_riccati(m, 3, p, horizon=2e3)
            out = riccati_oracle(prob)
            assert (out is not None) == prob.criteria_hold, (m, p)


def test_riccati_monotone_in_constants():
    base = dict(R=1.0, alpha=2.0, q=1.0, p=2.0, horizon=200.0)
    times = {}
    for c0 in (0.5, 1.0, 2.0):
        for c1 in (0.5, 1.0, 2.0):
            times[(c0, c1)] = riccati_oracle(RiccatiProblem(C0=c0, C1=c1, **base))
    for c0a, c1a in times:
        for c0b, c1b in times:
            if c0b >= c0a and c1b >= c1a:
                ta, tb = times[(c0a, c1a)], times[(c0b, c1b)]
                assert tb is not None
                if ta is not None:
                    assert tb <= ta + 1e-6


def test_riccati_validation():
    with pytest.raises(DomainError):
        RiccatiProblem(C0=-1.0, C1=1.0, R=1.0, alpha=1.0, q=1.0, p=2.0)
    with pytest.raises(DomainError):
        RiccatiProblem(C0=1.0, C1=1.0, R=1.0, alpha=1.0, q=1.0, p=0.5)


# ------------------------------------------------------------- G1 floor

def test_g1_floor_on_blowup_run(blowup_traj_m1):
    t0, c_lower, holds = g1_lower_bound(blowup_traj_m1)
    assert holds and c_lower > 0.0
    assert 1.0 <= t0 <= 2.0


def test_g1_floor_wave_case():
    params = ModelParams(0, 3, 2.0, M=1.0, amplitude=1.0)
    cfg = SolverConfig(params=params, sigma=1, t_max=6.0, cells=512, n_out=101)
    traj = run_model(cfg)
    t0, c_lower, holds = g1_lower_bound(traj)
    assert holds and c_lower > 0.0


def test_g1_floor_rejects_zero_data():
    params = ModelParams(1, 3, 2.0, M=1.0, amplitude=0.0)
    cfg = SolverConfig(params=params, sigma=1, t_max=2.0, cells=256, n_out=11)
    traj = run_model(cfg)
    with pytest.raises(DomainError):
        g1_lower_bound(traj)


# ------------------------------------------------------------- sweeps

def test_sweep_dichotomy_m1():
    p_crit = p_critical(1, 3)
    table = sweep(1, 3, [1.3, 1.45, 1.6], [5.0], t_max=20.0, cells=384, n_out=81)
    for row, p in zip(table, [1.3, 1.45, 1.6]):
        assert p < p_crit
        assert row[0].kind is VerdictKind.BLEW_UP
        assert row[0].t_star is not None and row[0].t_star <= 20.0


def test_sweep_small_data_supercritical_survives():
    table = sweep(1, 3, [3.0], [1e-3], t_max=20.0, cells=384, n_out=81)
    v = table[0][0]
    assert v.kind is VerdictKind.SURVIVED
    assert v.decay_rate is not None and v.decay_rate < 0.0


def test_sweep_zero_amplitude_trivially_survives():
    table = sweep(1, 3, [2.0], [0.0], t_max=2.0, cells=256, n_out=11)
    assert table[0][0].kind is VerdictKind.SURVIVED


def test_sweep_consistency_no_small_global_cell_blows():
    # supercritical cells with small data never blow up; subcritical cells
    # that blew up did so below p_crit or at large amplitude
    p_crit = p_critical(1, 3)
    ps = [1.4, 3.0]
    amps = [1e-3, 5.0]
    table = sweep(1, 3, ps, amps, t_max=12.0, cells=384, n_out=61)
    for i, p in enumerate(ps):
        for j, amp in enumerate(amps):
            v = table[i][j]
            if v.kind is VerdictKind.BLEW_UP:
                assert p < p_crit or amp > 1.0
            if p > p_crit and amp <= 1e-3:
                assert v.kind is VerdictKind.SURVIVED


def test_sweep_requires_grids():
    with pytest.raises(DomainError):
        sweep(1, 3, [], [1.0], t_max=1.0)

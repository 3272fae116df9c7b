import math

import numpy as np
import pytest

from tricomi_lab import ConsistencyError, DomainError
from tricomi_lab.propagator import (
    decay_exponent,
    kummer_V1,
    mode_solution,
    mode_symbols,
    symbol_decay_profile,
)
from tricomi_lab.specfun import phi_speed

from _oracles import mode_ode_oracle


def test_wave_case_cos_sinc():
    om, t = 2.0, 1.3
    s = mode_solution(0, om, t)
    assert s.V1 == pytest.approx(math.cos(om * t), abs=1e-10)
    assert s.V2 == pytest.approx(math.sin(om * t) / om, abs=1e-10)
    assert s.dV1 == pytest.approx(-om * math.sin(om * t), abs=1e-10)
    assert s.dV2 == pytest.approx(math.cos(om * t), abs=1e-10)
    for om in (0.3, 5.0, 40.0):
        for t in (0.1, 2.0, 4.7):
            s = mode_solution(0, om, t)
            assert s.V1 == pytest.approx(math.cos(om * t), abs=1e-10)
            assert s.V2 == pytest.approx(math.sin(om * t) / om, abs=1e-10)


def test_initial_data_any_m():
    for m in range(0, 5):
        s = mode_solution(m, 3.7, 0.0)
        assert (s.V1, s.V2, s.dV1, s.dV2) == (1.0, 0.0, 0.0, 1.0)


def test_near_zero_matches_unit_data():
    # Bessel-form coefficients were fixed by the t -> 0 behavior; check
    # numerically just above the series switch.
    for m in (1, 2, 3):
        om = 3.0
        t = 1e-6
        s = mode_solution(m, om, t)
        assert s.V1 == pytest.approx(1.0, abs=1e-8)
        assert s.V2 == pytest.approx(t, rel=1e-8)
        assert abs(s.dV1) < 1e-8
        assert s.dV2 == pytest.approx(1.0, abs=1e-8)


def test_bessel_vs_ode_oracle_m2():
    om = 1.0
    ts = np.array([0.5, 1.0, 2.0])
    V1, V2, dV1, dV2 = mode_ode_oracle(2, om, ts)
    for i, t in enumerate(ts):
        s = mode_solution(2, om, float(t))
        assert abs(s.V1 - V1[i]) <= 1e-8 * (1 + abs(V1[i]))
        assert abs(s.V2 - V2[i]) <= 1e-8 * (1 + abs(V2[i]))
        assert abs(s.dV1 - dV1[i]) <= 1e-8 * (1 + abs(dV1[i]))
        assert abs(s.dV2 - dV2[i]) <= 1e-8 * (1 + abs(dV2[i]))


def test_bessel_vs_ode_oracle_spread():
    for m in (1, 3):
        for om in (0.5, 10.0):
            ts = np.array([0.7, 3.0])
            V1, V2, dV1, dV2 = mode_ode_oracle(m, om, ts)
            for i, t in enumerate(ts):
                s = mode_solution(m, om, float(t))
                assert abs(s.V1 - V1[i]) <= 1e-8 * (1 + abs(V1[i]))
                assert abs(s.V2 - V2[i]) <= 1e-8 * (1 + abs(V2[i]))


def test_wronskian_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m = int(rng.integers(0, 5))
        om = float(rng.uniform(0.1, 50.0))
        t = float(rng.uniform(0.0, 5.0))
        s = mode_solution(m, om, t)
        assert abs(s.wronskian - 1.0) < 1e-8


def test_scaling_covariance():
    # the symbols depend on (t, omega) only through phi(t) * omega
    for m in (0, 1, 2, 3):
        for lam in (2.0, 4.0):
            for om, t in ((1.3, 0.9), (4.0, 2.2)):
                a = mode_solution(m, lam * om, t)
                b = mode_solution(m, om, lam ** (2.0 / (m + 2)) * t)
                assert a.V1 == pytest.approx(b.V1, abs=1e-8)


def test_kummer_matches_bessel():
    for m in (1, 2, 3, 4):
        for om, t in ((1.0, 1.0), (0.5, 1.5), (2.0, 1.2), (7.0, 0.6)):
            if 2.0 * phi_speed(m, t) * om > 20.0:
                continue
            ref = mode_solution(m, om, t).V1
            assert kummer_V1(m, om, t) == pytest.approx(ref, abs=1e-8)


def test_kummer_wave_case():
    for om, t in ((1.0, 2.0), (3.0, 1.5)):
        assert kummer_V1(0, om, t) == pytest.approx(math.cos(om * t), abs=1e-8)


def test_kummer_at_zero_and_domain():
    for m in (0, 1, 4):
        assert kummer_V1(m, 2.0, 0.0) == 1.0
    with pytest.raises(DomainError):
        kummer_V1(2, 30.0, 2.0)  # |z| far beyond the series-safe region
    with pytest.raises(DomainError):
        kummer_V1(2, -1.0, 1.0)


def test_kummer_near_z_cap():
    # |z| just under the cap still agrees with the Bessel form
    m = 2
    om = 1.0
    t = (19.5 / om) ** 0.5  # z = 2 phi(t) om = om t^2 for m = 2
    assert 19.0 < 2 * phi_speed(m, t) * om <= 20.0
    ref = mode_solution(m, om, t).V1
    assert kummer_V1(m, om, t) == pytest.approx(ref, abs=1e-8)


def test_symbol_decay_profile_m0():
    grid = np.logspace(0.0, 2.0, 512)
    sup, samples = symbol_decay_profile(0, grid)
    assert decay_exponent(0) == 0.0
    assert sup <= 1.0 + 1e-12
    assert sup > 0.999


def test_symbol_decay_profile_m2_grid_stable():
    base = np.logspace(0.0, 2.0, 512)
    fine = np.logspace(0.0, 2.0, 2048)
    sup_b, _ = symbol_decay_profile(2, base)
    sup_f, _ = symbol_decay_profile(2, fine)
    assert math.isfinite(sup_b)
    assert abs(sup_f - sup_b) / sup_f < 0.05


def test_symbol_decay_profile_m1_bounded():
    grid = np.logspace(0.0, 3.0, 1024)
    sup, _ = symbol_decay_profile(1, grid)
    assert math.isfinite(sup)
    assert sup < 10.0


def test_symbol_decay_profile_domain():
    with pytest.raises(DomainError):
        symbol_decay_profile(2, np.array([0.5, 2.0]))


def test_dispersive_envelope_slope():
    # peaks of |V1(t)| for fixed omega decay like phi(t)^(-m/(2(m+2)))
    for m in (1, 2):
        om = 3.0
        ts = np.linspace(0.5, 12.0, 120_000)
        V1, _, _, _ = mode_symbols(m, om, ts)
        a = np.abs(V1)
        pk = (a[1:-1] > a[:-2]) & (a[1:-1] > a[2:])
        tpk = ts[1:-1][pk]
        vpk = a[1:-1][pk]
        keep = tpk > 1.0
        slope = np.polyfit(np.log(phi_speed(m, tpk[keep])), np.log(vpk[keep]), 1)[0]
        assert slope == pytest.approx(-decay_exponent(m), rel=0.05)


def test_mode_solution_domain():
    with pytest.raises(DomainError):
        mode_solution(2, 0.0, 1.0)
    with pytest.raises(DomainError):
        mode_solution(2, 1.0, -0.1)

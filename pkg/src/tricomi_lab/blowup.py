"""Blowup functionals, the Riccati comparison oracle, and verdict sweeps.

The blowup argument tracks two plane integrals of a solution,

    G(t)  = int u dx,
    G1(t) = int u psi dx,   psi(t, x) = l(t) phi(x),

with l the decaying solution of l'' = t^m l (``specfun.lambda_fn``) and
phi the exponential sphere weight (``specfun.sphere_weight``).  Testing
the equation against 1 gives G'' = int |u|^p dx, and Hoelder against psi
bounds that below by |G1|^p divided by

    denom(t) = ( int_{|x| <= M + phi(t)} psi^{p/(p-1)} dx )^{p-1},

which decays like t^{-mp/4} (M + phi(t))^{(n-1)(p-1) - (n-1)p/2}.  The
endgame is an ODE comparison: once G >= C0 (R+t)^alpha and
G'' >= C1 (R+t)^{-q} G^p with p > 1, alpha >= 1, (p-1) alpha >= q - 2,
the lifespan is finite.  ``riccati_oracle`` integrates exactly that ODE
seeded on the power-law lower bound and reports the (desk-scale) blowup
time, with a growth ceiling standing in for the true singularity.

Sweeps classify (p, amplitude) cells into blew-up / survived /
inconclusive from solver runs; every cell is independent and failures
never abort the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

from . import sinebasis
from .errors import DomainError
from .exponents import ModelParams, blowup_parameters
from .solver import SolverConfig, Termination, Trajectory, run_model
from .specfun import lambda_fn, log_lambda, log_sphere_weight, phi_speed, sphere_weight

__all__ = [
    "FunctionalSeries",
    "RiccatiProblem",
    "RiccatiTrace",
    "functional_series",
    "forcing_mass",
    "riccati_oracle",
    "riccati_trace",
    "matching_riccati",
    "g1_lower_bound",
    "VerdictKind",
    "BlowupVerdict",
    "sweep",
]

GROWTH_CEILING = 1e12  # stands in for the genuine singularity


@dataclass
class FunctionalSeries:
    times: np.ndarray
    G: np.ndarray
    G1: np.ndarray
    denom: np.ndarray


def functional_series(traj: Trajectory, params: ModelParams | None = None) -> FunctionalSeries:
    """G, G1 and the Hoelder denominator at every snapshot of a run.

    Quadrature reuses the solver's radial grid weights so the functional
    series and the fields share one discretization.
    """
    if len(traj.states) < 2:
        raise DomainError("functional_series needs at least two snapshots")
    params = params or traj.config.params
    m, n, p, M = params.m, params.n, params.p, params.M
    grid = traj.grid
    r = grid.r
    area = sinebasis.sphere_area(n)
    wq = sinebasis.radial_weights(r, n - 1) * area
    phi_w = np.asarray(sphere_weight(n, r))
    with np.errstate(divide="ignore"):
        log_r = np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), -np.inf)
        log_phi_w = np.asarray(log_sphere_weight(n, r))

    times = np.array([st.t for st in traj.states])
    G = np.empty_like(times)
    G1 = np.empty_like(times)
    denom = np.empty_like(times)
    pp = p / (p - 1.0)
    dr = grid.dr
    for i, st in enumerate(traj.states):
        G[i] = float(wq @ st.u)
        lam = lambda_fn(m, st.t)[0]
        G1[i] = lam * float(wq @ (phi_w * st.u))
        # log-space integral of phi^{p/(p-1)} r^{n-1} over the light cone
        reach = M + float(phi_speed(m, st.t))
        mask = r <= reach
        exponents = pp * log_phi_w[mask] + (n - 1) * log_r[mask]
        # trapezoid weights: half at both cut ends
        wt = np.full(mask.sum(), dr)
        wt[0] *= 0.5
        wt[-1] *= 0.5
        log_int = logsumexp(exponents, b=wt * area)
        log_lam = log_lambda(m, st.t) if st.t > 0 else 0.0
        denom[i] = math.exp(p * log_lam + (p - 1.0) * log_int)
    return FunctionalSeries(times=times, G=G, G1=G1, denom=denom)


def forcing_mass(traj: Trajectory, params: ModelParams | None = None) -> np.ndarray:
    """int |u|^p dx at every snapshot (the exact value of G'')."""
    params = params or traj.config.params
    wq = sinebasis.radial_weights(traj.grid.r, params.n - 1) * sinebasis.sphere_area(
        params.n
    )
    return np.array([float(wq @ np.abs(st.u) ** params.p) for st in traj.states])


@dataclass
class RiccatiProblem:
    """G'' = C1 (R+t)^{-q} G^p from G(a) = C0 (R+a)^alpha with the matching
    power-law slope (overridable through G_a / Gp_a)."""

    C0: float
    C1: float
    R: float
    alpha: float
    q: float
    p: float
    a: float = 0.0
    horizon: float = 1e3
    G_a: float | None = None
    Gp_a: float | None = None

    def __post_init__(self):
        if min(self.C0, self.C1, self.R) <= 0:
            raise DomainError("C0, C1, R must be positive")
        if not self.p > 1:
            raise DomainError("p must exceed 1")
        if self.G_a is None:
            self.G_a = self.C0 * (self.R + self.a) ** self.alpha
        if self.Gp_a is None:
            self.Gp_a = max(self.alpha, 0.0) * self.C0 * (self.R + self.a) ** (
                self.alpha - 1.0
            )
        if self.Gp_a < 0:
            raise DomainError("initial slope must be nonnegative")

    @property
    def criteria_hold(self) -> bool:
        return self.alpha >= 1.0 and (self.p - 1.0) * self.alpha >= self.q - 2.0


@dataclass
class RiccatiTrace:
    blowup_time: float | None
    t_end: float
    g_end: float
    growth_slope: float  # d log G / d log(R+t) fitted on the tail


def _integrate_riccati(prob: RiccatiProblem):
    def rhs(t, z):
        g = max(z[0], 0.0)
        return (z[1], prob.C1 * (prob.R + t) ** (-prob.q) * g**prob.p)

    def ceiling(t, z):
        return z[0] - GROWTH_CEILING

    ceiling.terminal = True
    ceiling.direction = 1.0

    with np.errstate(over="ignore", invalid="ignore"):
        sol = integrate.solve_ivp(
            rhs,
            (prob.a, prob.horizon),
            (prob.G_a, prob.Gp_a),
            method="RK45",
            rtol=1e-8,
            atol=1e-8,
            events=ceiling,
            dense_output=True,
        )
    return sol


def riccati_oracle(prob: RiccatiProblem) -> float | None:
    """Desk-scale lifespan of the comparison ODE: the time its solution
    crosses the growth ceiling, or None if it stays below until the
    horizon.  A failed step (overflow past the ceiling within one step)
    counts as blowup at the last finite time."""
    sol = _integrate_riccati(prob)
    if sol.t_events[0].size:
        return float(sol.t_events[0][0])
    if not sol.success:
        return float(sol.t[-1])
    return None


def riccati_trace(prob: RiccatiProblem) -> RiccatiTrace:
    """Like the oracle but also reports the tail growth exponent, so
    horizon-bounded observations record how fast G was still growing."""
    sol = _integrate_riccati(prob)
    if sol.t_events[0].size:
        t_b = float(sol.t_events[0][0])
        return RiccatiTrace(t_b, t_b, GROWTH_CEILING, math.inf)
    blow = None if sol.success else float(sol.t[-1])
    ts = sol.t[sol.t > max(prob.a, prob.horizon / 10.0)]
    gs = sol.y[0][sol.t > max(prob.a, prob.horizon / 10.0)]
    slope = 0.0
    if len(ts) > 3 and np.all(gs > 0):
        slope = float(np.polyfit(np.log(prob.R + ts), np.log(gs), 1)[0])
    return RiccatiTrace(blow, float(sol.t[-1]), float(sol.y[0][-1]), slope)


def matching_riccati(
    m: int,
    n: int,
    p: float,
    C0: float = 1.0,
    R: float = 1.0,
    a: float = 0.0,
    horizon: float = 1e3,
) -> RiccatiProblem:
    """Comparison problem with (alpha, q) matching the PDE parameters.

    C1 is raised to C0^{1-p} alpha (alpha - 1) when needed, the size at
    which the ODE actually sustains the seeded power law ((R+t)^alpha is a
    subsolution iff C1 C0^{p-1} >= alpha (alpha - 1) given the exponent
    criteria), so desk-scale horizons decide held cells quickly.
    """
    bp = blowup_parameters(m, n, p)
    c1 = max(1.0, 1.2 * bp.alpha * max(bp.alpha - 1.0, 0.0) * C0 ** (1.0 - p))
    return RiccatiProblem(
        C0=C0, C1=c1, R=R, alpha=bp.alpha, q=bp.q_riccati, p=p, a=a, horizon=horizon
    )


def g1_lower_bound(traj: Trajectory, params: ModelParams | None = None):
    """Weighted floor of the test-function integral on blowing-up runs.

    Returns (t0, c_lower, holds) with c_lower = inf over t in [t0, end]
    of G1(t) t^{m/2}; t0 is the first snapshot time >= 1 at which G1 still
    exceeds half its initial value.  Requires nonnegative data with some
    mass in u or u_t (the positivity hypothesis of the blowup theory).
    """
    params = params or traj.config.params
    first = traj.states[0]
    if np.any(first.u < -1e-14) or np.any(first.v < -1e-14):
        raise DomainError("g1_lower_bound requires nonnegative data")
    if float(np.max(first.u)) <= 0.0 and float(np.max(first.v)) <= 0.0:
        raise DomainError("g1_lower_bound requires nontrivial data")
    series = functional_series(traj, params)
    g1_0 = series.G1[0]
    eligible = (series.times >= 1.0) & (series.G1 >= 0.5 * g1_0)
    if not np.any(eligible):
        return math.inf, 0.0, False
    i0 = int(np.argmax(eligible))
    t0 = float(series.times[i0])
    weighted = series.G1[i0:] * series.times[i0:] ** (params.m / 2.0)
    c_lower = float(np.min(weighted))
    return t0, c_lower, c_lower > 0.0


class VerdictKind(Enum):
    BLEW_UP = "blewup"
    SURVIVED = "survived"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BlowupVerdict:
    kind: VerdictKind
    t_star: float | None
    decay_rate: float | None  # fitted d log sup / d log t on the tail
    sup_peak: float
    sup_final: float


def _verdict(traj: Trajectory) -> BlowupVerdict:
    sup = traj.diagnostics["sup_norm"]
    times = traj.diagnostics["t"]
    peak = float(np.max(sup)) if sup.size else 0.0
    final = float(sup[-1]) if sup.size else 0.0
    if traj.terminated is Termination.BLOWUP:
        return BlowupVerdict(VerdictKind.BLEW_UP, traj.t_star, None, peak, final)
    if traj.terminated is Termination.STEP_FAILURE:
        return BlowupVerdict(VerdictKind.INCONCLUSIVE, None, None, peak, final)
    # fit once the decay is established; late snapshots of badly decayed
    # fields carry grid-scale noise, so the whole window beats the tail
    window = times >= min(1.0, 0.5 * times[-1])
    rate = 0.0
    if np.count_nonzero(window) > 2 and np.all(sup[window] > 0):
        rate = float(np.polyfit(np.log(times[window]), np.log(sup[window]), 1)[0])
    return BlowupVerdict(VerdictKind.SURVIVED, None, rate, peak, final)


def sweep(
    m: int,
    n: int,
    p_grid,
    amplitude_grid,
    t_max: float,
    M: float = 1.0,
    cells: int = 512,
    n_out: int = 101,
) -> list[list[BlowupVerdict]]:
    """Verdict table over (p, amplitude) cells; row-major, cells independent.

    Solver failures inside a cell become INCONCLUSIVE verdicts; the sweep
    itself never aborts.
    """
    p_grid = list(p_grid)
    amplitude_grid = list(amplitude_grid)
    if not p_grid or not amplitude_grid:
        raise DomainError("sweep requires nonempty grids")
    table: list[list[BlowupVerdict]] = []
    for p in p_grid:
        row = []
        for amp in amplitude_grid:
            try:
                params = ModelParams(m, n, float(p), M=M, amplitude=float(amp))
                cfg = SolverConfig(
                    params=params, sigma=1, t_max=t_max, cells=cells, n_out=n_out
                )
                row.append(_verdict(run_model(cfg)))
            except (DomainError, FloatingPointError) as exc:  # pragma: no cover
                row.append(BlowupVerdict(VerdictKind.INCONCLUSIVE, None, None, 0.0, 0.0))
        table.append(row)
    return table

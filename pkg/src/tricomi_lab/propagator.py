"""Symbols of the linear solution operators for u_tt - t^m Lap(u) = 0.

On the Fourier side each frequency magnitude omega = |xi| evolves by the
mode ODE

    c''(t) + t^m omega^2 c(t) = 0,

and the propagator pair (V1, V2) consists of its solutions with data
(1, 0) and (0, 1).  With nu = 1/(m+2) and the cone radius
y = omega phi(t) = omega (2/(m+2)) t^{(m+2)/2}, the closed forms are

    V1(t, omega) = Gamma(1-nu) (omega/(m+2))^{ nu} sqrt(t) J_{-nu}(y)
    V2(t, omega) = Gamma(1+nu) (omega/(m+2))^{-nu} sqrt(t) J_{ nu}(y)
    d_t V1       = -Gamma(1-nu) (omega/(m+2))^{ nu} omega t^{(m+1)/2} J_{1-nu}(y)
    d_t V2       =  Gamma(1+nu) (omega/(m+2))^{-nu} omega t^{(m+1)/2} J_{nu-1}(y)

whose Wronskian V1 d_t V2 - V2 d_t V1 is identically 1 (the ODE has no
first-order term).  Both symbols depend on (t, omega) only through y, the
source of the scaling covariance V1(lam omega, t) = V1(omega, lam^{2/(m+2)} t).

An independent representation of V1 through the Kummer confluent
hypergeometric series,

    V1 = e^{-z/2} Phi(m/(2(m+2)), m/(m+2); z),   z = 2 i phi(t) omega,

is provided for cross-checking; the two parameters satisfy b = 2a, which
is exactly the condition making the combination real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError
from .specfun import bessel_J, phi_speed

__all__ = [
    "PropagatorSample",
    "mode_symbols",
    "mode_solution",
    "kummer_V1",
    "symbol_decay_profile",
    "decay_exponent",
    "v1_normalized",
]

_Y_SERIES = 1e-3  # below this cone phase the sqrt(t) J_nu form is 0/0-delicate
_KUMMER_ZMAX = 20.0  # alternating series loses digits beyond; Bessel path covers it


@dataclass(frozen=True)
class PropagatorSample:
    """Propagator symbol values at one (t, omega) point."""

    t: float
    omega: float
    V1: float
    V2: float
    dV1: float
    dV2: float

    @property
    def wronskian(self) -> float:
        return self.V1 * self.dV2 - self.V2 * self.dV1


def _series_symbols(m, omega, t, terms=8):
    """Taylor expansion of the mode ODE about t = 0.

    V1 = sum (-1)^k a_k t^{(m+2)k},  V2 = sum (-1)^k b_k t^{(m+2)k+1},
    with a_k, b_k fixed by c'' = -omega^2 t^m c.  Entire in t; used where
    omega phi(t) is tiny, so a handful of terms reaches round-off.
    """
    w = m + 2
    om2 = omega * omega
    V1 = np.ones_like(t)
    dV1 = np.zeros_like(t)
    V2 = t.copy()
    dV2 = np.ones_like(t)
    a = np.ones_like(t)
    b = np.ones_like(t)
    sign = 1.0
    for k in range(1, terms + 1):
        e = w * k
        a = a * om2 / (e * (e - 1.0))
        b = b * om2 / ((e + 1.0) * e)
        sign = -sign
        te = t ** (e - 1)
        V1 += sign * a * te * t
        dV1 += sign * a * e * te
        V2 += sign * b * te * t * t
        dV2 += sign * b * (e + 1.0) * te * t
    return V1, V2, dV1, dV2


def mode_symbols(m: int, omega, t):
    """Vectorized (V1, V2, dV1, dV2) for arrays of omega > 0 and t >= 0.

    Inputs broadcast against each other.  Small cone phases take the ODE
    Taylor series; the rest take the Bessel closed form.
    """
    omega = np.asarray(omega, dtype=float)
    t = np.asarray(t, dtype=float)
    omega, t = np.broadcast_arrays(omega, t)
    omega = omega.copy()
    t = t.copy()
    nu = 1.0 / (m + 2)
    y = omega * phi_speed(m, t)
    small = y < _Y_SERIES
    ts = np.where(small, t, 0.0)
    V1, V2, dV1, dV2 = _series_symbols(m, omega, ts)

    big = ~small
    if np.any(big):
        tb = np.where(big, t, 1.0)
        yb = np.where(big, y, 1.0)
        ob = np.where(big, omega, 1.0)
        A = math.gamma(1.0 - nu) * (ob / (m + 2)) ** nu
        B = math.gamma(1.0 + nu) * (ob / (m + 2)) ** (-nu)
        sq = np.sqrt(tb)
        tm = ob * tb ** ((m + 1) / 2.0)
        V1 = np.where(big, A * sq * bessel_J(-nu, yb), V1)
        V2 = np.where(big, B * sq * bessel_J(nu, yb), V2)
        dV1 = np.where(big, -A * tm * bessel_J(1.0 - nu, yb), dV1)
        dV2 = np.where(big, B * tm * bessel_J(nu - 1.0, yb), dV2)
    return V1, V2, dV1, dV2


def mode_solution(m: int, omega: float, t: float) -> PropagatorSample:
    """Propagator symbols at a single (t, omega), omega > 0."""
    if not omega > 0:
        raise DomainError(f"mode_solution requires omega > 0, got {omega}")
    if t < 0:
        raise DomainError(f"mode_solution requires t >= 0, got {t}")
    V1, V2, dV1, dV2 = mode_symbols(m, np.float64(omega), np.float64(t))
    return PropagatorSample(
        t=float(t), omega=float(omega),
        V1=float(V1), V2=float(V2), dV1=float(dV1), dV2=float(dV2),
    )


def kummer_V1(m: int, omega: float, t: float) -> float:
    """V1 through the confluent hypergeometric series (cross-check path).

    Evaluates e^{-z/2} Phi(a, 2a; z) at z = 2 i phi(t) omega with
    a = m/(2(m+2)), accumulating in extended precision; relative tail is
    pushed below 1e-16.  Restricted to |z| <= 20: the series alternates
    through magnitudes ~e^{|z|} and burns digits beyond that.

    For m = 0 the parameters degenerate (a = 0); the k = 0 Pochhammer
    ratio is then the limit value 1/2, which sums to cosh(z/2), the wave
    symbol cos(omega t).
    """
    if not omega > 0:
        raise DomainError(f"kummer_V1 requires omega > 0, got {omega}")
    if t < 0:
        raise DomainError(f"kummer_V1 requires t >= 0, got {t}")
    z = 2j * phi_speed(m, t) * omega
    if abs(z) > _KUMMER_ZMAX:
        raise DomainError(
            f"kummer_V1 restricted to |z| <= {_KUMMER_ZMAX}, got |z| = {abs(z):.3g}"
        )
    a = m / (2.0 * (m + 2))
    b = 2.0 * a
    zl = np.clongdouble(z)
    term = np.clongdouble(1.0)
    total = np.clongdouble(1.0)
    for k in range(400):
        ratio = 0.5 if (k == 0 and m == 0) else (a + k) / (b + k)
        term = term * ratio * zl / (k + 1.0)
        total = total + term
        if abs(term) <= 1e-17 * abs(total) and k > abs(z):
            break
    value = complex(np.exp(-zl / 2.0) * total)
    if abs(value.imag) >= 1e-8:
        raise ConsistencyError(
            f"kummer_V1 imaginary residue {value.imag:.3e} at m={m}, |z|={abs(z):.3g}"
        )
    return value.real


def decay_exponent(m: int) -> float:
    """High-frequency decay rate of V1: |V1| ~ (phi omega)^{-m/(2(m+2))}."""
    return m / (2.0 * (m + 2))


def v1_normalized(m: int, y) -> np.ndarray:
    """|V1| as a function of the cone phase y = phi(t) omega alone,
    times the compensating growth y^{m/(2(m+2))}."""
    y = np.asarray(y, dtype=float)
    nu = 1.0 / (m + 2)
    v1 = math.gamma(1.0 - nu) * (y / 2.0) ** nu * bessel_J(-nu, y)
    return np.abs(v1) * y ** decay_exponent(m)


def symbol_decay_profile(m: int, grid) -> tuple[float, np.ndarray]:
    """Sup over a grid of cone phases y >= 1 of |V1| y^{m/(2(m+2))}.

    The symbol estimates make this quantity bounded; the sup should be
    finite and stable under grid refinement.  Returns (sup, samples)
    where samples is a (len(grid), 2) array of (y, normalized value).
    """
    grid = np.asarray(grid, dtype=float)
    if np.any(grid < 1.0):
        raise DomainError("symbol_decay_profile requires grid values >= 1")
    vals = v1_normalized(m, grid)
    samples = np.column_stack([grid, vals])
    return float(np.max(vals)), samples

"""Dirichlet sine-basis tools on a radial box, n = 3.

A radial function u on the ball of radius R maps to w(r) = r u(r) on
[0, R] with w(0) = w(R) = 0, under which the three-dimensional radial
Laplacian becomes a plain second derivative.  Expanding w in
sin(kappa_k r), kappa_k = pi k / R, diagonalizes each linear evolution
mode by mode (c_k'' + t^m kappa_k^2 c_k = 0 -> propagator symbols), makes
homogeneous Sobolev norms diagonal multipliers kappa^s, and keeps the
frequency origin structurally absent (no zero mode, no |xi| -> 0
singularity even at negative orders).

Norm normalization: for radial u on R^3,

    ||u||_{L^2(R^3)}^2 = 4 pi int_0^R w^2 dr = 4 pi (R/2) sum_k b_k^2,

so ``hs_norm`` with s = 0 reproduces the plain L^2 norm exactly at the
discrete level (trapezoid quadrature = sine Parseval on this grid).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import fft as sp_fft
from scipy.integrate import cumulative_trapezoid

from .errors import DomainError
from .propagator import mode_symbols

__all__ = [
    "kappas",
    "sine_coeffs",
    "sine_synth",
    "hs_norm",
    "fractional_apply",
    "radial_weights",
    "sphere_area",
    "lq_spacetime",
    "evolve_linear",
    "duhamel",
    "u_from_w",
    "w_from_u",
]


def kappas(R: float, J: int) -> np.ndarray:
    """Dirichlet frequencies pi k / R, k = 1 .. J-1, on a J-cell grid."""
    return math.pi * np.arange(1, J) / R


def w_from_u(u: np.ndarray, r: np.ndarray) -> np.ndarray:
    """w = r u with the Dirichlet ends pinned to zero."""
    w = u * r
    w[..., 0] = 0.0
    w[..., -1] = 0.0
    return w


def u_from_w(w: np.ndarray, r: np.ndarray) -> np.ndarray:
    """u = w / r, with the r = 0 value filled by even quadratic extrapolation."""
    u = np.empty_like(w)
    u[..., 1:] = w[..., 1:] / r[1:]
    u[..., 0] = (4.0 * u[..., 1] - u[..., 2]) / 3.0
    return u


def sine_coeffs(w: np.ndarray) -> np.ndarray:
    """Sine coefficients b_k of w sampled on the full grid (..., J+1)."""
    J = w.shape[-1] - 1
    return sp_fft.dst(w[..., 1:-1], type=1, axis=-1) / J


def sine_synth(b: np.ndarray) -> np.ndarray:
    """Grid samples (..., J+1) from sine coefficients (..., J-1)."""
    J = b.shape[-1] + 1
    w_int = sp_fft.idst(b * J, type=1, axis=-1)
    shape = list(b.shape)
    shape[-1] = J + 1
    w = np.zeros(shape, dtype=b.dtype)
    w[..., 1:-1] = w_int
    return w


def hs_norm(u: np.ndarray, r: np.ndarray, s: float) -> float:
    """Homogeneous Sobolev norm ||u||_{H^s(R^3)} of radial u (multiplier
    kappa^s on the sine coefficients of w = r u)."""
    R = float(r[-1])
    b = sine_coeffs(w_from_u(np.array(u, dtype=float), r))
    kap = kappas(R, len(r) - 1)
    return math.sqrt(4.0 * math.pi * (R / 2.0) * float(np.sum((kap**s * b) ** 2)))


def fractional_apply(u_fields: np.ndarray, r: np.ndarray, order: float) -> np.ndarray:
    """Apply |D|^order to radial fields (..., J+1) via the sine multiplier."""
    R = float(r[-1])
    b = sine_coeffs(w_from_u(np.array(u_fields, dtype=float), r))
    kap = kappas(R, len(r) - 1)
    return u_from_w(sine_synth(b * kap**order), r)


def sphere_area(n: int) -> float:
    """|S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def radial_weights(r: np.ndarray, power: int) -> np.ndarray:
    """Trapezoid quadrature weights for int f(r) r^power dr on the grid."""
    dr = float(r[1] - r[0])
    w = np.full(r.shape, dr)
    w[0] = w[-1] = 0.5 * dr
    return w * r ** float(power)


def lq_spacetime(
    fields: np.ndarray,
    r: np.ndarray,
    times: np.ndarray,
    q: float,
    n_dim: int = 3,
) -> float:
    """(int int |u|^q |S^{n-1}| r^{n-1} dr dt)^{1/q} over the time window.

    `fields` has shape (nt, J+1); trapezoid in both directions.
    """
    if q < 1:
        raise DomainError(f"lq_spacetime requires q >= 1, got {q}")
    wr = radial_weights(r, n_dim - 1) * sphere_area(n_dim)
    space = np.abs(fields) ** q @ wr
    return float(np.trapezoid(space, times)) ** (1.0 / q)


def evolve_linear(
    m: int, r: np.ndarray, times: np.ndarray, f: np.ndarray, g: np.ndarray
) -> np.ndarray:
    """Free evolution fields u(t_i, r_j) for data (f, g) on the box.

    Each sine mode evolves by the propagator pair: c_k(t) = V1(t, kappa_k)
    b_f[k] + V2(t, kappa_k) b_g[k].  Returns shape (nt, J+1).
    """
    R = float(r[-1])
    J = len(r) - 1
    bf = sine_coeffs(w_from_u(np.array(f, dtype=float), r))
    bg = sine_coeffs(w_from_u(np.array(g, dtype=float), r))
    kap = kappas(R, J)
    V1, V2, _, _ = mode_symbols(m, kap[None, :], np.asarray(times, dtype=float)[:, None])
    modes = V1 * bf[None, :] + V2 * bg[None, :]
    return u_from_w(sine_synth(modes), r)


def duhamel(
    m: int, r: np.ndarray, times: np.ndarray, forcing: np.ndarray
) -> np.ndarray:
    """Zero-data solution of u_tt - t^m Lap(u) = F on the box.

    Mode-wise Duhamel with the unit-Wronskian propagator pair,

        c_k(t) = V2(t) int_0^t V1(s) Fhat_k(s) ds
               - V1(t) int_0^t V2(s) Fhat_k(s) ds,

    with cumulative trapezoid integrals over the supplied time grid.
    `forcing` has shape (nt, J+1); returns fields of the same shape.
    """
    times = np.asarray(times, dtype=float)
    R = float(r[-1])
    J = len(r) - 1
    Fhat = sine_coeffs(w_from_u(np.array(forcing, dtype=float), r))
    kap = kappas(R, J)
    V1, V2, _, _ = mode_symbols(m, kap[None, :], times[:, None])
    S1 = cumulative_trapezoid(V1 * Fhat, x=times, axis=0, initial=0.0)
    S2 = cumulative_trapezoid(V2 * Fhat, x=times, axis=0, initial=0.0)
    modes = V2 * S1 - V1 * S2
    return u_from_w(sine_synth(modes), r)

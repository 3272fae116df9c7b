"""Special functions for the degenerate wave operator's test machinery.

Contents
--------
* ``bessel_K`` / ``bessel_K_scaled``: the modified Bessel function of the
  second kind through its defining integral

      K_nu(x) = int_0^inf exp(-x cosh z) cosh(nu z) dz,

  evaluated after the substitution cosh z = 1 + v^2, which pulls out the
  exponential decay exactly:

      e^x K_nu(x) = 2 int_0^inf exp(-x v^2) cosh(nu acosh(1+v^2))
                    / sqrt(v^2 + 2) dv.

  The Gaussian-type integrand is smooth and positive for every x > 0, so a
  single adaptive quadrature covers all arguments (no asymptotic branch).
* ``bessel_J``: Bessel function of the first kind (mode ODE closed forms).
* ``bessel_I`` and ``sphere_weight``: phi(x) = int_{S^{n-1}} e^{x.omega} d
  omega = (2 pi)^{n/2} |x|^{-(n-2)/2} I_{(n-2)/2}(|x|), the exponentially
  growing spherical weight; it satisfies Lap(phi) = phi and
  phi ~ C_n |x|^{-(n-1)/2} e^{|x|}.
* ``lambda_fn``: the decaying solution of l'' - t^m l = 0 with l(0) = 1,
  l(inf) = 0, namely l(t) = C_m sqrt(t) K_nu(phi(t)) with nu = 1/(m+2),
  phi(t) = (2/(m+2)) t^{(m+2)/2} and C_m = 2 (m+2)^{-nu} / Gamma(nu).
  Near t = 0 the Frobenius series of the ODE is used instead (the K form
  is 0/0-delicate there); the slope at zero is
  l'(0) = -(m+2)^{-2 nu} Gamma(1-nu) / Gamma(1+nu).
* ``phi_speed``: the light-cone radius phi(t) above (compact data stays
  inside |x| <= M + phi(t)).

All functions are pure; nothing here holds state.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .errors import DomainError

__all__ = [
    "bessel_K",
    "bessel_K_scaled",
    "bessel_J",
    "bessel_I",
    "sphere_weight",
    "log_sphere_weight",
    "phi_speed",
    "lambda_fn",
    "lambda_constants",
    "log_lambda",
    "lambda_ratio",
]

_SERIES_Y_SWITCH = 0.7  # lambda switches from ODE series to the K form here


def _scaled_K_integrand(v, nu, x):
    w = 1.0 + v * v
    return 2.0 * np.exp(-x * v * v) * np.cosh(nu * np.arccosh(w)) / np.sqrt(w + 1.0)


def bessel_K_scaled(nu: float, x: float) -> float:
    """Exponentially scaled modified Bessel function e^x K_nu(x).

    Parameters
    ----------
    nu : float
        Order; accuracy is tuned for |nu| <= 5.
    x : float
        Argument, x > 0.

    Notes
    -----
    Adaptive quadrature of the substituted defining integral (module
    docstring); relative accuracy ~1e-12 across the full range.
    """
    if not x > 0:
        raise DomainError(f"bessel_K requires x > 0, got {x}")
    nu = abs(nu)  # the defining integral is even in nu
    # Integrand decays like exp(-x v^2) v^(2 nu - 1); pick a cutoff where
    # it is ~1e-30 relative to the peak.
    vmax = math.sqrt((75.0 + 25.0 * nu) / x)
    width = min(math.sqrt(1.0 / x), vmax)
    val, _ = integrate.quad(
        _scaled_K_integrand,
        0.0,
        vmax,
        args=(nu, x),
        epsabs=0.0,
        epsrel=1e-13,
        limit=300,
        points=[width, 5.0 * width] if 5.0 * width < vmax else None,
    )
    return val


def bessel_K(nu: float, x: float) -> float:
    """Modified Bessel function K_nu(x) for x > 0 (underflows to 0 for
    x beyond ~745; use ``bessel_K_scaled`` there)."""
    return math.exp(-x) * bessel_K_scaled(nu, x)


def bessel_J(nu: float, x) -> float:
    """Bessel function of the first kind J_nu(x), x >= 0.

    Thin wrapper over scipy's AMOS-backed implementation; kept as the
    package-wide entry point so tests can pin it against series and
    integral-representation oracles in one place.
    """
    return special.jv(nu, x)


def bessel_I(nu: float, x) -> np.ndarray | float:
    """Modified Bessel function I_nu(x) by its ascending series.

    All series terms are positive (no cancellation); adequate for the
    x <= ~600 range used here.  Vectorized in x.
    """
    x = np.asarray(x, dtype=float)
    half = x / 2.0
    term = half**nu / math.gamma(nu + 1.0)
    total = term.copy()
    xq = half * half
    for k in range(1, 1000):
        term = term * xq / (k * (k + nu))
        total += term
        if np.max(term) <= 1e-17 * np.max(total):
            break
    return total if total.shape else float(total)


def sphere_weight(n: int, r) -> np.ndarray | float:
    """Spherical exponential weight phi(x) = int_{S^{n-1}} e^{x.omega} d omega
    at |x| = r, via the closed form (2 pi)^{n/2} r^{-(n-2)/2} I_{(n-2)/2}(r).

    The I series is folded in so the expression stays smooth at r = 0,
    where the value is the sphere area |S^{n-1}| = 2 pi^{n/2}/Gamma(n/2).
    """
    if n < 2 or int(n) != n:
        raise DomainError(f"sphere_weight requires integer n >= 2, got {n}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("sphere_weight requires r >= 0")
    nu = (n - 2) / 2.0
    pref = (2.0 * math.pi) ** (n / 2.0) * 0.5**nu
    term = np.full(r.shape, 1.0 / math.gamma(nu + 1.0))
    total = term.copy()
    rq = r * r / 4.0
    for k in range(1, 2000):
        term = term * rq / (k * (k + nu))
        total += term
        if np.max(term) <= 1e-17 * np.max(total):
            break
    out = pref * total
    return out if out.shape else float(out)


def log_sphere_weight(n: int, r) -> np.ndarray | float:
    """log(sphere_weight); direct log is safe for r <= ~600."""
    return np.log(sphere_weight(n, r))


def phi_speed(m: int, t) -> np.ndarray | float:
    """Light-cone radius phi(t) = (2/(m+2)) t^{(m+2)/2}.

    This is the distance a wavefront travels from time 0 to t under the
    degenerate speed t^{m/2}; compactly supported data stays inside
    |x| <= M + phi(t).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("phi_speed requires t >= 0")
    out = 2.0 / (m + 2) * t ** ((m + 2) / 2.0)
    return out if out.shape else float(out)


def lambda_constants(m: int) -> tuple[float, float, float]:
    """(nu, C_m, l'(0)) for the decaying ODE solution of order m."""
    nu = 1.0 / (m + 2)
    c_m = 2.0 * (m + 2) ** (-nu) / math.gamma(nu)
    slope0 = -((m + 2) ** (-2.0 * nu)) * math.gamma(1.0 - nu) / math.gamma(1.0 + nu)
    return nu, c_m, slope0


def _lambda_series(m: int, t: float, terms: int = 60) -> tuple[float, float]:
    """Frobenius series of l'' = t^m l split into the even branch
    u1 = sum c_k t^{(m+2)k} and the odd branch u2 = sum d_k t^{1+(m+2)k};
    l = u1 + l'(0) u2.  Entire, but used only for small phi(t) where the
    two growing branches do not yet cancel."""
    _, _, slope0 = lambda_constants(m)
    w = m + 2
    u1 = 0.0
    du1 = 0.0
    c = 1.0
    for k in range(terms):
        e = w * k
        u1 += c * t**e
        if e >= 1:
            du1 += c * e * t ** (e - 1)
        nxt = w * (k + 1)
        c = c / (nxt * (nxt - 1))
        if c * t ** nxt < 1e-20:
            u1 += c * t**nxt
            du1 += c * nxt * t ** (nxt - 1)
            break
    u2 = 0.0
    du2 = 0.0
    d = 1.0
    for k in range(terms):
        e = 1 + w * k
        u2 += d * t**e
        du2 += d * e * t ** (e - 1)
        nxt = w * (k + 1)
        d = d / ((nxt + 1) * nxt)
        if d * t ** (1 + nxt) < 1e-20:
            break
    return u1 + slope0 * u2, du1 + slope0 * du2


def lambda_fn(m: int, t: float) -> tuple[float, float]:
    """Value and first derivative of the decaying solution of
    l'' - t^m l = 0, l(0) = 1, l(inf) = 0.

    For phi(t) below a small switch point the ODE's own power series is
    summed (exact initial data, no cancellation); beyond it the closed
    form C_m sqrt(t) K_nu(phi(t)) is used, with the derivative taken
    analytically through K_nu' = -(K_{nu-1} + K_{nu+1})/2.

    For m = 0 this is exactly exp(-t).
    """
    if t < 0:
        raise DomainError(f"lambda_fn requires t >= 0, got {t}")
    if t == 0.0:
        _, _, slope0 = lambda_constants(m)
        return 1.0, slope0
    nu, c_m, _ = lambda_constants(m)
    y = phi_speed(m, t)
    if y < _SERIES_Y_SWITCH:
        return _lambda_series(m, t)
    kt = bessel_K_scaled(nu, y)
    km = bessel_K_scaled(abs(nu - 1.0), y)
    kp = bessel_K_scaled(nu + 1.0, y)
    scale = math.exp(-y) if y < 700 else 0.0
    sq = math.sqrt(t)
    value = c_m * sq * kt * scale
    # l' = C_m [ K_nu(y)/(2 sqrt(t)) + sqrt(t) t^{m/2} K_nu'(y) ] with
    # K_nu' = -(K_{nu-1} + K_{nu+1})/2; the e^{-y} scale factors out.
    deriv = c_m * scale * (kt / (2.0 * sq) - sq * t ** (m / 2.0) * 0.5 * (km + kp))
    return value, deriv


def log_lambda(m: int, t: float) -> float:
    """log of the decaying solution, stable far beyond float underflow."""
    if not t > 0:
        raise DomainError("log_lambda requires t > 0")
    nu, c_m, _ = lambda_constants(m)
    y = phi_speed(m, t)
    if y < _SERIES_Y_SWITCH:
        value, _ = _lambda_series(m, t)
        return math.log(value)
    return math.log(c_m) + 0.5 * math.log(t) + math.log(bessel_K_scaled(nu, y)) - y


def lambda_ratio(m: int, t: float) -> float:
    """The weighted logarithmic slope |l'(t)| / (l(t) t^{m/2}).

    Computed from scaled Bessel ratios so it stays finite long after both
    l and l' underflow.  It is bounded below by a positive constant for
    t > 0 and bounded above for t >= 1, tending to 1 as t -> inf.
    """
    if not t > 0:
        raise DomainError("lambda_ratio requires t > 0")
    nu, _, _ = lambda_constants(m)
    y = phi_speed(m, t)
    if y < _SERIES_Y_SWITCH:
        value, deriv = _lambda_series(m, t)
        return -deriv / (value * t ** (m / 2.0))
    kt = bessel_K_scaled(nu, y)
    km = bessel_K_scaled(abs(nu - 1.0), y)
    kp = bessel_K_scaled(nu + 1.0, y)
    return (km + kp) / (2.0 * kt) - 0.5 * t ** (-(1.0 + m / 2.0))

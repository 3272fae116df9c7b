"""Exponent landscape of u_tt - t^m Lap(u) = |u|^p.

Closed forms and quadratic roots in the parameters (m, n, p):

* p_crit(m, n): positive root of
      ((m+2) n/2 - 1) p^2 + ((m+2)(1 - n/2) - 3) p - (m+2) = 0.
  Below it, positive compactly supported data forces finite-time blowup.
  For m = 0 it reduces to the Strauss exponent p1(n).
* p_conf(m, n) = (N+2)/(N-2) with N = 1 + (m+2) n/2 the homogeneous
  dimension; above it small data evolve globally.
* Fujita exponent p2(n) = 1 + 2/n (heat-equation benchmark).
* Index bookkeeping for the space-time estimates: q0, p0 (dual pair),
  the Sobolev index s = n/2 - 4/((m+2)(p-1)), the Lebesgue exponent
  r = ((m+2) n + 2)(p-1)/4, and gamma(q) = n/2 - ((m+2) n + 2)/(q (m+2)).

All operations are pure functions; rational identities can be re-checked
exactly with `fractions.Fraction` via the *_exact helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import ConsistencyError, DomainError

__all__ = [
    "ModelParams",
    "ExponentReport",
    "GlobalIndices",
    "BlowupParams",
    "YagdjianInterval",
    "Regime",
    "p_critical",
    "p_conformal",
    "homogeneous_dimension",
    "strauss_fujita",
    "exponent_table",
    "classify",
    "global_indices",
    "blowup_parameters",
    "yagdjian_interval",
    "yagdjian_constraints",
    "q0_exact",
    "p0_exact",
    "gamma_exact",
    "p_conformal_exact",
    "riccati_gap",
]


@dataclass(frozen=True)
class ModelParams:
    """One problem instance: degeneracy power m, dimension n, power p,
    data support radius M and data amplitude (the small parameter)."""

    m: int
    n: int
    p: float
    M: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise DomainError(f"m must be a nonnegative integer, got {self.m}")
        if self.n < 1 or int(self.n) != self.n:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if not self.p > 1:
            raise DomainError(f"p must exceed 1, got {self.p}")
        if not self.M > 0:
            raise DomainError(f"M must be positive, got {self.M}")
        if self.amplitude < 0:
            raise DomainError(f"amplitude must be >= 0, got {self.amplitude}")

    @property
    def theorem_dimension(self) -> bool:
        """The global/blowup theory assumes n >= 3; formulas allow less."""
        return self.n >= 3


@dataclass(frozen=True)
class ExponentReport:
    """All exponents and estimate indices attached to a pair (m, n)."""

    m: int
    n: int
    p_crit: float
    p_conf: float
    p_strauss: float  # nan when n < 2
    p_fujita: float
    N_hom: float
    q0: float
    p0: float
    p_frac_upper: float  # above it only integer p with +-u^p is covered


@dataclass(frozen=True)
class GlobalIndices:
    """Sobolev/Lebesgue indices of the small-data global theory at (m, n, p)."""

    s: float
    r: float
    gamma: float  # gamma evaluated at q = r; equals s identically
    s_admissible: bool  # s >= 1/(m+2)


@dataclass(frozen=True)
class BlowupParams:
    """Exponents feeding the Riccati comparison ODE G'' >= C (R+t)^-q G^p."""

    alpha: float
    q_riccati: float
    alpha_supercritical: bool  # alpha > 1: the twice-integrated lower bound grows
    riccati_criterion: bool  # (p-1) alpha >= q - 2: comparison forces finite life


@dataclass(frozen=True)
class YagdjianInterval:
    """Known n=3 global/blowup bounds for t^(2k) degeneracy and how the
    critical and conformal exponents sit strictly between/above them."""

    k: int
    lower: float
    upper: float
    p_crit_2k3: float
    p_conf_2k3: float


class Regime(Enum):
    BLOWUP = "blowup"
    GAP = "gap"
    GLOBAL_FRACTIONAL = "global_fractional"
    GLOBAL_INTEGER_ONLY = "global_integer_only"
    BELOW_THEOREM_DIMENSION = "below_theorem_dimension"


def _positive_quadratic_root(a: float, b: float, c: float) -> float:
    """Positive root of a p^2 + b p + c = 0 with a >= 0, c < 0.

    With b < 0 the expression -b + sqrt(disc) adds two positives, so the
    standard formula is already cancellation-free for the larger root.
    """
    if a == 0.0:
        root = -c / b if b != 0.0 else math.nan
        return root if root > 0 else math.inf
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return math.nan
    return (-b + math.sqrt(disc)) / (2.0 * a)


def _bisect_root(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    if flo * f(hi) > 0:
        raise ConsistencyError("bisection bracket does not straddle a root")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) == 0.0:
            return mid
        if flo * f(mid) < 0:
            hi = mid
        else:
            lo = mid
            flo = f(lo)
    return 0.5 * (lo + hi)


def crit_quadratic_coeffs(m: int, n: int) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of the defining quadratic for p_crit(m, n)."""
    a = (m + 2) * n / 2.0 - 1.0
    b = (m + 2) * (1.0 - n / 2.0) - 3.0
    c = -(m + 2.0)
    return a, b, c


def p_critical(m: int, n: int, cross_check: bool = True) -> float:
    """Critical power p_crit(m, n): blowup threshold of the problem.

    Closed quadratic formula, optionally cross-checked against a bisection
    on [1, 10] (the root always lies below the n = 2 Strauss value 3.57).
    Returns +inf when the quadratic has no positive root (m = 0, n = 1).
    """
    _check_mn(m, n)
    a, b, c = crit_quadratic_coeffs(m, n)
    root = _positive_quadratic_root(a, b, c)
    if cross_check and math.isfinite(root):
        f = lambda p: (a * p + b) * p + c
        ref = _bisect_root(f, 1.0, 10.0)
        if abs(root - ref) > 1e-9:
            raise ConsistencyError(
                f"p_crit({m},{n}): closed form {root} vs bisection {ref}"
            )
    return root


def homogeneous_dimension(m: int, n: int) -> float:
    """N = 1 + (m+2) n / 2, the scaling dimension of d_t^2 - t^m Lap."""
    return 1.0 + (m + 2) * n / 2.0


def p_conformal(m: int, n: int) -> float:
    """Conformal power (N+2)/(N-2) = ((m+2) n + 6)/((m+2) n - 2)."""
    _check_mn(m, n)
    return ((m + 2) * n + 6.0) / ((m + 2) * n - 2.0)


def p_conformal_exact(m: int, n: int) -> Fraction:
    return Fraction((m + 2) * n + 6, (m + 2) * n - 2)


def q0_exact(m: int, n: int) -> Fraction:
    """Diagonal space-time exponent q0 = 2((m+2)n + 2)/((m+2)n - 2)."""
    return Fraction(2 * ((m + 2) * n + 2), (m + 2) * n - 2)


def p0_exact(m: int, n: int) -> Fraction:
    """Dual exponent of q0: 1/p0 + 1/q0 = 1."""
    return Fraction(2 * ((m + 2) * n + 2), (m + 2) * n + 6)


def gamma_exact(m: int, n: int, q: Fraction) -> Fraction:
    """gamma(q) = n/2 - ((m+2) n + 2)/(q (m+2)), in exact arithmetic."""
    return Fraction(n, 2) - Fraction((m + 2) * n + 2, 1) / (q * (m + 2))


def strauss_fujita(n: int) -> tuple[float, float]:
    """Strauss root of (n-1)p^2 - (n+1)p - 2 = 0 and Fujita power 1 + 2/n.

    For n = 1 the Strauss quadratic degenerates and has no positive root;
    the first component is then nan (callers should use math.isnan).
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n}")
    p_fuj = 1.0 + 2.0 / n
    if n < 2:
        return math.nan, p_fuj
    p_str = _positive_quadratic_root(n - 1.0, -(n + 1.0), -2.0)
    return p_str, p_fuj


def p_frac_upper(m: int, n: int) -> float:
    """Upper endpoint of the |u|^p small-data global range.

    Equals ((m+2)(n-2) + 6)/((m+2)(n-2) - 2); beyond it the theory needs
    integer p with a signed nonlinearity +-u^p.  When (m+2)(n-2) <= 2
    (e.g. m = 0, n = 3) the denominator is <= 0 and the range is unbounded.
    """
    den = (m + 2) * (n - 2) - 2.0
    if den <= 0:
        return math.inf
    return ((m + 2) * (n - 2) + 6.0) / den


def exponent_table(m: int, n: int) -> ExponentReport:
    """Populate every exponent/index for a given (m, n)."""
    _check_mn(m, n)
    p_str, p_fuj = strauss_fujita(n)
    q0 = float(q0_exact(m, n)) if (m + 2) * n > 2 else math.nan
    p0 = float(p0_exact(m, n))
    return ExponentReport(
        m=m,
        n=n,
        p_crit=p_critical(m, n),
        p_conf=p_conformal(m, n),
        p_strauss=p_str,
        p_fujita=p_fuj,
        N_hom=homogeneous_dimension(m, n),
        q0=q0,
        p0=p0,
        p_frac_upper=p_frac_upper(m, n),
    )


def classify(params: ModelParams) -> Regime:
    """Place (m, n, p) in the blowup/global landscape.

    The gap [p_crit, p_conf] is closed on both ends (endpoint results are
    open).  Beyond the |u|^p range the regime keeps its name even for
    non-integer p; the name itself records that only integer p with a
    signed power is actually covered there.
    """
    if params.n < 3:
        return Regime.BELOW_THEOREM_DIMENSION
    table = exponent_table(params.m, params.n)
    p = params.p
    if p < table.p_crit:
        return Regime.BLOWUP
    if p <= table.p_conf:
        return Regime.GAP
    if p <= table.p_frac_upper:
        return Regime.GLOBAL_FRACTIONAL
    return Regime.GLOBAL_INTEGER_ONLY


def global_indices(m: int, n: int, p: float) -> GlobalIndices:
    """Data-regularity index s and solution exponent r for the global theory.

    s = n/2 - 4/((m+2)(p-1)),  r = ((m+2) n + 2)(p-1)/4, and gamma(r) = s.
    At p = p_conf these collapse to s = 1/(m+2), r = q0.
    """
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    s = n / 2.0 - 4.0 / ((m + 2) * (p - 1.0))
    r = ((m + 2) * n + 2.0) * (p - 1.0) / 4.0
    gamma = n / 2.0 - ((m + 2) * n + 2.0) / (r * (m + 2))
    return GlobalIndices(s=s, r=r, gamma=gamma, s_admissible=s >= 1.0 / (m + 2))


def blowup_parameters(m: int, n: int, p: float) -> BlowupParams:
    """Exponents alpha, q of the Riccati comparison argument at (m, n, p).

    alpha = p/2 + 2 + ((m+2)/2)(n - 1 - n p / 2) is the growth rate of the
    twice-integrated forcing lower bound; q = ((m+2)/2) n (p-1) is the decay
    rate of the Hoelder denominator.  The comparison lemma needs alpha >= 1
    and (p-1) alpha >= q - 2, which holds exactly for p <= p_crit.
    """
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    alpha = p / 2.0 + 2.0 + (m + 2) / 2.0 * (n - 1.0 - n * p / 2.0)
    q = (m + 2) / 2.0 * n * (p - 1.0)
    return BlowupParams(
        alpha=alpha,
        q_riccati=q,
        alpha_supercritical=alpha > 1.0,
        riccati_criterion=(p - 1.0) * alpha >= q - 2.0,
    )


def riccati_gap(m: int, n: int, p: float) -> float:
    """(p-1) alpha - (q - 2); positive below p_crit, zero at it."""
    bp = blowup_parameters(m, n, p)
    return (p - 1.0) * bp.alpha - (bp.q_riccati - 2.0)


def yagdjian_interval(k: int) -> YagdjianInterval:
    """n = 3, degeneracy t^(2k): the previously known global/blowup bounds
    (3k+4)/(3k+2) and (3k+5+sqrt(9k^2+42k+33))/(6k+4), together with
    p_crit(2k, 3) = (k+4+sqrt(25k^2+48k+32))/(6k+4) and
    p_conf(2k, 3) = (3k+6)/(3k+2).

    The strict chain lower < p_crit < upper < p_conf is verified and a
    violation raises ConsistencyError (it would mean a formula bug).
    """
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a nonnegative integer, got {k}")
    lower = (3.0 * k + 4.0) / (3.0 * k + 2.0)
    upper = (3.0 * k + 5.0 + math.sqrt(9.0 * k * k + 42.0 * k + 33.0)) / (6.0 * k + 4.0)
    p_crit = (k + 4.0 + math.sqrt(25.0 * k * k + 48.0 * k + 32.0)) / (6.0 * k + 4.0)
    p_conf = (3.0 * k + 6.0) / (3.0 * k + 2.0)
    interval = YagdjianInterval(
        k=k, lower=lower, upper=upper, p_crit_2k3=p_crit, p_conf_2k3=p_conf
    )
    if not (lower < p_crit < upper < p_conf):
        raise ConsistencyError(f"exponent chain ordering violated at k={k}: {interval}")
    # The closed form must agree with the direct quadratic root.
    direct = p_critical(2 * k, 3)
    if abs(direct - p_crit) > 1e-10:
        raise ConsistencyError(
            f"p_crit(2k,3) closed form {p_crit} vs quadratic root {direct}"
        )
    return interval


def yagdjian_constraints(k: float, p: float, n: int = 3) -> bool:
    """The historical sufficient conditions for global existence with
    degeneracy t^(2k), taken as given predicates (alpha = p - 1,
    beta = 2/(p-1) - n(k+1)/(p+1)):

        (n+1)(p-1)/(p+1) <= k/(k+1)
        (2/(p-1) - n(k+1)/(p+1)) p <= 1
        (p+1)/(p(p-1) n (k+1)) <= 1/(p+1) <= (k+2)/((n+1)(p-1)(k+1))
    """
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    c1 = (n + 1) * (p - 1) / (p + 1) <= k / (k + 1)
    c2 = (2 / (p - 1) - n * (k + 1) / (p + 1)) * p <= 1
    c3 = (p + 1) / (p * (p - 1) * n * (k + 1)) <= 1 / (p + 1) <= (k + 2) / (
        (n + 1) * (p - 1) * (k + 1)
    )
    return c1 and c2 and c3


def _check_mn(m: int, n: int) -> None:
    if m < 0 or int(m) != m:
        raise DomainError(f"m must be a nonnegative integer, got {m}")
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n}")

"""Numerical laboratory for the semilinear degenerate wave equation

    u_tt - t^m Lap(u) = sigma |u|^p,   u(0) = u0,  u_t(0) = u1,

whose propagation speed t^(m/2) vanishes on the initial surface.  The
package computes the critical/conformal exponent landscape, evaluates the
linear propagator through Bessel and Kummer representations, solves the
radial Cauchy problem at desk scale, measures the blowup functionals and
their Riccati comparison dynamics, checks space-time (Strichartz-type)
estimate ratios empirically, and runs the small-data Picard iteration.
"""

__version__ = "0.1.0"

from .errors import ConsistencyError, DomainError
from .exponents import (
    BlowupParams,
    ExponentReport,
    GlobalIndices,
    ModelParams,
    Regime,
    YagdjianInterval,
    blowup_parameters,
    classify,
    exponent_table,
    global_indices,
    strauss_fujita,
    yagdjian_interval,
)

__all__ = [
    "__version__",
    "ConsistencyError",
    "DomainError",
    "ModelParams",
    "ExponentReport",
    "GlobalIndices",
    "BlowupParams",
    "YagdjianInterval",
    "Regime",
    "exponent_table",
    "strauss_fujita",
    "classify",
    "global_indices",
    "blowup_parameters",
    "yagdjian_interval",
]

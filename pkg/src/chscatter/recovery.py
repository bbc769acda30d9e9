"""Recovery of the momentum profile from a Jost solution.

The monotone map H(y) = integral_{-inf}^{y} ds / f~(s)^2 (with f~ the Jost
solution rescaled to unit amplitude at the decaying left end) equals exp(x(y))
where x(y) inverts the forward coordinate change of the recovered profile.
Inverting H at exp(x) therefore lands on the Liouville image of x, and

    m(x) + 1 = exp(2x) * f~(H^{-1}(exp(x)))^4

reproduces the momentum exactly.  The left rescaling matters: the coordinate
map is anchored at -inf, so the amplitude extracted there -- not the unit
amplitude imposed at +inf -- must be divided out, otherwise the recovered
profile comes back translated by twice the log-amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError
from .jost import JostFunction, solve_jost_ode, solve_jost_volterra
from .liouville import MomentumProfile, PotentialProfile
from .numerics import (
    Grid1D,
    MonotoneMap,
    SampledFunction,
    cumulative_integral,
    interpolate_many,
    invert_monotone_many,
)

__all__ = ["RecoveryDiagnostics", "RecoveryResult", "compute_H", "recover_m", "invert_pipeline"]


@dataclass(frozen=True)
class RecoveryDiagnostics:
    """Numbers a caller needs to audit a recovery without recomputing it."""

    tail_correction: float
    min_f: float
    h_range: tuple[float, float]
    admissible_x: tuple[float, float]


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    m: MomentumProfile
    H: MonotoneMap
    diagnostics: RecoveryDiagnostics


def compute_H(f: JostFunction) -> MonotoneMap:
    """Cumulative integral of 1/f~^2 with the -inf tail restored analytically.

    Below the grid f~ ~ exp(-s/2), so the missing integral over (-inf, y_min]
    is exp(y_min); omitting it would shift every recovered profile along x by
    an O(exp(y_min)) artifact.  Strictly increasing since the integrand is
    positive.
    """
    g = f.grid
    fnorm = f.values / f.amp_minus
    tail = float(np.exp(g.x0))
    integrand = SampledFunction(g, 1.0 / (fnorm * fnorm))
    return MonotoneMap(cumulative_integral(integrand, tail))


def admissible_x_interval(H: MonotoneMap) -> tuple[float, float]:
    """x-interval on which exp(x) stays inside the numeric range of H."""
    return (float(np.log(H.values[0])), float(np.log(H.values[-1])))


def recover_m(f: JostFunction, xgrid: Grid1D) -> RecoveryResult:
    """Momentum on ``xgrid`` via m(x) = exp(2x) * f~(H^{-1}(exp(x)))^4 - 1.

    Every grid node must satisfy exp(x) within the closed range of H;
    otherwise a :class:`DomainError` names the admissible x-interval.  The
    fourth power is computed as (f~^2)^2 after interpolating f (interpolating
    the smoother f is better conditioned than interpolating f^4).
    """
    H = compute_H(f)
    lo, hi = admissible_x_interval(H)
    if xgrid.x0 < lo or xgrid.last > hi:
        raise DomainError(
            f"x-grid [{xgrid.x0!r}, {xgrid.last!r}] exceeds the admissible "
            f"interval [{lo!r}, {hi!r}] determined by the range of H"
        )
    x = xgrid.points()
    ystars = invert_monotone_many(H, np.exp(x))
    fv = interpolate_many(f.f, ystars) / f.amp_minus
    f2 = fv * fv
    m = np.exp(2.0 * x) * (f2 * f2) - 1.0
    if not np.all(m > -1.0):
        raise InvariantError(
            "recovered momentum violates m + 1 > 0; the Jost input is corrupted"
        )
    profile = MomentumProfile(SampledFunction(xgrid, m), validate=False)
    diags = RecoveryDiagnostics(
        tail_correction=float(np.exp(f.grid.x0)),
        min_f=float(np.min(f.values)),
        h_range=(float(H.values[0]), float(H.values[-1])),
        admissible_x=(lo, hi),
    )
    return RecoveryResult(m=profile, H=H, diagnostics=diags)


def invert_pipeline(
    Q: PotentialProfile,
    xgrid: Grid1D,
    method: str = "ode",
    tol: float = 1e-12,
    max_iter: int = 50,
) -> RecoveryResult:
    """Compose a Jost solve with the recovery: Q(y) -> m(x)."""
    if method == "ode":
        f = solve_jost_ode(Q)
    elif method == "volterra":
        f = solve_jost_volterra(Q, tol=tol, max_iter=max_iter)
    else:
        raise InvariantError(f"unknown solver method {method!r} (expected 'ode' or 'volterra')")
    return recover_m(f, xgrid)

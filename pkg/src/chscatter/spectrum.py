"""Bound states of -phi'' + Q phi = mu phi by two-sided shooting.

The operator has continuous spectrum below -1/4 and at most finitely many
eigenvalues in (-1/4, 0).  Trial energies are scanned on that interval; at
each trial the decaying solutions are marched from both ends to the matching
node and their Wronskian evaluated there.  Eigenvalues are Wronskian zeros,
bracketed by sign changes and refined by bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvariantError
from .jost import midpoint_values
from .liouville import PotentialProfile

__all__ = ["EigenvalueReport", "find_eigenvalues", "matching_wronskian"]


@dataclass(frozen=True, eq=False)
class EigenvalueReport:
    """Eigenvalues mu of the Schroedinger problem and their images lambda = -1/4 - mu."""

    mu_values: np.ndarray
    lambda_values: np.ndarray
    discarded_trials: int
    scan_points: int

    def __post_init__(self):
        if len(self.mu_values) != len(self.lambda_values):
            raise InvariantError("mu and lambda lists must have equal length")


def _match_index(Q: PotentialProfile) -> int:
    """Node nearest y = 0, or the middle node when 0 lies outside the grid."""
    g = Q.grid
    if g.x0 <= 0.0 <= g.last:
        return int(round(-g.x0 / g.dx))
    return g.n // 2


def matching_wronskian(Q: PotentialProfile, mu: float, i_match: int | None = None) -> float:
    """Scale-normalised Wronskian of the two decaying shooting solutions at the match node.

    Zero exactly when the decaying solutions from both ends are proportional,
    i.e. when mu is an eigenvalue.  The normalisation by the solution
    magnitudes keeps the value comparable across trial energies; signs are
    preserved, so sign changes bracket eigenvalues.
    """
    if not (-0.25 < mu < 0.0):
        raise InvariantError(f"trial energy must lie in (-1/4, 0), got {mu}")
    g = Q.grid
    im = _match_index(Q) if i_match is None else i_match
    kappa = float(np.sqrt(-mu))
    coef = Q.values - mu
    coef_mid = midpoint_values(Q.values) - mu
    fl, gl = _kernels.rk4_second_order_forward(coef, coef_mid, g.dx, 1.0, kappa, im)
    fr, gr = _kernels.rk4_second_order_backward_to(coef, coef_mid, g.dx, 1.0, -kappa, im)
    w = fl * gr - gl * fr
    scale = (abs(fl) + abs(gl)) * (abs(fr) + abs(gr))
    return float(w / scale) if scale > 0.0 else float("nan")


def find_eigenvalues(
    Q: PotentialProfile, tol: float = 1e-9, scan_points: int = 200
) -> EigenvalueReport:
    """Locate all Wronskian zeros on (-1/4, 0) to within ``tol`` in mu.

    A ``scan_points``-point energy scan brackets sign changes (dense enough to
    separate the bound states of the shallow wells in scope; near-threshold
    states closer than the scan spacing are an accepted limitation, which is
    why the scan density is part of the report).  Trials with non-finite
    Wronskian are discarded and counted.
    """
    if tol <= 0.0:
        raise InvariantError(f"tolerance must be positive, got {tol}")
    im = _match_index(Q)
    width = 0.25 / scan_points
    mus = -0.25 + (np.arange(scan_points) + 0.5) * width
    ws = np.array([matching_wronskian(Q, float(mu), im) for mu in mus])
    finite = np.isfinite(ws)
    discarded = int(np.count_nonzero(~finite))
    mus, ws = mus[finite], ws[finite]

    roots = []
    for k in range(len(mus) - 1):
        if ws[k] == 0.0:
            roots.append(float(mus[k]))
            continue
        if np.sign(ws[k]) * np.sign(ws[k + 1]) < 0.0:
            lo, hi = float(mus[k]), float(mus[k + 1])
            wlo = float(ws[k])
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                wmid = matching_wronskian(Q, mid, im)
                if wmid == 0.0:
                    lo = hi = mid
                    break
                if np.sign(wmid) == np.sign(wlo):
                    lo, wlo = mid, wmid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    if len(ws) and ws[-1] == 0.0:
        roots.append(float(mus[-1]))

    mu_arr = np.array(sorted(roots), dtype=np.float64)
    return EigenvalueReport(
        mu_values=mu_arr,
        lambda_values=-0.25 - mu_arr,
        discarded_trials=discarded,
        scan_points=scan_points,
    )

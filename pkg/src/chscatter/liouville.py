"""Forward transform from a momentum profile m(x) to a Schroedinger potential Q(y).

The coordinate change y(x) = x + integral_{-inf}^{x} [sqrt(m+1) - 1] straightens
the weighted eigenvalue problem into Schroedinger form; the potential is
assembled from q(y) = m(x(y)) + 1 and its first two y-derivatives.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .errors import DomainError, InvariantError
from .numerics import (
    Grid1D,
    MonotoneMap,
    SampledFunction,
    cumulative_integral,
    derivative,
    interpolate_many,
    invert_monotone_many,
)

__all__ = [
    "MomentumProfile",
    "PotentialProfile",
    "forward_coordinate",
    "compute_potential",
    "MOMENTUM_DECAY_TOL",
    "POTENTIAL_DECAY_TOL",
]

#: Default boundary-decay tolerance for momentum profiles.
MOMENTUM_DECAY_TOL = 1e-10

#: Default boundary-decay tolerance for potentials.  Looser than the momentum
#: tolerance because the second finite difference in the potential assembly has
#: a roundoff floor of order eps/dy^2 at the grid ends, and truncating the
#: solver domain at |Q| ~ 1e-6 perturbs the Jost solution by the same order,
#: well inside every accuracy budget used here.
POTENTIAL_DECAY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class MomentumProfile:
    """Sampled momentum m(x) with m + 1 > 0 and decayed tails.

    ``validate=False`` skips the boundary-decay check (used for synthetic
    profiles and for recovered profiles whose grid is clipped before the tails
    die out); m + 1 > 0 is always enforced.
    """

    m: SampledFunction
    decay_tol: float = MOMENTUM_DECAY_TOL
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        v = self.m.values
        if not np.all(v > -1.0):
            raise InvariantError(
                f"momentum must satisfy m + 1 > 0 everywhere (min m = {v.min()!r})"
            )
        if validate:
            if abs(v[0]) > self.decay_tol or abs(v[-1]) > self.decay_tol:
                raise InvariantError(
                    "momentum must decay at the grid ends: "
                    f"|m| at boundaries is ({abs(v[0]):.3e}, {abs(v[-1]):.3e}), "
                    f"tolerance {self.decay_tol:.3e}"
                )

    @property
    def grid(self) -> Grid1D:
        return self.m.grid

    @property
    def values(self) -> np.ndarray:
        return self.m.values


@dataclass(frozen=True, eq=False)
class PotentialProfile:
    """Sampled Schroedinger potential Q(y) with decayed tails."""

    Q: SampledFunction
    decay_tol: float = POTENTIAL_DECAY_TOL
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        v = self.Q.values
        if validate:
            if abs(v[0]) > self.decay_tol or abs(v[-1]) > self.decay_tol:
                raise InvariantError(
                    "potential must decay at the grid ends: "
                    f"|Q| at boundaries is ({abs(v[0]):.3e}, {abs(v[-1]):.3e}), "
                    f"tolerance {self.decay_tol:.3e}"
                )

    @property
    def grid(self) -> Grid1D:
        return self.Q.grid

    @property
    def values(self) -> np.ndarray:
        return self.Q.values


def forward_coordinate(profile: MomentumProfile) -> MonotoneMap:
    """Coordinate map y(x) sampled on the x-grid of the profile.

    y[i] = x_i + running trapezoid integral of sqrt(m+1) - 1, anchored so that
    y = x at the left end (the neglected tail is bounded by the decay
    tolerance times the domain length).  Strictly increasing because
    sqrt(m+1) > 0.
    """
    v = profile.values
    if not np.all(v > -1.0):
        raise InvariantError("momentum must satisfy m + 1 > 0 everywhere")
    integrand = SampledFunction(profile.grid, np.sqrt(v + 1.0) - 1.0)
    stretch = cumulative_integral(integrand, 0.0)
    y = profile.grid.points() + stretch.values
    if not np.all(np.diff(y) > 0.0):
        raise InvariantError(
            "coordinate map is not strictly increasing "
            "(momentum too close to m + 1 = 0, or corrupted data)"
        )
    return MonotoneMap(SampledFunction(profile.grid, y))


def _resample_on_y(
    profile: MomentumProfile, ymap: MonotoneMap, ygrid: Grid1D
) -> np.ndarray:
    ylo, yhi = ymap.values[0], ymap.values[-1]
    if ygrid.x0 < ylo - 1e-12 * max(1.0, abs(ylo)) or ygrid.last > yhi + 1e-12 * max(
        1.0, abs(yhi)
    ):
        raise DomainError(
            f"y-grid [{ygrid.x0!r}, {ygrid.last!r}] exceeds the image "
            f"[{ylo!r}, {yhi!r}] of the x-domain"
        )
    targets = np.clip(ygrid.points(), ylo, yhi)
    xstars = invert_monotone_many(ymap, targets)
    return interpolate_many(profile.m, xstars)


def compute_potential(
    profile: MomentumProfile,
    ygrid: Grid1D,
    differentiate_in_x: bool = False,
    decay_tol: float = POTENTIAL_DECAY_TOL,
    validate: bool = True,
) -> PotentialProfile:
    """Potential Q(y) = 1/(4q) + q_yy/(4q) - 3 q_y^2/(16 q^2) - 1/4 on ``ygrid``.

    q(y) = m(x(y)) + 1 is resampled onto the uniform y-grid by inverting the
    coordinate map node by node, and differentiated there.  The resampling
    interpolates m rather than q so that a vanishing momentum yields exactly
    Q = 0.  ``differentiate_in_x=True`` switches to the chain-rule route
    (derivatives taken on the x-grid, then mapped), kept as a cross-check.
    """
    ymap = forward_coordinate(profile)
    m_on_y = _resample_on_y(profile, ymap, ygrid)
    q = 1.0 + m_on_y
    if not differentiate_in_x:
        msf = SampledFunction(ygrid, m_on_y)
        q_y = derivative(msf, 1).values
        q_yy = derivative(msf, 2).values
    else:
        # d/dy = q^{-1/2} d/dx, so q_y = m_x / sqrt(q), q_yy = m_xx/q - m_x^2/(2 q^2)
        m_x = derivative(profile.m, 1)
        m_xx = derivative(profile.m, 2)
        targets = np.clip(ygrid.points(), ymap.values[0], ymap.values[-1])
        xstars = invert_monotone_many(ymap, targets)
        mx = interpolate_many(m_x, xstars)
        mxx = interpolate_many(m_xx, xstars)
        q_y = mx / np.sqrt(q)
        q_yy = mxx / q - mx * mx / (2.0 * q * q)
    Qv = 0.25 / q - 0.25 + q_yy / (4.0 * q) - 3.0 * q_y * q_y / (16.0 * q * q)
    return PotentialProfile(
        SampledFunction(ygrid, Qv), decay_tol=decay_tol, validate=validate
    )

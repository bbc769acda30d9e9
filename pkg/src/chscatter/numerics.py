"""Grid, quadrature, differentiation, interpolation and monotone-inversion primitives.

Everything operates on uniform grids and 64-bit floats.  All functions are pure:
they never mutate their inputs, so concurrent read-only use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, InvariantError

__all__ = [
    "Grid1D",
    "SampledFunction",
    "MonotoneMap",
    "cumulative_integral",
    "derivative",
    "interpolate",
    "interpolate_many",
    "invert_monotone",
    "invert_monotone_many",
]


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid x_i = x0 + i*dx for i = 0..n-1.

    Points are always produced from this closed formula, never by repeated
    addition, so there is no cumulative drift on long grids.
    """

    x0: float
    dx: float
    n: int

    def __post_init__(self):
        if not (self.dx > 0.0 and np.isfinite(self.dx)):
            raise InvariantError(f"grid spacing must be positive and finite, got dx={self.dx}")
        if self.n < 2:
            raise InvariantError(f"grid needs at least 2 points, got n={self.n}")

    @classmethod
    def from_bounds(cls, lo: float, hi: float, dx: float) -> "Grid1D":
        """Grid starting at ``lo`` whose last point is the closest multiple of dx to ``hi``."""
        if not hi > lo:
            raise InvariantError(f"grid bounds must be ordered, got [{lo}, {hi}]")
        n = int(round((hi - lo) / dx)) + 1
        return cls(float(lo), float(dx), max(n, 2))

    @property
    def last(self) -> float:
        return self.x0 + (self.n - 1) * self.dx

    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def point(self, i: int) -> float:
        return self.x0 + i * self.dx


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Finite real samples on a :class:`Grid1D`."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.shape[0] != self.grid.n:
            raise InvariantError(
                f"values must be a 1-d array of length {self.grid.n}, got shape {v.shape}"
            )
        if not np.isfinite(v).all():
            raise InvariantError("values must be finite (found NaN or infinity)")
        object.__setattr__(self, "values", v)

    def x(self) -> np.ndarray:
        return self.grid.points()


@dataclass(frozen=True, eq=False)
class MonotoneMap:
    """A strictly increasing sampled map, invertible by :func:`invert_monotone`."""

    base: SampledFunction

    def __post_init__(self):
        if not np.all(np.diff(self.base.values) > 0.0):
            raise InvariantError("map values must be strictly increasing")

    @property
    def grid(self) -> Grid1D:
        return self.base.grid

    @property
    def values(self) -> np.ndarray:
        return self.base.values


def cumulative_integral(f: SampledFunction, initial: float = 0.0) -> SampledFunction:
    """Running trapezoid integral of ``f`` with value ``initial`` at the first node.

    F[0] = initial and F[i] = F[i-1] + dx*(f[i-1]+f[i])/2, accumulated
    sequentially so the result matches the recurrence bit for bit.
    """
    v = f.values
    inc = 0.5 * f.grid.dx * (v[1:] + v[:-1])
    out = np.cumsum(np.concatenate(([float(initial)], inc)))
    return SampledFunction(f.grid, out)


# One-sided stencils of 4th order, stored as integer numerators over 12*dx or
# 12*dx**2.  Interior stencils are written out inline with a grouping that
# cancels exactly on constant inputs.
_D1_EDGE0 = np.array([-25.0, 48.0, -36.0, 16.0, -3.0])
_D1_EDGE1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0])
_D2_EDGE0 = np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0])
_D2_EDGE1 = np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0])


def derivative(f: SampledFunction, order: int) -> SampledFunction:
    """4th-order finite-difference derivative (order 1 or 2) on the same grid.

    Central stencils in the interior; one-sided stencils of the same order at
    the two boundary nodes on each side.
    """
    v = f.values
    n = f.grid.n
    dx = f.grid.dx
    out = np.empty_like(v)
    if order == 1:
        if n < 5:
            raise InvariantError(f"first derivative needs at least 5 grid points, got {n}")
        out[2:-2] = (8.0 * (v[3:-1] - v[1:-3]) - (v[4:] - v[:-4])) / (12.0 * dx)
        out[0] = _D1_EDGE0 @ v[:5] / (12.0 * dx)
        out[1] = _D1_EDGE1 @ v[:5] / (12.0 * dx)
        out[-1] = -(_D1_EDGE0 @ v[-1:-6:-1]) / (12.0 * dx)
        out[-2] = -(_D1_EDGE1 @ v[-1:-6:-1]) / (12.0 * dx)
    elif order == 2:
        if n < 6:
            raise InvariantError(f"second derivative needs at least 6 grid points, got {n}")
        dx2 = dx * dx
        out[2:-2] = (16.0 * (v[1:-3] + v[3:-1]) - (v[:-4] + v[4:]) - 30.0 * v[2:-2]) / (12.0 * dx2)
        out[0] = _D2_EDGE0 @ v[:6] / (12.0 * dx2)
        out[1] = _D2_EDGE1 @ v[:6] / (12.0 * dx2)
        out[-1] = _D2_EDGE0 @ v[-1:-7:-1] / (12.0 * dx2)
        out[-2] = _D2_EDGE1 @ v[-1:-7:-1] / (12.0 * dx2)
    else:
        raise InvariantError(f"derivative order must be 1 or 2, got {order}")
    return SampledFunction(f.grid, out)


def _cubic_weights(u: np.ndarray) -> tuple[np.ndarray, ...]:
    """Lagrange weights of the cubic through local nodes 0..3, evaluated at u."""
    a, b, c = u - 1.0, u - 2.0, u - 3.0
    return (
        -(a * b * c) / 6.0,
        (u * b * c) / 2.0,
        -(u * a * c) / 2.0,
        (u * a * b) / 6.0,
    )


def _cubic_weight_derivs(u: np.ndarray) -> tuple[np.ndarray, ...]:
    a, b, c = u - 1.0, u - 2.0, u - 3.0
    return (
        -(b * c + a * c + a * b) / 6.0,
        (b * c + u * c + u * b) / 2.0,
        -(a * c + u * c + u * a) / 2.0,
        (a * b + u * b + u * a) / 6.0,
    )


def _stencil_base(s: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cell index and 4-point stencil base for fractional positions s."""
    j = np.clip(np.floor(s).astype(np.int64), 0, n - 2)
    b = np.clip(j - 1, 0, n - 4)
    return j, b


def interpolate_many(f: SampledFunction, xs: np.ndarray) -> np.ndarray:
    """Local cubic (4-point Lagrange) interpolation at each query point.

    Exact on cubics sampled on the grid; exact at grid nodes.  Raises
    :class:`DomainError` if any query lies outside the grid.
    """
    xs = np.asarray(xs, dtype=np.float64)
    g = f.grid
    s = (xs - g.x0) / g.dx
    slack = 1e-9
    bad = (s < -slack) | (s > g.n - 1 + slack)
    if np.any(bad):
        x_bad = float(np.atleast_1d(xs)[np.atleast_1d(bad)][0])
        raise DomainError(
            f"interpolation query x={x_bad!r} outside grid [{g.x0!r}, {g.last!r}]"
        )
    s = np.clip(s, 0.0, g.n - 1)
    _, b = _stencil_base(s, g.n)
    u = s - b
    v = f.values
    w0, w1, w2, w3 = _cubic_weights(u)
    return w0 * v[b] + w1 * v[b + 1] + w2 * v[b + 2] + w3 * v[b + 3]


def interpolate(f: SampledFunction, x: float) -> float:
    """Scalar convenience wrapper around :func:`interpolate_many`."""
    return float(interpolate_many(f, np.array([x]))[0])


def invert_monotone_many(
    m: MonotoneMap,
    targets: np.ndarray,
    rtol: float = 1e-12,
    max_iter: int = 30,
) -> np.ndarray:
    """Solve interpolate(m, x) = target for each target.

    Binary search brackets the grid cell, then safeguarded Newton iterations on
    the local cubic refine the root.  The returned points satisfy
    ``|interpolate(m, x) - target| <= rtol * max(1, |target|)``.
    """
    t = np.asarray(targets, dtype=np.float64)
    v = m.values
    g = m.grid
    n = g.n
    if np.any(t < v[0]) or np.any(t > v[-1]):
        bad = t[(t < v[0]) | (t > v[-1])][0]
        raise DomainError(
            f"inversion target {bad!r} outside map range [{v[0]!r}, {v[-1]!r}]"
        )
    j = np.clip(np.searchsorted(v, t, side="right") - 1, 0, n - 2)
    b = np.clip(j - 1, 0, n - 4)
    vs = v[b[:, None] + np.arange(4)]  # stencil values, shape (N, 4)

    lo = (j - b).astype(np.float64)
    hi = lo + 1.0
    u = lo + (t - v[j]) / (v[j + 1] - v[j])

    def _eval(u):
        w0, w1, w2, w3 = _cubic_weights(u)
        p = w0 * vs[:, 0] + w1 * vs[:, 1] + w2 * vs[:, 2] + w3 * vs[:, 3]
        d0, d1, d2, d3 = _cubic_weight_derivs(u)
        dp = d0 * vs[:, 0] + d1 * vs[:, 1] + d2 * vs[:, 2] + d3 * vs[:, 3]
        return p - t, dp

    p, dp = _eval(u)
    for _ in range(max_iter):
        newton = u - p / np.where(np.abs(dp) > 0.0, dp, 1.0)
        # accept Newton on the closed bracket (roots can sit exactly on an
        # endpoint when a target equals a node value); otherwise bisect
        inside = (newton >= lo) & (newton <= hi) & (np.abs(dp) > 0.0)
        u_new = np.where(inside, newton, 0.5 * (lo + hi))
        p_new, dp = _eval(u_new)
        # keep the bracket sign-consistent: P(lo) <= 0 <= P(hi)
        neg = p_new <= 0.0
        lo = np.where(neg, u_new, lo)
        hi = np.where(neg, hi, u_new)
        u, p = u_new, p_new

    tol = rtol * np.maximum(1.0, np.abs(t))
    if np.any(np.abs(p) > tol):
        worst = float(np.max(np.abs(p) / tol))
        raise ConvergenceError(
            f"monotone inversion failed to meet tolerance (worst residual {worst:.3g}x tol)",
            residual=worst,
        )
    return g.x0 + (b + u) * g.dx


def invert_monotone(m: MonotoneMap, target: float, rtol: float = 1e-12) -> float:
    """Scalar convenience wrapper around :func:`invert_monotone_many`."""
    return float(invert_monotone_many(m, np.array([target]), rtol=rtol)[0])

"""Shared builders for the test suite."""

import numpy as np
import pytest

from chscatter import (
    Grid1D,
    MomentumProfile,
    PotentialProfile,
    SampledFunction,
    SolitaryWaveSpec,
    compute_potential,
    forward_coordinate,
    solitary_potential,
)

REFERENCE_SPEED = 8.0 / 3.0


def zero_potential(ymin=-20.0, ymax=20.0, dy=1e-3):
    g = Grid1D.from_bounds(ymin, ymax, dy)
    return PotentialProfile(SampledFunction(g, np.zeros(g.n)))


def example_potential(ymin=-40.0, ymax=40.0, dy=1e-3, c=REFERENCE_SPEED, y0=0.0):
    g = Grid1D.from_bounds(ymin, ymax, dy)
    spec = SolitaryWaveSpec(c=c, y0=y0)
    return PotentialProfile(SampledFunction(g, solitary_potential(spec, g.points())))


def gaussian_momentum(a=0.5, b=0.0, w=1.0, xmin=-25.0, xmax=25.0, dx=1e-3):
    g = Grid1D.from_bounds(xmin, xmax, dx)
    x = g.points()
    return MomentumProfile(SampledFunction(g, a * np.exp(-((x - b) ** 2) / w)))


def forward_chain(m0: MomentumProfile, dy: float):
    """Forward transform of a momentum profile on the full image of its x-domain."""
    ymap = forward_coordinate(m0)
    n = int(np.floor((ymap.values[-1] - ymap.values[0]) / dy)) + 1
    ygrid = Grid1D(float(ymap.values[0]), dy, n)
    return compute_potential(m0, ygrid)


@pytest.fixture
def example_jost_pair():
    """ODE and integral-equation Jost solutions of the reference potential."""
    from chscatter import solve_jost_ode, solve_jost_volterra

    Q = example_potential()
    return Q, solve_jost_ode(Q), solve_jost_volterra(Q)

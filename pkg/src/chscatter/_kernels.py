"""Sequential marching kernels, JIT-compiled with numba.

These loops are inherently order-dependent (each node depends on the previous
one), so they cannot be vectorised with numpy.  They are compiled once and
cached on disk; no fastmath is enabled, so results are deterministic IEEE-754.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def rk4_second_order_backward(coef, coef_mid, dy, f_end, fp_end):
    """March f'' = coef(y) * f from the last node down to the first.

    coef holds the coefficient at the nodes, coef_mid at the cell midpoints
    (coef_mid[i] belongs to the cell between nodes i and i+1).  Classic 4-stage
    Runge-Kutta with step -dy.  Returns (f, fp) sampled at every node.
    """
    n = coef.shape[0]
    f = np.empty(n)
    fp = np.empty(n)
    f[n - 1] = f_end
    fp[n - 1] = fp_end
    h = -dy
    for i in range(n - 2, -1, -1):
        a1 = coef[i + 1]
        am = coef_mid[i]
        a4 = coef[i]
        y1 = f[i + 1]
        y2 = fp[i + 1]
        k1f = y2
        k1g = a1 * y1
        k2f = y2 + 0.5 * h * k1g
        k2g = am * (y1 + 0.5 * h * k1f)
        k3f = y2 + 0.5 * h * k2g
        k3g = am * (y1 + 0.5 * h * k2f)
        k4f = y2 + h * k3g
        k4g = a4 * (y1 + h * k3f)
        f[i] = y1 + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        fp[i] = y2 + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
    return f, fp


@njit(cache=True)
def rk4_second_order_forward(coef, coef_mid, dy, f0, fp0, i_stop):
    """March f'' = coef(y) * f from node 0 up to node i_stop (inclusive).

    Rescales the state whenever it exceeds 1e150 to avoid overflow; only the
    direction of the state vector matters to the callers.
    """
    f, fp = f0, fp0
    h = dy
    for i in range(i_stop):
        a1 = coef[i]
        am = coef_mid[i]
        a4 = coef[i + 1]
        k1f = fp
        k1g = a1 * f
        k2f = fp + 0.5 * h * k1g
        k2g = am * (f + 0.5 * h * k1f)
        k3f = fp + 0.5 * h * k2g
        k3g = am * (f + 0.5 * h * k2f)
        k4f = fp + h * k3g
        k4g = a4 * (f + h * k3f)
        f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        fp = fp + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        if abs(f) > 1e150 or abs(fp) > 1e150:
            f *= 1e-150
            fp *= 1e-150
    return f, fp


@njit(cache=True)
def rk4_second_order_backward_to(coef, coef_mid, dy, f_end, fp_end, i_stop):
    """Backward variant of :func:`rk4_second_order_forward`, stops at i_stop."""
    n = coef.shape[0]
    f, fp = f_end, fp_end
    h = -dy
    for i in range(n - 2, i_stop - 1, -1):
        a1 = coef[i + 1]
        am = coef_mid[i]
        a4 = coef[i]
        k1f = fp
        k1g = a1 * f
        k2f = fp + 0.5 * h * k1g
        k2g = am * (f + 0.5 * h * k1f)
        k3f = fp + 0.5 * h * k2g
        k3g = am * (f + 0.5 * h * k2f)
        k4f = fp + h * k3g
        k4g = a4 * (f + h * k3f)
        f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        fp = fp + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
        if abs(f) > 1e150 or abs(fp) > 1e150:
            f *= 1e-150
            fp *= 1e-150
    return f, fp


@njit(cache=True)
def volterra_backward_sweep(q, y, dy):
    """One backward sweep of the one-sided integral equation for the Jost function.

    Solves f(y_i) = exp(-y_i/2) + trapz_{[y_i, y_max]} K(y_i, s) q(s) f(s) ds with
    kernel K(y, s) = exp((s-y)/2) - exp((y-s)/2).  The kernel is split into the
    two exponential moments

        SP(y) = integral of exp(+s/2) q f   over [y, y_max]
        SM(y) = integral of exp(-s/2) q f   over [y, y_max]

    which stay bounded by exp(|y|/2) * sup|q f|; the naive kernel would square
    that range.  K vanishes at s = y, so the diagonal trapezoid contribution
    cancels identically and each node is explicit in the already-computed nodes
    above it: the sweep solves the discretised system exactly in one pass.
    """
    n = q.shape[0]
    f = np.empty(n)
    f[n - 1] = np.exp(-0.5 * y[n - 1])
    h_next = np.exp(0.5 * y[n - 1]) * q[n - 1] * f[n - 1]
    p_next = np.exp(-0.5 * y[n - 1]) * q[n - 1] * f[n - 1]
    sp = 0.0
    sm = 0.0
    half = 0.5 * dy
    for i in range(n - 2, -1, -1):
        ep = np.exp(-0.5 * y[i])
        em = np.exp(0.5 * y[i])
        fi = ep * (1.0 + sp + half * h_next) - em * (sm + half * p_next)
        f[i] = fi
        h_i = em * q[i] * fi
        p_i = ep * q[i] * fi
        sp += half * (h_i + h_next)
        sm += half * (p_i + p_next)
        h_next = h_i
        p_next = p_i
    return f


@njit(cache=True)
def helmholtz_convolution(m, dx):
    """u(x) = (1/2) * integral exp(-|x-s|) m(s) ds by two damped one-sided sweeps.

    Each sweep carries the exponentially weighted running integral in damped
    form (multiplying by exp(-dx) per step), so every stored quantity stays on
    the scale of sup|m| regardless of the domain width.  Tails beyond the grid
    are dropped.
    """
    n = m.shape[0]
    r = np.exp(-dx)
    half = 0.5 * dx
    z = np.empty(n)
    w = np.empty(n)
    z[0] = 0.0
    for i in range(1, n):
        z[i] = r * z[i - 1] + half * (r * m[i - 1] + m[i])
    w[n - 1] = 0.0
    for i in range(n - 2, -1, -1):
        w[i] = r * w[i + 1] + half * (r * m[i + 1] + m[i])
    return 0.5 * (z + w)

"""Vectorized numpy kernels.

All field arrays are ``(N, M)`` float64 with index order ``[i, j] = [space, time]``.
Nonlinearity values arrive precomputed (``s = S(u)``, ``sp = S'(u)``) so any
callable nonlinearity works here.
"""
import numpy as np


def thomas(lower, diag, upper, rhs):
    """Solve a tridiagonal system; ``lower[0]`` and ``upper[-1]`` are ignored."""
    n = rhs.shape[0]
    c = np.empty(n)
    d = np.empty(n)
    c[0] = upper[0] / diag[0]
    d[0] = rhs[0] / diag[0]
    for k in range(1, n):
        m = diag[k] - lower[k] * c[k - 1]
        c[k] = upper[k] / m
        d[k] = (rhs[k] - lower[k] * d[k - 1]) / m
    x = np.empty(n)
    x[-1] = d[-1]
    for k in range(n - 2, -1, -1):
        x[k] = d[k] - c[k] * x[k + 1]
    return x


def residual(u, F, s, a, h, tau):
    """Residual table, zero outside ``i in [1, N-2], j in [0, M-2]``."""
    K = np.zeros_like(u)
    c = u[1:-1, :-1]
    K[1:-1, :-1] = (
        (u[1:-1, 1:] - c) / tau
        - (u[:-2, :-1] - 2.0 * c + u[2:, :-1]) / h**2
        - a * s[1:-1, :-1]
        - F[1:-1, :-1]
    )
    return K


def _reg_differences(u):
    c = u[1:-1, 1:-1]
    dt = u[1:-1, 2:] - c
    dx = u[2:, 1:-1] - c
    dtt = u[1:-1, :-2] - 2.0 * c + u[1:-1, 2:]
    dxx = u[:-2, 1:-1] - 2.0 * c + u[2:, 1:-1]
    return c, dt, dx, dtt, dxx


def objective(u, w, F, s, a, beta, h, tau):
    N, M = u.shape
    K = residual(u, F, s, a, h, tau)
    c, dt, dx, dtt, dxx = _reg_differences(u)
    reg = (
        np.sum(c * c)
        + np.sum(dt * dt) / tau**2
        + np.sum(dx * dx) / h**2
        + np.sum(dtt * dtt) / tau**4
        + np.sum(dxx * dxx) / h**4
    )
    return (np.sum(w * K * K) + beta * reg) / (N * M)


def value_and_gradient(u, w, F, s, sp, a, beta, h, tau, free):
    """Objective value and its gradient, zeroed where ``free`` is False."""
    N, M = u.shape
    scale = 1.0 / (N * M)
    K = residual(u, F, s, a, h, tau)
    R = w * K
    value = np.sum(R * K)

    g = np.zeros_like(u)
    # adjoint of the residual stencil
    Rt = R / tau
    g[:, 1:] += Rt[:, :-1]
    g -= Rt
    Rh = R / h**2
    g[:-1, :] -= Rh[1:, :]
    g[1:, :] -= Rh[:-1, :]
    g += 2.0 * Rh
    g -= a * sp * R
    g *= 2.0

    c, dt, dx, dtt, dxx = _reg_differences(u)
    reg = (
        np.sum(c * c)
        + np.sum(dt * dt) / tau**2
        + np.sum(dx * dx) / h**2
        + np.sum(dtt * dtt) / tau**4
        + np.sum(dxx * dxx) / h**4
    )
    gr = np.zeros_like(u)
    gr[1:-1, 1:-1] += c
    t1 = dt / tau**2
    gr[1:-1, 2:] += t1
    gr[1:-1, 1:-1] -= t1
    x1 = dx / h**2
    gr[2:, 1:-1] += x1
    gr[1:-1, 1:-1] -= x1
    t2 = dtt / tau**4
    gr[1:-1, :-2] += t2
    gr[1:-1, 1:-1] -= 2.0 * t2
    gr[1:-1, 2:] += t2
    x2 = dxx / h**4
    gr[:-2, 1:-1] += x2
    gr[1:-1, 1:-1] -= 2.0 * x2
    gr[2:, 1:-1] += x2

    g += 2.0 * beta * gr
    g *= scale
    g[~free] = 0.0
    return (value + beta * reg) * scale, g

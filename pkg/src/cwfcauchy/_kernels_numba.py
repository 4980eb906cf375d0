"""Loop kernels compiled with numba; same contracts as ``_kernels_numpy``.

The nonlinearity is selected by integer code (see ``model.CODE_*``), so only
catalog nonlinearities run here.
"""
import math

import numpy as np
from numba import njit

from . import _kernels_numpy

thomas = njit(cache=True)(_kernels_numpy.thomas)


@njit(cache=True, inline="always")
def _s(code, v):
    if code == 1:
        sv = math.sin(v)
        return sv * sv
    if code == 2:
        return math.exp(0.4 * v)
    return 0.0


@njit(cache=True, inline="always")
def _sp(code, v):
    if code == 1:
        return math.sin(2.0 * v)
    if code == 2:
        return 0.4 * math.exp(0.4 * v)
    return 0.0


@njit(cache=True)
def residual(u, F, code, a, h, tau):
    N, M = u.shape
    K = np.zeros_like(u)
    ih2 = 1.0 / (h * h)
    itau = 1.0 / tau
    for i in range(1, N - 1):
        for j in range(M - 1):
            c = u[i, j]
            K[i, j] = ((u[i, j + 1] - c) * itau
                       - (u[i - 1, j] - 2.0 * c + u[i + 1, j]) * ih2
                       - a * _s(code, c) - F[i, j])
    return K


@njit(cache=True)
def _reg_value(u, h, tau):
    N, M = u.shape
    it2 = 1.0 / (tau * tau)
    ih2 = 1.0 / (h * h)
    reg = 0.0
    for i in range(1, N - 1):
        for j in range(1, M - 1):
            c = u[i, j]
            dt = u[i, j + 1] - c
            dx = u[i + 1, j] - c
            dtt = u[i, j - 1] - 2.0 * c + u[i, j + 1]
            dxx = u[i - 1, j] - 2.0 * c + u[i + 1, j]
            reg += (c * c + dt * dt * it2 + dx * dx * ih2
                    + dtt * dtt * it2 * it2 + dxx * dxx * ih2 * ih2)
    return reg


@njit(cache=True)
def objective(u, w, F, code, a, beta, h, tau):
    N, M = u.shape
    K = residual(u, F, code, a, h, tau)
    acc = 0.0
    for i in range(1, N - 1):
        for j in range(M - 1):
            acc += w[i, j] * K[i, j] * K[i, j]
    return (acc + beta * _reg_value(u, h, tau)) / (N * M)


@njit(cache=True)
def value_and_gradient(u, w, F, code, a, beta, h, tau, free):
    N, M = u.shape
    itau = 1.0 / tau
    ih2 = 1.0 / (h * h)
    it2 = itau * itau
    g = np.zeros_like(u)
    acc = 0.0
    for i in range(1, N - 1):
        for j in range(M - 1):
            c = u[i, j]
            k = ((u[i, j + 1] - c) * itau
                 - (u[i - 1, j] - 2.0 * c + u[i + 1, j]) * ih2
                 - a * _s(code, c) - F[i, j])
            r = w[i, j] * k
            acc += r * k
            r2 = 2.0 * r
            g[i, j + 1] += r2 * itau
            g[i, j] += r2 * (2.0 * ih2 - itau - a * _sp(code, c))
            g[i - 1, j] -= r2 * ih2
            g[i + 1, j] -= r2 * ih2
    reg = 0.0
    b2 = 2.0 * beta
    for i in range(1, N - 1):
        for j in range(1, M - 1):
            c = u[i, j]
            dt = u[i, j + 1] - c
            dx = u[i + 1, j] - c
            dtt = u[i, j - 1] - 2.0 * c + u[i, j + 1]
            dxx = u[i - 1, j] - 2.0 * c + u[i + 1, j]
            reg += (c * c + dt * dt * it2 + dx * dx * ih2
                    + dtt * dtt * it2 * it2 + dxx * dxx * ih2 * ih2)
            t1 = b2 * dt * it2
            x1 = b2 * dx * ih2
            t2 = b2 * dtt * it2 * it2
            x2 = b2 * dxx * ih2 * ih2
            g[i, j] += b2 * c - t1 - x1 - 2.0 * t2 - 2.0 * x2
            g[i, j + 1] += t1 + t2
            g[i + 1, j] += x1 + x2
            g[i, j - 1] += t2
            g[i - 1, j] += x2
    scale = 1.0 / (N * M)
    for i in range(N):
        for j in range(M):
            if free[i, j]:
                g[i, j] *= scale
            else:
                g[i, j] = 0.0
    return (acc + beta * reg) * scale, g

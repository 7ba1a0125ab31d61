"""Numba-compiled variants of the hot kernels.

Same contracts as :mod:`pbdonations.kernels._numpy`; see there for the table
semantics.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def subset_tables(costs, types, sats):
    m = costs.shape[0]
    t = types.shape[1]
    n = sats.shape[0]
    size = 1 << m
    cost = np.zeros(size, dtype=np.int64)
    tcnt = np.zeros((size, t), dtype=np.int64)
    addu = np.zeros((size, n), dtype=np.int64)
    maxu = np.zeros((size, n), dtype=np.int64)
    for s in range(1, size):
        j = 0
        while not (s >> j) & 1:
            j += 1
        p = s & (s - 1)  # s without its lowest set bit
        cost[s] = cost[p] + costs[j]
        for z in range(t):
            tcnt[s, z] = tcnt[p, z] + types[j, z]
        for i in range(n):
            addu[s, i] = addu[p, i] + sats[i, j]
            v = sats[i, j]
            pv = maxu[p, i]
            maxu[s, i] = pv if pv >= v else v
    return cost, tcnt, addu, maxu


@njit(cache=True)
def dp_fill(costs, gains, types, budget, base):
    m = costs.shape[0]
    t = types.shape[1]
    ntau = 1
    for _ in range(t):
        ntau *= base
    out = np.full((m + 1, budget + 1, ntau), -1, dtype=np.int64)
    for b in range(budget + 1):
        out[0, b, 0] = 0
    digits = np.empty((ntau, t), dtype=np.int64)
    for tau in range(ntau):
        r = tau
        for z in range(t):
            digits[tau, z] = r % base
            r //= base
    for j in range(1, m + 1):
        cj = costs[j - 1]
        gj = gains[j - 1]
        dj = 0
        p = 1
        for z in range(t):
            dj += types[j - 1, z] * p
            p *= base
        for tau in range(ntau):
            fits = True
            for z in range(t):
                if digits[tau, z] < types[j - 1, z]:
                    fits = False
                    break
            for b in range(budget + 1):
                best = out[j - 1, b, tau]
                if fits and b >= cj:
                    src = out[j - 1, b - cj, tau - dj]
                    if src >= 0 and src + gj > best:
                        best = src + gj
                out[j, b, tau] = best
    return out

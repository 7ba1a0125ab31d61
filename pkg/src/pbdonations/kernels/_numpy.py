"""Pure-NumPy implementations of the hot kernels."""

from __future__ import annotations

import numpy as np


def subset_tables(costs, types, sats):
    """Tables over all 2^m subsets of projects.

    Subset ``s`` is a bitmask (bit j set means project j included).  Returns
    ``(cost, tcnt, addu, maxu)``: reduced-cost sums, per-type counts, and
    per-voter additive / maximum utilities, each indexed by subset.
    """
    m = costs.shape[0]
    t = types.shape[1]
    n = sats.shape[0]
    cost = np.zeros(1, dtype=np.int64)
    tcnt = np.zeros((1, t), dtype=np.int64)
    addu = np.zeros((1, n), dtype=np.int64)
    maxu = np.zeros((1, n), dtype=np.int64)
    # Doubling sweep: the second half of each table is "first half plus project j".
    for j in range(m):
        cost = np.concatenate([cost, cost + costs[j]])
        tcnt = np.concatenate([tcnt, tcnt + types[j]], axis=0)
        addu = np.concatenate([addu, addu + sats[:, j]], axis=0)
        maxu = np.concatenate([maxu, np.maximum(maxu, sats[:, j])], axis=0)
    return cost, tcnt, addu, maxu


def dp_fill(costs, gains, types, budget, base):
    """Best-score table over (prefix, spent budget, type configuration).

    ``out[j, b, tau]`` is the maximum total score gain of a subset of the
    first ``j`` projects whose reduced costs sum to at most ``b`` and whose
    type counts equal the mixed-radix digits of ``tau`` (base ``base``);
    -1 marks unreachable configurations.
    """
    m, t = types.shape
    ntau = int(base) ** t
    out = np.full((m + 1, budget + 1, ntau), -1, dtype=np.int64)
    out[0, :, 0] = 0
    if t:
        radix = base ** np.arange(t, dtype=np.int64)
        digits = (np.arange(ntau, dtype=np.int64)[:, None] // radix) % base
    else:
        digits = np.zeros((1, 0), dtype=np.int64)
    for j in range(1, m + 1):
        cj = int(costs[j - 1])
        gj = int(gains[j - 1])
        dj = int((types[j - 1] * (base ** np.arange(t, dtype=np.int64))).sum()) if t else 0
        prev = out[j - 1]
        cur = prev.copy()
        fits = np.all(digits >= types[j - 1], axis=1)
        taus = np.nonzero(fits)[0]
        if cj <= budget and taus.size:
            src = prev[: budget + 1 - cj][:, taus - dj]
            cand = np.where(src >= 0, src + gj, np.int64(-1))
            cur[cj:, taus] = np.maximum(cur[cj:, taus], cand)
        out[j] = cur
    return out

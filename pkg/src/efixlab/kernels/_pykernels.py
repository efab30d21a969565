"""Numpy implementations of the sampling kernels (fallback backend)."""

from __future__ import annotations

import numpy as np

_CHUNK = 32


def triangle_scan(P, tol, limit):
    """Scan every triple for ``P[i,j] > P[i,k] + P[k,j] + tol``.

    Returns ``(count, top)`` where ``top`` holds up to ``limit`` tuples
    ``(i, j, k, lhs, rhs)`` ordered by excess ``lhs - rhs`` descending, ties
    broken by ``(i, j, k)``.
    """
    P = np.ascontiguousarray(P, dtype=np.float64)
    n = P.shape[0]
    count = 0
    best = []
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        # rhs[i, k, j] = P[i, k] + P[k, j]
        rhs = P[start:stop, :, None] + P[None, :, :]
        lhs = P[start:stop, None, :]
        bad = lhs > rhs + tol
        c = int(bad.sum())
        if not c:
            continue
        count += c
        ii, kk, jj = np.nonzero(bad)
        l = np.broadcast_to(lhs, rhs.shape)[ii, kk, jj]
        r = rhs[ii, kk, jj]
        ii = ii + start
        order = np.lexsort((kk, jj, ii, -(l - r)))[:limit]
        best.extend(
            (int(ii[o]), int(jj[o]), int(kk[o]), float(l[o]), float(r[o])) for o in order
        )
        best.sort(key=lambda w: (-(w[3] - w[4]), w[0], w[1], w[2]))
        del best[limit:]
    return count, best


def ladder_diameters(P, D, deltas):
    """For each threshold, the widest premise set of the E-distance axiom (i).

    For threshold ``delta`` and anchor ``z`` let ``S = {x : P[z, x] <= delta}``.
    Returns one tuple ``(nonempty, diam, z, x, y)`` per threshold: whether any
    ``S`` is nonempty and the largest ``D[x, y]`` over ``x, y`` in a common
    ``S``, attained first at ``(z, x, y)`` in lexicographic order.  Empty
    premises report ``diam = -1`` and indices ``-1``.
    """
    P = np.asarray(P, dtype=np.float64)
    D = np.asarray(D, dtype=np.float64)
    n = P.shape[0]
    out = []
    for delta in deltas:
        member = P <= delta
        if not member.any():
            out.append((False, -1.0, -1, -1, -1))
            continue
        best = (-1.0, -1, -1, -1)
        for z in range(n):
            idx = np.flatnonzero(member[z])
            if idx.size == 0:
                continue
            sub = D[np.ix_(idx, idx)]
            flat = int(np.argmax(sub))
            diam = float(sub.flat[flat])
            if diam > best[0]:
                a, b = divmod(flat, idx.size)
                best = (diam, z, int(idx[a]), int(idx[b]))
        out.append((True,) + best)
    return out

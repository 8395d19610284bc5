"""
Compiled left normal form engine.

Mirrors :class:`braidkex.garside._Normalizer` on a 2-D buffer of strand
tables (one row per stored factor) so that whole words and products are
normalised without returning to the interpreter. Left-weighting here moves
single crossings from the right factor onto the left one until the pair is
weighted, which is a different route from the merge-based meet used by the
pure Python engine; the test suite checks the two against each other.

State is passed around as ``(F, k, power, flipped)``: rows ``F[:k]`` hold
the stored factors, and the actual factors are their Delta-conjugates when
``flipped`` is set. Callers must make sure ``F`` has room for every factor
an operation can add.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _is_identity(t):
    for i in range(t.shape[0]):
        if t[i] != i:
            return False
    return True


@njit(cache=True)
def _is_delta(t):
    top = t.shape[0] - 1
    for i in range(t.shape[0]):
        if t[i] != top - i:
            return False
    return True


@njit(cache=True)
def _tau_into(src, dst):
    top = src.shape[0] - 1
    for i in range(top + 1):
        dst[i] = top - src[top - i]


@njit(cache=True)
def left_weight(a, b, ainv):
    """Left-weight the pair (a, b) in place; ``ainv`` is scratch. True if changed."""
    n = a.shape[0]
    for x in range(n):
        ainv[a[x]] = x
    changed = False
    i = 0
    while i < n - 1:
        # x_{i+1} starts b but does not finish a: move it across
        if b[i] > b[i + 1] and ainv[i] < ainv[i + 1]:
            s, r = ainv[i], ainv[i + 1]
            a[s], a[r] = i + 1, i
            ainv[i], ainv[i + 1] = r, s
            b[i], b[i + 1] = b[i + 1], b[i]
            changed = True
            if i > 0:
                i -= 1
        else:
            i += 1
    return changed


@njit(cache=True)
def _delete_row(F, k, pos):
    for r in range(pos, k - 1):
        F[r, :] = F[r + 1, :]
    return k - 1


@njit(cache=True)
def _extract_delta(F, k, power, flipped, pos, tmp):
    # ... F_{pos-1} Delta R ... = Delta tau(... F_{pos-1}) R ...
    k = _delete_row(F, k, pos)
    power += 1
    if pos <= k - pos:
        for r in range(pos):
            _tau_into(F[r], tmp)
            F[r, :] = tmp
    else:
        flipped = not flipped
        for r in range(pos, k):
            _tau_into(F[r], tmp)
            F[r, :] = tmp
    return k, power, flipped


@njit(cache=True)
def append(F, k, power, flipped, t, tmp):
    """Right-multiply by the permutation braid with (actual) strand table ``t``."""
    if _is_identity(t):
        return k, power, flipped
    if _is_delta(t):
        return k, power + 1, not flipped
    if flipped:
        _tau_into(t, F[k])
    else:
        F[k, :] = t
    k += 1
    j = k - 1
    while j > 0:
        if not left_weight(F[j - 1], F[j], tmp):
            break
        if _is_identity(F[j]):
            k = _delete_row(F, k, j)
        if _is_delta(F[j - 1]):
            return _extract_delta(F, k, power, flipped, j - 1, tmp)
        j -= 1
    return k, power, flipped


@njit(cache=True)
def apply_letters(F, k, power, flipped, letters):
    n = F.shape[1]
    top = n - 1
    t = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    for g in letters:
        i = abs(g)
        if g > 0:
            for x in range(n):
                t[x] = x
            t[i - 1], t[i] = i, i - 1
            k, power, flipped = append(F, k, power, flipped, t, tmp)
            continue
        if k > 0:
            # work in the stored frame: tau maps x_i to x_{n-i}
            s = n - i if flipped else i
            last = F[k - 1]
            for x in range(n):
                tmp[last[x]] = x
            if tmp[s - 1] > tmp[s]:
                # x_s right-divides the last factor; cancel in place
                p, q = tmp[s - 1], tmp[s]
                last[p], last[q] = s, s - 1
                if _is_identity(last):
                    k -= 1
                continue
        # x_i^-1 = Delta^-1 (Delta x_i^-1)
        power -= 1
        flipped = not flipped
        for x in range(n):
            v = top - x
            if v == i - 1:
                v = i
            elif v == i:
                v = i - 1
            t[x] = v
        k, power, flipped = append(F, k, power, flipped, t, tmp)
    return k, power, flipped


@njit(cache=True)
def absorb(F, k, power, flipped, G, kg, pg, fg):
    """Right-multiply the state by Delta^pg G[:kg] (G conjugated when ``fg``)."""
    n = F.shape[1]
    power += pg
    if pg % 2:
        flipped = not flipped
    t = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    for r in range(kg):
        if fg:
            _tau_into(G[r], t)
        else:
            t[:] = G[r]
        k, power, flipped = append(F, k, power, flipped, t, tmp)
    return k, power, flipped


@njit(cache=True)
def images(F, k, flipped):
    """Actual factors as permutation image tables (inverse strand tables)."""
    n = F.shape[1]
    out = np.empty((k, n), np.int64)
    t = np.empty(n, np.int64)
    for r in range(k):
        if flipped:
            _tau_into(F[r], t)
        else:
            t[:] = F[r]
        for x in range(n):
            out[r, t[x]] = x
    return out

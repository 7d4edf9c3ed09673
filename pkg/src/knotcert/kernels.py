"""Hot inner loops: Kauffman-bracket state histogram and Gauss-diagram
subset matching.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version.  The numba path is used when numba imports and the environment
variable ``KNOTCERT_DISABLE_NUMBA`` is unset (or ``0``).  Both return exact
int64 counts; callers keep the bounds small enough that int64 cannot
overflow (2**c states, C(c, k) subsets).
"""
from __future__ import annotations

import os
from itertools import combinations

import numpy as np

_DISABLED = os.environ.get("KNOTCERT_DISABLE_NUMBA", "0") not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError("numba disabled by KNOTCERT_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# ------------------------------------------------------------ bracket states


def _bracket_numpy(crossings: np.ndarray, n_arcs: int, chunk: int = 1 << 14) -> np.ndarray:
    """hist[k, l] = number of states with k A-smoothings and l loops.

    ``crossings`` has shape (c, 4) with 0-based labels in PD slot order.  The
    A-smoothing joins slots 0-1 and 2-3, the B-smoothing 0-3 and 1-2.  Every
    label has exactly two neighbours in a state, so loops are the components
    of a 2-regular graph; they are found by min-label propagation.
    """
    c = crossings.shape[0]
    hist = np.zeros((c + 1, n_arcs + 2), dtype=np.int64)
    # per label occurrence: crossing index, A partner label, B partner label
    occ_x = np.zeros((n_arcs, 2), dtype=np.int64)
    occ_a = np.zeros((n_arcs, 2), dtype=np.int64)
    occ_b = np.zeros((n_arcs, 2), dtype=np.int64)
    count = np.zeros(n_arcs, dtype=np.int64)
    for i in range(c):
        for s in range(4):
            lab = crossings[i, s]
            o = count[lab]
            occ_x[lab, o] = i
            occ_a[lab, o] = crossings[i, s ^ 1]
            occ_b[lab, o] = crossings[i, 3 - s]
            count[lab] += 1
    base = np.arange(n_arcs, dtype=np.int64)
    total = 1 << c
    for start in range(0, total, chunk):
        states = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = (states[:, None] >> np.arange(c)[None, :]) & 1  # 1 = A
        nb0 = np.where(bits[:, occ_x[:, 0]] == 1, occ_a[:, 0], occ_b[:, 0])
        nb1 = np.where(bits[:, occ_x[:, 1]] == 1, occ_a[:, 1], occ_b[:, 1])
        lab = np.broadcast_to(base, nb0.shape).copy()
        while True:
            new = np.minimum(lab, np.minimum(np.take_along_axis(lab, nb0, 1), np.take_along_axis(lab, nb1, 1)))
            if np.array_equal(new, lab):
                break
            lab = new
        loops = (lab == base).sum(axis=1)
        np.add.at(hist, (bits.sum(axis=1), loops), 1)
    return hist


if HAVE_NUMBA:

    @njit(cache=True)
    def _bracket_numba(crossings, n_arcs):
        c = crossings.shape[0]
        hist = np.zeros((c + 1, n_arcs + 2), dtype=np.int64)
        parent = np.empty(n_arcs, dtype=np.int64)
        for state in range(1 << c):
            for x in range(n_arcs):
                parent[x] = x
            na = 0
            for i in range(c):
                a = (state >> i) & 1
                na += a
                for j in range(2):
                    if a:
                        u = crossings[i, 2 * j]
                        v = crossings[i, 2 * j + 1]
                    else:
                        u = crossings[i, j]
                        v = crossings[i, 3 - j]
                    while parent[u] != u:
                        parent[u] = parent[parent[u]]
                        u = parent[u]
                    while parent[v] != v:
                        parent[v] = parent[parent[v]]
                        v = parent[v]
                    if u != v:
                        parent[u] = v
            loops = 0
            for x in range(n_arcs):
                if parent[x] == x:
                    loops += 1
            hist[na, loops] += 1
        return hist


def bracket_histogram(crossings, n_arcs: int, backend: str | None = None) -> np.ndarray:
    crossings = np.ascontiguousarray(crossings, dtype=np.int64).reshape(-1, 4)
    backend = backend or BACKEND
    if backend == "numba" and HAVE_NUMBA:
        return _bracket_numba(crossings, n_arcs)
    return _bracket_numpy(crossings, n_arcs)


# ------------------------------------------------------- Gauss subset pairing


def _pattern_arrays(patterns):
    """patterns: list of (word_code, dir_mask, dir_bits, sign_mask, sign_bits, coef)."""
    arr = np.array([p[:5] for p in patterns], dtype=np.int64).reshape(-1, 5)
    coef = np.array([p[5] for p in patterns], dtype=np.int64)
    return arr, coef


def _subset_codes_numpy(tails, heads, signs, idx):
    """Word code, direction bits, sign bits and sign product of each subset.

    ``idx`` has shape (N, k).  Arrows are numbered by their first endpoint;
    the word lists arrow numbers along the circle, base-k encoded; direction
    bit j is set when arrow j starts at its tail.
    """
    n, k = idx.shape
    t = tails[idx]
    h = heads[idx]
    first = np.minimum(t, h)
    order = np.argsort(first, axis=1)
    rank = np.empty_like(order)
    np.put_along_axis(rank, order, np.arange(k)[None, :].repeat(n, 0), axis=1)
    pos = np.concatenate([t, h], axis=1)
    owner = np.concatenate([rank, rank], axis=1)
    srt = np.argsort(pos, axis=1)
    word_ids = np.take_along_axis(owner, srt, axis=1)
    powers = k ** np.arange(2 * k - 1, -1, -1, dtype=np.int64)
    word = (word_ids * powers[None, :]).sum(axis=1)
    tail_first = (t < h).astype(np.int64)
    sg = signs[idx]
    pos_sign = (sg > 0).astype(np.int64)
    dir_bits = np.zeros(n, dtype=np.int64)
    sign_bits = np.zeros(n, dtype=np.int64)
    for j in range(k):
        dir_bits |= tail_first[:, j] << rank[:, j]
        sign_bits |= pos_sign[:, j] << rank[:, j]
    eps = np.prod(sg, axis=1)
    return word, dir_bits, sign_bits, eps


def _pairing_numpy(tails, heads, signs, k, pat, coef, chunk=1 << 16):
    c = tails.shape[0]
    total = 0
    if k > c:
        return 0
    it = combinations(range(c), k)
    while True:
        block = np.fromiter((v for comb in _take(it, chunk) for v in comb), dtype=np.int64)
        if block.size == 0:
            break
        idx = block.reshape(-1, k)
        word, db, sb, eps = _subset_codes_numpy(tails, heads, signs, idx)
        for p in range(pat.shape[0]):
            code, dmask, dbits, smask, sbits = pat[p]
            hit = (word == code) & ((db & dmask) == dbits) & ((sb & smask) == sbits)
            total += int(coef[p]) * int(eps[hit].sum())
    return total


def _take(it, n):
    for _ in range(n):
        try:
            yield next(it)
        except StopIteration:
            return


if HAVE_NUMBA:

    @njit(cache=True)
    def _pairing_numba(tails, heads, signs, k, pat, coef):
        c = tails.shape[0]
        if k > c:
            return 0
        total = 0
        idx = np.arange(k)
        t = np.empty(k, dtype=np.int64)
        h = np.empty(k, dtype=np.int64)
        rank = np.empty(k, dtype=np.int64)
        pos = np.empty(2 * k, dtype=np.int64)
        own = np.empty(2 * k, dtype=np.int64)
        while True:
            eps = 1
            for j in range(k):
                t[j] = tails[idx[j]]
                h[j] = heads[idx[j]]
                eps *= signs[idx[j]]
            # rank arrows by first endpoint
            for j in range(k):
                fj = min(t[j], h[j])
                r = 0
                for m in range(k):
                    if min(t[m], h[m]) < fj:
                        r += 1
                rank[j] = r
            for j in range(k):
                pos[2 * j] = t[j]
                pos[2 * j + 1] = h[j]
                own[2 * j] = rank[j]
                own[2 * j + 1] = rank[j]
            order = np.argsort(pos)
            word = 0
            for m in range(2 * k):
                word = word * k + own[order[m]]
            db = 0
            sb = 0
            for j in range(k):
                if t[j] < h[j]:
                    db |= 1 << rank[j]
                if signs[idx[j]] > 0:
                    sb |= 1 << rank[j]
            for p in range(pat.shape[0]):
                if pat[p, 0] == word and (db & pat[p, 1]) == pat[p, 2] and (sb & pat[p, 3]) == pat[p, 4]:
                    total += coef[p] * eps
            # next combination
            j = k - 1
            while j >= 0 and idx[j] == c - k + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for m in range(j + 1, k):
                idx[m] = idx[m - 1] + 1
        return total


def pairing_count(tails, heads, signs, k: int, patterns, backend: str | None = None) -> int:
    """Sum over k-arrow subsets of coef * (product of signs) for matching patterns."""
    if not patterns:
        return 0
    tails = np.ascontiguousarray(tails, dtype=np.int64)
    heads = np.ascontiguousarray(heads, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    pat, coef = _pattern_arrays(patterns)
    backend = backend or BACKEND
    if backend == "numba" and HAVE_NUMBA:
        return int(_pairing_numba(tails, heads, signs, k, pat, coef))
    return _pairing_numpy(tails, heads, signs, k, pat, coef)

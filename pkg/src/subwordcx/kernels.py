"""Array kernels over subsets of word positions and over group indices.

Subsets of an ``m``-letter word are bitmasks; bit ``k`` stands for position
``k + 1``.  Every kernel exists as a numba loop and as a numpy path; which one
runs is fixed at import time by ``SUBWORDCX_NUMBA`` (see :mod:`._jit`).  The
two paths are interchangeable and tests compare them directly.
"""
from __future__ import annotations

import math

import numpy as np

from ._jit import USE_NUMBA, njit

# int64 products of two entries below this bound cannot overflow
OVERFLOW_LIMIT = 1 << 30


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def popcounts(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int64)
    for h in range(m):
        pc[1 << h: 1 << (h + 1)] = pc[: 1 << h] + 1
    return pc


# ---------------------------------------------------------------------------
# Demazure products of all subwords


@njit(cache=True)
def _subset_demazure_nb(letters, right, lengths):
    m = letters.shape[0]
    out = np.zeros(1 << m, dtype=np.int32)
    for h in range(m):
        s = letters[h]
        base = 1 << h
        for prev in range(base):
            g = out[prev]
            v = right[g, s]
            out[base + prev] = v if lengths[v] > lengths[g] else g
    return out


def _subset_demazure_np(letters, right, lengths):
    m = letters.shape[0]
    out = np.zeros(1 << m, dtype=np.int32)
    for h in range(m):
        lo = out[: 1 << h]
        cand = right[lo, letters[h]]
        out[1 << h: 1 << (h + 1)] = np.where(lengths[cand] > lengths[lo], cand, lo)
    return out


def subset_demazure(letters, right, lengths) -> np.ndarray:
    """Demazure product (as a group index) of every subword, indexed by mask.

    ``letters`` are 0-based generator columns of ``right``.
    """
    letters = np.ascontiguousarray(letters, dtype=np.int64)
    if USE_NUMBA:
        return _subset_demazure_nb(letters, right, lengths)
    return _subset_demazure_np(letters, right, lengths)


# ---------------------------------------------------------------------------
# Bruhat upper sets


@njit(cache=True)
def _upper_vector_nb(right, order, first_desc, target, target_desc, prev):
    n = right.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for b in order:
        s = first_desc[b]
        if s < 0:
            out[b] = target == 0
            continue
        bs = right[b, s]
        if target_desc[s]:
            out[b] = prev[s, bs]
        else:
            out[b] = out[bs]
    return out


def _upper_vector_np(right, order, first_desc, target, target_desc, prev, layers):
    n = right.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    out[0] = target == 0
    for layer in layers[1:]:
        s = first_desc[layer]
        bs = right[layer, s]
        out[layer] = np.where(target_desc[s], prev[s, bs], out[bs])
    return out


def upper_vector(right, order, first_desc, target, target_desc, prev, layers):
    """``g >= target`` for every index ``g``.

    ``prev[s]`` must hold the upper set of ``target * s_{s+1}`` whenever that
    is a descent (``target_desc[s]``); rows for other ``s`` are ignored.
    """
    if USE_NUMBA:
        return _upper_vector_nb(right, order, first_desc, target, target_desc, prev)
    return _upper_vector_np(right, order, first_desc, target, target_desc, prev, layers)


def bruhat_upper_set(right, lengths, target: int, _cache=None) -> np.ndarray:
    right = np.asarray(right)
    lengths = np.asarray(lengths)
    n, r = right.shape
    order = np.argsort(lengths, kind="stable").astype(np.int64)
    first_desc = np.full(n, -1, dtype=np.int64)
    for s in range(r - 1, -1, -1):
        first_desc[lengths[right[:, s]] < lengths] = s
    first_desc[lengths == 0] = -1
    layers = [order[lengths[order] == k] for k in range(int(lengths.max()) + 1)]
    memo = {} if _cache is None else _cache

    def solve(t):
        if t in memo:
            return memo[t]
        desc = np.zeros(r, dtype=np.bool_)
        prev = np.zeros((r, n), dtype=np.bool_)
        for s in range(r):
            ts = right[t, s]
            if lengths[ts] < lengths[t]:
                desc[s] = True
                prev[s] = solve(int(ts))
        memo[t] = upper_vector(right, order, first_desc, t, desc, prev, layers)
        return memo[t]

    return solve(int(target))


# ---------------------------------------------------------------------------
# subset transforms (multilinear polynomials as dense coefficient vectors)


@njit(cache=True)
def _mobius_nb(f, m):
    g = f.copy()
    for h in range(m):
        bit = 1 << h
        for mask in range(g.shape[0]):
            if mask & bit:
                g[mask] -= g[mask ^ bit]
    return g


def _mobius_np(f, m):
    g = np.array(f, dtype=np.int64, copy=True)
    for h in range(m):
        v = g.reshape(-1, 2, 1 << h)
        v[:, 1, :] -= v[:, 0, :]
    return g


def mobius(f, m: int) -> np.ndarray:
    """``g[S] = sum_{T <= S} (-1)^{|S - T|} f[T]``."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    return _mobius_nb(f, m) if USE_NUMBA else _mobius_np(f, m)


@njit(cache=True)
def _superset_sum_nb(f, m):
    g = f.copy()
    for h in range(m):
        bit = 1 << h
        for mask in range(g.shape[0]):
            if not mask & bit:
                g[mask] += g[mask | bit]
    return g


def _superset_sum_np(f, m):
    g = np.array(f, dtype=np.int64, copy=True)
    for h in range(m):
        v = g.reshape(-1, 2, 1 << h)
        v[:, 0, :] += v[:, 1, :]
    return g


def superset_sum(f, m: int) -> np.ndarray:
    """``g[S] = sum_{T >= S} f[T]``."""
    f = np.ascontiguousarray(f, dtype=np.int64)
    return _superset_sum_nb(f, m) if USE_NUMBA else _superset_sum_np(f, m)


@njit(cache=True)
def _down_closure_nb(f, m):
    g = f.copy()
    for h in range(m):
        bit = 1 << h
        for mask in range(g.shape[0]):
            if not mask & bit and g[mask | bit]:
                g[mask] = True
    return g


def _down_closure_np(f, m):
    g = np.array(f, dtype=np.bool_, copy=True)
    for h in range(m):
        v = g.reshape(-1, 2, 1 << h)
        v[:, 0, :] |= v[:, 1, :]
    return g


def down_closure(f, m: int) -> np.ndarray:
    """Boolean indicator of all subsets of marked masks."""
    f = np.ascontiguousarray(f, dtype=np.bool_)
    return _down_closure_nb(f, m) if USE_NUMBA else _down_closure_np(f, m)


@njit(cache=True)
def _shelling_poly_nb(facets, absorb, size):
    out = np.zeros(size, dtype=np.int64)
    for k in range(facets.shape[0]):
        d = facets[k]
        a = absorb[k]
        sub = d
        while True:
            out[a | sub] += -1 if popcount(sub) & 1 else 1
            if sub == 0:
                break
            sub = (sub - 1) & d
    return out


def _shelling_poly_np(facets, absorb, size):
    pc = popcounts(int(size).bit_length() - 1)
    out = np.zeros(size, dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    for d, a in zip(facets, absorb):
        subs = idx[(idx & ~d) == 0]
        np.add.at(out, a | subs, np.where(pc[subs] & 1, -1, 1))
    return out


def shelling_poly(reduced_masks, absorb_masks, m: int) -> np.ndarray:
    """Coefficients of ``sum_D (1 - z)^D z^abs(D)``."""
    facets = np.ascontiguousarray(reduced_masks, dtype=np.int64)
    absorb = np.ascontiguousarray(absorb_masks, dtype=np.int64)
    if USE_NUMBA:
        return _shelling_poly_nb(facets, absorb, 1 << m)
    return _shelling_poly_np(facets, absorb, 1 << m)


# ---------------------------------------------------------------------------
# Smith normal form (diagonal only) and simplicial homology


@njit(cache=True)
def _snf_diag_nb(A):
    m, n = A.shape
    out = np.zeros(min(m, n), dtype=np.int64)
    t = 0
    while t < m and t < n:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
            if best == 1:
                break
        if best == 0:
            break
        while True:
            if bi != t:
                for j in range(t, n):
                    tmp = A[t, j]
                    A[t, j] = A[bi, j]
                    A[bi, j] = tmp
            if bj != t:
                for i in range(t, m):
                    tmp = A[i, t]
                    A[i, t] = A[i, bj]
                    A[i, bj] = tmp
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // p
                    for j in range(t, n):
                        A[i, j] -= q * A[t, j]
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // p
                    for i in range(t, m):
                        A[i, j] -= q * A[i, t]
                    if A[t, j] != 0:
                        clean = False
            big = 0
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(A[i, j])
                    if v > big:
                        big = v
            if big > OVERFLOW_LIMIT:
                return out[:t], False
            if clean:
                break
            best = abs(p)
            bi = t
            bj = t
            for i in range(t + 1, m):
                v = abs(A[i, t])
                if v != 0 and v < best:
                    best = v
                    bi = i
                    bj = t
            for j in range(t + 1, n):
                v = abs(A[t, j])
                if v != 0 and v < best:
                    best = v
                    bi = t
                    bj = j
        out[t] = abs(A[t, t])
        t += 1
    return out[:t], True


def _snf_diag_obj(A):
    A = np.array(A, dtype=object)
    m, n = A.shape
    out = []
    t = 0
    while t < m and t < n:
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        mags = np.abs(sub[nz[:, 0], nz[:, 1]]).astype(object)
        k = int(np.argmin(mags))
        bi, bj = t + nz[k][0], t + nz[k][1]
        while True:
            A[[t, bi], t:] = A[[bi, t], t:]
            A[t:, [t, bj]] = A[t:, [bj, t]]
            p = A[t, t]
            q = A[t + 1:, t] // p
            A[t + 1:, t:] -= np.outer(q, A[t, t:])
            q = A[t, t + 1:] // p
            A[t:, t + 1:] -= np.outer(A[t:, t], q)
            col = A[t + 1:, t]
            row = A[t, t + 1:]
            if not col.any() and not row.any():
                break
            best, bi, bj = abs(p), t, t
            for i in np.flatnonzero(col):
                if abs(col[i]) < best:
                    best, bi, bj = abs(col[i]), t + 1 + i, t
            for j in np.flatnonzero(row):
                if abs(row[j]) < best:
                    best, bi, bj = abs(row[j]), t, t + 1 + j
        out.append(abs(A[t, t]))
        t += 1
    return out


def snf_diagonal(A) -> list:
    """Nonzero diagonal of a diagonalization of the integer matrix ``A``.

    Uses the int64 kernel and falls back to exact Python integers if entries
    grow past ``OVERFLOW_LIMIT``.
    """
    A = np.asarray(A)
    if A.size == 0:
        return []
    if USE_NUMBA:
        diag, ok = _snf_diag_nb(np.array(A, dtype=np.int64, copy=True))
        if ok:
            return [int(v) for v in diag]
    return [int(v) for v in _snf_diag_obj(A)]


def invariant_factors(diag) -> list:
    """Normalize a diagonal to invariant factors d_1 | d_2 | ... (all > 0)."""
    d = sorted(int(v) for v in diag if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


@njit(cache=True)
def _boundary_matrix_nb(face, pc, m, k, idx, counts):
    A = np.zeros((counts[k - 1], counts[k]), dtype=np.int64)
    for mask in range(face.shape[0]):
        if face[mask] and pc[mask] == k:
            sign = 1
            for v in range(m):
                if (mask >> v) & 1:
                    A[idx[mask ^ (1 << v)], idx[mask]] = sign
                    sign = -sign
    return A


@njit(cache=True)
def _face_index_nb(face, pc, m):
    idx = np.full(face.shape[0], -1, dtype=np.int64)
    counts = np.zeros(m + 2, dtype=np.int64)
    for mask in range(face.shape[0]):
        if face[mask]:
            k = pc[mask]
            idx[mask] = counts[k]
            counts[k] += 1
    return idx, counts


@njit(cache=True)
def _homology_nb(face, pc, m):
    """f-vector by size, boundary ranks, torsion diagonals, overflow flag."""
    idx, counts = _face_index_nb(face, pc, m)
    ranks = np.zeros(m + 2, dtype=np.int64)
    width = 1
    for k in range(m + 2):
        if counts[k] > width:
            width = counts[k]
    tors = np.zeros((m + 2, width), dtype=np.int64)
    ok = True
    for k in range(1, m + 1):
        if counts[k] == 0 or counts[k - 1] == 0:
            continue
        A = _boundary_matrix_nb(face, pc, m, k, idx, counts)
        diag, good = _snf_diag_nb(A)
        if not good:
            ok = False
        ranks[k] = diag.shape[0]
        c = 0
        for v in diag:
            if v > 1:
                tors[k, c] = v
                c += 1
    return counts, ranks, tors, ok


def _boundary_matrix_np(face, pc, m, k, idx, counts):
    A = np.zeros((counts[k - 1], counts[k]), dtype=np.int64)
    cols = np.flatnonzero(face & (pc == k))
    for mask in cols:
        sign = 1
        for v in range(m):
            if (mask >> v) & 1:
                A[idx[mask ^ (1 << v)], idx[mask]] = sign
                sign = -sign
    return A


def _homology_np(face, pc, m):
    counts = np.bincount(pc[face], minlength=m + 2).astype(np.int64)
    idx = np.full(face.shape[0], -1, dtype=np.int64)
    for k in range(m + 1):
        sel = np.flatnonzero(face & (pc == k))
        idx[sel] = np.arange(len(sel))
    ranks = np.zeros(m + 2, dtype=np.int64)
    tors = {}
    for k in range(1, m + 1):
        if counts[k] == 0 or counts[k - 1] == 0:
            continue
        diag = _snf_diag_obj(_boundary_matrix_np(face, pc, m, k, idx, counts))
        ranks[k] = len(diag)
        tors[k] = [int(v) for v in diag if v > 1]
    return counts, ranks, tors


def homology_data(face, m: int):
    """Reduced homology of the complex whose faces are the masks marked in ``face``.

    Returns ``(counts, betti, torsion)``: ``counts[k]`` faces of size ``k``;
    ``betti[k]`` and ``torsion[k]`` describe reduced homology in dimension
    ``k - 1`` (so index 0 is dimension -1).
    """
    face = np.ascontiguousarray(face, dtype=np.bool_)
    pc = popcounts(m)
    tors_lists = None
    if USE_NUMBA:
        counts, ranks, tors, ok = _homology_nb(face, pc, m)
        if ok:
            tors_lists = {k: [int(v) for v in tors[k] if v] for k in range(m + 2)}
    if tors_lists is None:
        counts, ranks, tors_lists = _homology_np(face, pc, m)
    betti = []
    torsion = []
    for k in range(m + 1):
        betti.append(int(counts[k] - ranks[k] - ranks[k + 1]))
        torsion.append(invariant_factors(tors_lists.get(k + 1, [])))
    return [int(c) for c in counts[: m + 1]], betti, torsion


@njit(cache=True)
def _rank_mod_p_nb(A, p):
    A = A % p
    m, n = A.shape
    r = 0
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        for j in range(n):
            tmp = A[r, j]
            A[r, j] = A[piv, j]
            A[piv, j] = tmp
        inv = 1
        base = A[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for i in range(m):
            if i != r and A[i, c] != 0:
                f = A[i, c] * inv % p
                for j in range(n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
        if r == m:
            break
    return r


def _rank_mod_p_np(A, p):
    A = np.array(A, dtype=object) % p
    m, n = A.shape
    r = 0
    for c in range(n):
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        piv = r + nz[0]
        A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        r += 1
        if r == m:
            break
    return r


@njit(cache=True)
def _link_betti_field_nb(face, pc, m, p):
    n = face.shape[0]
    out = np.zeros((n, m + 1), dtype=np.int64)
    tors = np.zeros(n, dtype=np.bool_)
    ok = True
    for F in range(n):
        if not face[F]:
            continue
        link = np.zeros(n, dtype=np.bool_)
        for G in range(n):
            if G & F == 0 and face[G | F]:
                link[G] = True
        idx, counts = _face_index_nb(link, pc, m)
        ranks = np.zeros(m + 2, dtype=np.int64)
        for k in range(1, m + 1):
            if counts[k] == 0 or counts[k - 1] == 0:
                continue
            A = _boundary_matrix_nb(link, pc, m, k, idx, counts)
            if p == 0:
                diag, good = _snf_diag_nb(A)
                if not good:
                    ok = False
                ranks[k] = diag.shape[0]
                for v in diag:
                    if abs(v) > 1:
                        tors[F] = True
            else:
                ranks[k] = _rank_mod_p_nb(A, p)
        for k in range(m + 1):
            out[F, k] = counts[k] - ranks[k] - ranks[k + 1]
    return out, tors, ok


def _link_betti_field_np(face, pc, m, p):
    n = face.shape[0]
    out = np.zeros((n, m + 1), dtype=np.int64)
    tors = np.zeros(n, dtype=np.bool_)
    allmasks = np.arange(n)
    for F in np.flatnonzero(face):
        link = np.zeros(n, dtype=np.bool_)
        G = allmasks[(allmasks & F) == 0]
        link[G] = face[G | F]
        counts = np.bincount(pc[link], minlength=m + 2)
        idx = np.full(n, -1, dtype=np.int64)
        for k in range(m + 1):
            sel = np.flatnonzero(link & (pc == k))
            idx[sel] = np.arange(len(sel))
        ranks = np.zeros(m + 2, dtype=np.int64)
        for k in range(1, m + 1):
            if counts[k] == 0 or counts[k - 1] == 0:
                continue
            A = _boundary_matrix_np(link, pc, m, k, idx, counts)
            if p == 0:
                diag = _snf_diag_obj(A)
                ranks[k] = len(diag)
                tors[F] |= any(abs(v) > 1 for v in diag)
            else:
                ranks[k] = _rank_mod_p_np(A, p)
        out[F] = counts[: m + 1] - ranks[: m + 1] - ranks[1: m + 2]
    return out, tors


def link_betti_all(face, m: int, p: int = 0, with_torsion: bool = False):
    """Reduced Betti numbers of the link of every face, over Q (``p=0``) or GF(p).

    Row ``F`` column ``k`` is the rank of reduced homology of ``link(F)`` in
    dimension ``k - 1``.  Rows of non-faces are zero.  With ``with_torsion``
    (only meaningful for ``p=0``) also return a per-face flag that is set when
    some boundary map of the link has an invariant factor above 1, i.e. the
    integral homology of the link has torsion.
    """
    face = np.ascontiguousarray(face, dtype=np.bool_)
    pc = popcounts(m)
    res = None
    if USE_NUMBA:
        out, tors, ok = _link_betti_field_nb(face, pc, m, p)
        if ok:
            res = out, tors
    if res is None:
        res = _link_betti_field_np(face, pc, m, p)
    return res if with_torsion else res[0]


# ---------------------------------------------------------------------------
# shellings and linear extensions


@njit(cache=True)
def _is_shelling_nb(order):
    t = order.shape[0]
    inter = np.zeros(t, dtype=np.int64)
    for i in range(1, t):
        F = order[i]
        d = popcount(F)
        for j in range(i):
            inter[j] = order[j] & F
        for j in range(i):
            I = inter[j]
            if popcount(I) == d - 1:
                continue
            found = False
            for k in range(i):
                J = inter[k]
                if popcount(J) == d - 1 and (I & ~J) == 0:
                    found = True
                    break
            if not found:
                return False
    return True


@njit(cache=True)
def _check_shellings_nb(orders):
    out = np.zeros(orders.shape[0], dtype=np.bool_)
    for r in range(orders.shape[0]):
        out[r] = _is_shelling_nb(orders[r])
    return out


def _check_shellings_np(orders):
    out = np.zeros(orders.shape[0], dtype=np.bool_)
    for r, order in enumerate(orders):
        ok = True
        for i in range(1, len(order)):
            F = int(order[i])
            d = bin(F).count("1")
            inter = [int(x) & F for x in order[:i]]
            ridges = [J for J in inter if bin(J).count("1") == d - 1]
            if not all(any(I & ~J == 0 for J in ridges) for I in inter):
                ok = False
                break
        out[r] = ok
    return out


def check_shellings(orders) -> np.ndarray:
    """For each row (a facet order as bitmasks) decide whether it is a shelling."""
    orders = np.ascontiguousarray(np.atleast_2d(orders), dtype=np.int64)
    if orders.shape[1] == 0:
        return np.ones(orders.shape[0], dtype=np.bool_)
    return _check_shellings_nb(orders) if USE_NUMBA else _check_shellings_np(orders)


@njit(cache=True)
def random_linear_extensions(n, src, dst, count, seed):
    """``count`` random topological orders of a DAG on ``0..n-1``.

    Park-Miller generator so both backends produce identical orders.
    Returns an empty array if the graph has a cycle.
    """
    indeg0 = np.zeros(n, dtype=np.int64)
    outdeg = np.zeros(n + 1, dtype=np.int64)
    for e in range(src.shape[0]):
        indeg0[dst[e]] += 1
        outdeg[src[e] + 1] += 1
    start = np.cumsum(outdeg)
    fill = start[:n].copy()
    targets = np.zeros(src.shape[0], dtype=np.int64)
    for e in range(src.shape[0]):
        targets[fill[src[e]]] = dst[e]
        fill[src[e]] += 1
    state = seed % 2147483647
    if state <= 0:
        state += 2147483646
    out = np.zeros((count, n), dtype=np.int64)
    avail = np.zeros(n, dtype=np.int64)
    for c in range(count):
        indeg = indeg0.copy()
        na = 0
        for v in range(n):
            if indeg[v] == 0:
                avail[na] = v
                na += 1
        for step in range(n):
            if na == 0:
                return np.zeros((0, n), dtype=np.int64)
            state = state * 48271 % 2147483647
            pick = state % na
            v = avail[pick]
            na -= 1
            avail[pick] = avail[na]
            out[c, step] = v
            for e in range(start[v], start[v + 1]):
                w = targets[e]
                indeg[w] -= 1
                if indeg[w] == 0:
                    avail[na] = w
                    na += 1
    return out

"""Square words, pipe dreams and Grothendieck polynomials.

Grid cell ``(r, c)`` carries the letter ``s_{r+c-1}``.  The square word reads
row 1 from right to left, then row 2, and so on, so cell ``(r, c)`` is word
position ``(r - 1) * n + (n - c + 1)``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .complex import SubwordData, build_complex, to_positions
from .coxeter import SymmetricGroup, demazure_product
from .kpoly import (
    coeffs_to_poly,
    demazure_coeffs,
    dual_demazure_coeffs,
    dual_faces_coeffs,
    shelling_coeffs,
)
from .poly import SparsePolynomial, demazure_operator, var, x, y
from .topology import AbstractComplex


class Grid:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("grid size must be >= 1")
        self.n = n

    def position(self, r: int, c: int) -> int:
        return (r - 1) * self.n + (self.n - c + 1)

    def cell(self, pos: int) -> tuple:
        r, k = divmod(pos - 1, self.n)
        return (r + 1, self.n - k)

    def letter(self, r: int, c: int) -> int:
        return r + c - 1

    def cells(self) -> list:
        return [self.cell(p) for p in range(1, self.n * self.n + 1)]

    def variables(self) -> list:
        """``z[r,c]`` for each word position, in word order."""
        return [var("z", *self.cell(p)) for p in range(1, self.n * self.n + 1)]


def square_word(n: int) -> tuple:
    """The square word Q_{n x n} for S_{2n} and its grid."""
    grid = Grid(n)
    return tuple(grid.letter(*grid.cell(p)) for p in range(1, n * n + 1)), grid


def embed(w, n: int) -> tuple:
    """``w`` in S_n as an element of S_{2n} fixing n+1..2n."""
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)) or len(w) > n:
        raise ValueError(f"{w} is not a permutation in S_{n}")
    return w + tuple(range(len(w) + 1, 2 * n + 1))


def _specialization(grid: Grid, double: bool) -> dict:
    out = {}
    for (r, c), v in zip(grid.cells(), grid.variables()):
        out[v] = x(r) * y(c) if double else x(r)
    return out


def top_grothendieck(n: int, double: bool = False) -> SparsePolynomial:
    out = SparsePolynomial.const(1)
    if double:
        for i in range(1, n + 1):
            for j in range(1, n + 1 - i):
                out = out * (1 - x(i) * y(j))
    else:
        for i in range(1, n + 1):
            out = out * (1 - x(i)) ** (n - i)
    return out


@lru_cache(maxsize=16)
def _recursive_table(n: int, double: bool) -> dict:
    sys = SymmetricGroup(n)
    w0 = sys.longest()
    table = {w0: top_grothendieck(n, double)}
    frontier = [w0]
    while frontier:
        nxt = []
        for w in sorted(frontier, key=sys.length, reverse=True):
            for i in range(1, n):
                v = sys.apply_gen(w, i)
                if sys.length(v) > sys.length(w):
                    continue
                g = demazure_operator(table[w], i)
                if v in table:
                    if table[v] != g:
                        raise AssertionError(f"path dependence at {v}")
                else:
                    table[v] = g
                    nxt.append(v)
        frontier = nxt
    return table


def grothendieck_recursive(n: int, w, double: bool = False) -> SparsePolynomial:
    """Grothendieck polynomial by Demazure operators down from the longest element.

    Every covering path is followed and the results are required to agree.
    """
    w = SymmetricGroup(n).from_list(w)
    return _recursive_table(n, bool(double))[w]


def grothendieck_from_complex(n: int, w, double: bool = False, method: str = "demazure") -> SparsePolynomial:
    """Specialize the K-polynomial of Delta(Q_{n x n}, w) at z[r,c] -> x_r y_c (or x_r)."""
    word, grid = square_word(n)
    sys = SymmetricGroup(2 * n)
    data = SubwordData(sys, word)
    t = data.index(embed(w, n))
    if method == "demazure":
        coeffs = demazure_coeffs(data, t)
    elif method in ("absorbable", "shelling"):
        coeffs = shelling_coeffs(data, t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _specialize(coeffs, grid, double)


def _specialize(coeffs, grid: Grid, double: bool) -> SparsePolynomial:
    sub = _specialization(grid, double)
    vs = grid.variables()
    terms: dict = {}
    for mask in np.flatnonzero(coeffs):
        mono = SparsePolynomial.const(int(coeffs[mask]))
        for p in to_positions(int(mask)):
            mono = mono * sub[vs[p - 1]]
        for k, c in mono.terms.items():
            terms[k] = terms.get(k, 0) + c
    return SparsePolynomial(terms)


def fomin_kirillov_expand(n: int, w) -> SparsePolynomial:
    """sum over P with delta(P) = w of (-1)^(|P| - l) prod_{(i,j) in P} (x_i + y_j - x_i y_j)."""
    word, grid = square_word(n)
    sys = SymmetricGroup(2 * n)
    data = SubwordData(sys, word)
    coeffs = dual_demazure_coeffs(data, data.index(embed(w, n)))
    factors = [x(r) + y(c) - x(r) * y(c) for r, c in grid.cells()]
    out = SparsePolynomial()
    for mask in np.flatnonzero(coeffs):
        term = SparsePolynomial.const(int(coeffs[mask]))
        for p in to_positions(int(mask)):
            term = term * factors[p - 1]
        out = out + term
    return out


def one_minus(poly: SparsePolynomial, n: int) -> SparsePolynomial:
    """Substitute x_i -> 1 - x_i and y_j -> 1 - y_j."""
    sub = {}
    for i in range(1, n + 1):
        sub[var("x", i)] = 1 - x(i)
        sub[var("y", i)] = 1 - y(i)
    return poly.substitute(sub)


# ---------------------------------------------------------------------------
# pipe dreams

_MOVES = {"N": (-1, 0), "E": (0, 1)}


def _follow(crossings: set, n: int, r: int, c: int, heading: str) -> list:
    """Crossing tiles met by a pipe leaving cell (r, c) heading N or E."""
    met = []
    while True:
        dr, dc = _MOVES[heading]
        r, c = r + dr, c + dc
        if not (1 <= r <= n and 1 <= c <= n):
            return met
        if (r, c) in crossings:
            met.append((r, c))
        else:
            # elbow: entering from the south turns east, from the west turns north
            heading = "E" if heading == "N" else "N"


def pipe_absorbable_elbows(n: int, crossings) -> set:
    """Elbow tiles whose two pipes cross again to the northeast."""
    crossings = set(crossings)
    out = set()
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            if (r, c) in crossings:
                continue
            up = set(_follow(crossings, n, r, c, "N"))
            right = set(_follow(crossings, n, r, c, "E"))
            if up & right:
                out.add((r, c))
    return out


def reduced_pipe_dreams(n: int, w) -> list:
    """Reduced pipe dreams of ``w`` as sorted lists of crossing cells."""
    word, grid = square_word(n)
    cplx = build_complex(SymmetricGroup(2 * n), word, embed(w, n))
    return sorted(sorted(grid.cell(p) for p in D) for D in cplx.reduced_subwords())


def render_pipe_dream(n: int, crossings) -> str:
    crossings = set(map(tuple, crossings))
    return "\n".join(
        " ".join("+" if (r, c) in crossings else "·" for c in range(1, n + 1)) for r in range(1, n + 1)
    )


def pipe_dream_absorbable_check(n: int, w) -> bool:
    """Absorbable letters of every facet agree with the elbow/pipe criterion."""
    word, grid = square_word(n)
    data = SubwordData(SymmetricGroup(2 * n), word)
    t = data.index(embed(w, n))
    for D in data.reduced_masks(t):
        cells = {grid.cell(p) for p in to_positions(int(D))}
        absorbed = {grid.cell(p) for p in to_positions(data.absorbable_mask(int(D)))}
        if absorbed != pipe_absorbable_elbows(n, cells):
            return False
    return True


# ---------------------------------------------------------------------------
# the porism


def porism_scan(n: int) -> bool:
    """Every squarefree z^P has coefficient +-1 in exactly one dual K-polynomial, that of delta(P).

    Coefficients come from face enumeration of each Delta(Q_{n x n}, w); the
    expected permutation from a direct Demazure product of P.
    """
    return not porism_failures(n)


def porism_failures(n: int) -> list:
    word, grid = square_word(n)
    sys = SymmetricGroup(2 * n)
    m = len(word)
    data = SubwordData(sys, word)
    targets = sorted(set(int(t) for t in np.unique(data.delta)))
    nonzero: dict = {}
    for t in targets:
        w = data.table.elements[t]
        cplx = build_complex(sys, word, w)
        face = AbstractComplex.from_subword_complex(cplx).face_indicator()
        coeffs = dual_faces_coeffs(face, m)
        for P in np.flatnonzero(coeffs):
            nonzero.setdefault(int(P), []).append((w, int(coeffs[P])))
    failures = []
    for P in range(1 << m):
        expected = demazure_product(sys, [word[p - 1] for p in to_positions(P)])
        hits = nonzero.get(P, [])
        if len(hits) != 1 or hits[0][0] != expected or abs(hits[0][1]) != 1:
            failures.append((to_positions(P), hits))
    return failures


def dual_coefficient(n: int, w, P) -> int:
    """Coefficient of z^P (P a set of grid cells) in the dual K-polynomial of Delta(Q_{n x n}, w)."""
    word, grid = square_word(n)
    data = SubwordData(SymmetricGroup(2 * n), word)
    coeffs = dual_demazure_coeffs(data, data.index(embed(w, n)))
    mask = 0
    for r, c in P:
        mask |= 1 << (grid.position(r, c) - 1)
    return int(coeffs[mask])


__all__ = [
    "Grid",
    "coeffs_to_poly",
    "dual_coefficient",
    "embed",
    "fomin_kirillov_expand",
    "grothendieck_from_complex",
    "grothendieck_recursive",
    "one_minus",
    "pipe_dream_absorbable_check",
    "porism_scan",
    "render_pipe_dream",
    "square_word",
    "top_grothendieck",
]

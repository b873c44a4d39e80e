"""Subword complexes Delta(Q, pi).

A face is stored as the set of positions it *omits* from the word: the face
``Q \\ P`` is the tuple of positions not in ``P``.  Positions are 1-based and
position sets are always sorted tuples; lists of them are sorted
lexicographically.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coxeter import (
    LEFT,
    CoxeterSystem,
    bruhat_leq,
    contains_target,
    demazure_product,
    evaluate_word,
    group_table,
)

MAX_POSITIONS = 64


class SizeError(ValueError):
    """Input exceeds a configured enumeration cap."""


class VoidComplexError(ValueError):
    """An operation needs a nonvoid complex (the word does not contain the target)."""


def max_faces() -> int:
    return int(float(os.environ.get("COXETER_MAX_FACES", "1e6")))


def check_subset_space(m: int) -> None:
    if m > MAX_POSITIONS:
        raise SizeError(f"words longer than {MAX_POSITIONS} letters are not supported")
    if (1 << m) > max_faces():
        raise SizeError(f"2^{m} subwords exceed COXETER_MAX_FACES={max_faces()}")


def to_mask(positions) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << (int(p) - 1)
    return mask


def to_positions(mask: int) -> tuple:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def complement(positions, m: int) -> tuple:
    s = set(positions)
    return tuple(p for p in range(1, m + 1) if p not in s)


def subword(word, positions) -> tuple:
    return tuple(word[p - 1] for p in sorted(positions))


# ---------------------------------------------------------------------------
# dense per-word tables


class SubwordData:
    """Demazure products of every subword of a fixed word, as group indices."""

    def __init__(self, sys: CoxeterSystem, word):
        self.sys = sys
        self.word = sys.check_word(word)
        self.m = len(self.word)
        check_subset_space(self.m)
        self.table = group_table(sys)
        letters = np.array([a - 1 for a in self.word], dtype=np.int64)
        self.delta = kernels.subset_demazure(letters, self.table.right, self.table.lengths)
        self.full = (1 << self.m) - 1
        self.popcount = kernels.popcounts(self.m)

    def index(self, w) -> int:
        return self.table.index[tuple(w)]

    def length(self, t: int) -> int:
        return int(self.table.lengths[t])

    def contains(self, t: int) -> bool:
        return bool(self.table.upper_set(self.table.elements[t])[self.delta[self.full]])

    def face_indicator(self, t: int) -> np.ndarray:
        """``face[F]`` is True iff ``F`` (a mask of omitted positions) is a face."""
        up = self.table.upper_set(self.table.elements[t])
        return up[self.delta[::-1]]

    def reduced_masks(self, t: int) -> np.ndarray:
        """Masks ``D`` representing the target: ``|D| = length`` and ``delta(D) = target``."""
        sel = (self.delta == t) & (self.popcount == self.length(t))
        return np.flatnonzero(sel)

    def facet_masks(self, t: int) -> np.ndarray:
        return self.full ^ self.reduced_masks(t)

    def simplify_mask(self, P: int) -> int:
        kept = 0
        prefix = 0
        for k in range(self.m):
            bit = 1 << k
            if P & bit:
                if self.delta[prefix | bit] != self.delta[prefix]:
                    kept |= bit
                prefix |= bit
        return kept

    def absorbable_mask(self, D: int) -> int:
        d = self.delta[D]
        out = 0
        for i in range(self.m):
            bit = 1 << i
            if D & bit:
                continue
            T = D | bit
            if self.delta[T] != d:
                continue
            js = [j for j in range(self.m) if D >> j & 1 and self.delta[T ^ (1 << j)] == d]
            if len(js) != 1:
                raise AssertionError(f"exchange partner not unique for {to_positions(T)}")
            if js[0] < i:
                out |= bit
        return out


# ---------------------------------------------------------------------------
# the complex


@dataclass(frozen=True)
class Classification:
    kind: str  # "sphere" | "ball" | "void"
    dim: int | None = None

    def __str__(self):
        if self.kind == "void":
            return "void"
        return f"{self.kind}({self.dim})"


@dataclass(frozen=True)
class SubwordComplex:
    system: CoxeterSystem
    word: tuple
    target: tuple
    facets: tuple
    length: int
    _faces: list = field(default=None, compare=False, repr=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.word)

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        return self.m - self.length - 1

    def facet_masks(self) -> list:
        return [to_mask(f) for f in self.facets]

    def faces(self) -> list:
        """Every face, sorted lexicographically (includes the empty face)."""
        if self._faces is None:
            seen = set()
            for f in self.facets:
                for k in range(len(f) + 1):
                    seen.update(itertools.combinations(f, k))
            object.__setattr__(self, "_faces", sorted(seen))
        return self._faces

    def reduced_subwords(self) -> list:
        return sorted(complement(f, self.m) for f in self.facets)

    def to_json(self) -> dict:
        c = classify(self)
        return {
            "word": list(self.word),
            "target": self.system.format(self.target),
            "facets": [list(f) for f in self.facets],
            "classification": c.kind,
            "dim": c.dim,
        }


def _facets_dfs(sys, word, target, cap):
    m = len(word)
    suffix = [sys.identity()] * (m + 1)
    for k in range(m - 1, -1, -1):
        w = suffix[k + 1]
        v = sys.apply_gen(w, word[k], LEFT)
        suffix[k] = v if sys.length(v) > sys.length(w) else w
    found = []

    def rec(k, rest, chosen):
        lr = sys.length(rest)
        if lr == 0:
            found.append(chosen)
            if len(found) > cap:
                raise SizeError(f"more than {cap} facets")
            return
        if m - k < lr or not bruhat_leq(sys, rest, suffix[k]):
            return
        v = sys.apply_gen(rest, word[k], LEFT)
        if sys.length(v) < lr:
            rec(k + 1, v, chosen + (k + 1,))
        rec(k + 1, rest, chosen)

    rec(0, tuple(target), ())
    return found


def _facets_brute(sys, word, target):
    m = len(word)
    check_subset_space(m)
    ell = sys.length(target)
    return [
        pos
        for pos in itertools.combinations(range(1, m + 1), ell)
        if evaluate_word(sys, subword(word, pos)) == tuple(target)
    ]


def build_complex(sys: CoxeterSystem, word, target, brute: bool = False) -> SubwordComplex:
    """Delta(word, target); void (no facets) when the word does not contain the target.

    Facets come from a depth-first search over positions pruned by suffix
    Demazure products; ``brute=True`` filters all subsets instead.
    """
    word = sys.check_word(word)
    target = tuple(target)
    if brute:
        reduced = _facets_brute(sys, word, target)
    else:
        if len(word) > MAX_POSITIONS:
            raise SizeError(f"words longer than {MAX_POSITIONS} letters are not supported")
        reduced = _facets_dfs(sys, word, target, max_faces())
    m = len(word)
    facets = sorted(set(complement(d, m) for d in reduced))
    ell = sys.length(target)
    for f in facets:
        if len(f) != m - ell:
            raise AssertionError(f"impure facet {f}")
    return SubwordComplex(sys, word, target, tuple(facets), ell)


def _check_positions(cplx, F) -> tuple:
    F = tuple(sorted(set(int(p) for p in F)))
    if F and (F[0] < 1 or F[-1] > cplx.m):
        raise ValueError(f"positions {F} outside 1..{cplx.m}")
    return F


def is_face(cplx: SubwordComplex, F) -> bool:
    F = _check_positions(cplx, F)
    if cplx.is_void:
        return False
    return contains_target(cplx.system, subword(cplx.word, complement(F, cplx.m)), cplx.target)


def link(cplx: SubwordComplex, F) -> list:
    F = _check_positions(cplx, F)
    if not is_face(cplx, F):
        raise ValueError(f"{F} is not a face")
    Fs = set(F)
    faces = set(cplx.faces())
    return sorted(
        G for G in faces if not Fs.intersection(G) and tuple(sorted(Fs.union(G))) in faces
    )


def deletion(cplx: SubwordComplex, F) -> list:
    F = _check_positions(cplx, F)
    if not is_face(cplx, F):
        raise ValueError(f"{F} is not a face")
    Fs = set(F)
    return sorted(G for G in cplx.faces() if not Fs.intersection(G))


def maximal_faces(faces) -> list:
    sets = [frozenset(f) for f in faces]
    return sorted(tuple(sorted(f)) for f in sets if not any(f < g for g in sets))


def classify(cplx: SubwordComplex) -> Classification:
    if cplx.is_void:
        return Classification("void")
    sys = cplx.system
    if demazure_product(sys, cplx.word) == cplx.target:
        return Classification("sphere", cplx.dim)
    return Classification("ball", cplx.dim)


def boundary_faces(cplx: SubwordComplex) -> list:
    """Faces ``Q \\ P`` whose complement has Demazure product different from the target."""
    sys = cplx.system
    return [
        F
        for F in cplx.faces()
        if demazure_product(sys, subword(cplx.word, complement(F, cplx.m))) != cplx.target
    ]


# ---------------------------------------------------------------------------
# vertex decomposition


@dataclass(frozen=True)
class DecompositionTree:
    """Node splitting at ``vertex``; a leaf (``vertex is None``) is the complex {empty}.

    ``deletion is None`` means the deletion equals the link (the vertex is a
    cone point); ``link is None`` means the position is not a vertex at all.
    """

    vertex: int | None = None
    link: "DecompositionTree | None" = None
    deletion: "DecompositionTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.vertex is None

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        kids = [t.depth() for t in (self.link, self.deletion) if t is not None]
        return 1 + max(kids)

    def leaves(self) -> int:
        if self.is_leaf:
            return 1
        return sum(t.leaves() for t in (self.link, self.deletion) if t is not None)

    def shelling_order(self) -> list:
        """Facets (as masks) in deletion-then-link order."""
        if self.is_leaf:
            return [0]
        out = []
        if self.deletion is not None:
            out.extend(self.deletion.shelling_order())
        if self.link is not None:
            bit = 1 << (self.vertex - 1)
            out.extend(f | bit for f in self.link.shelling_order())
        return out


def vertex_decompose(sys: CoxeterSystem, word, target) -> DecompositionTree:
    word = sys.check_word(word)
    target = tuple(target)
    if not contains_target(sys, word, target):
        raise VoidComplexError("the word does not contain the target")
    return _decompose(sys, word, 0, target)


def _decompose(sys, word, off, target):
    if off == len(word):
        return DecompositionTree()
    rest = word[off + 1:]
    s = word[off]
    left = sys.apply_gen(target, s, LEFT)
    if sys.length(left) > sys.length(target):
        return DecompositionTree(off + 1, _decompose(sys, word, off + 1, target), None)
    lk = _decompose(sys, word, off + 1, target) if contains_target(sys, rest, target) else None
    dl = _decompose(sys, word, off + 1, left)
    return DecompositionTree(off + 1, lk, dl)


# ---------------------------------------------------------------------------
# simplification and absorbable letters


def simplify(sys: CoxeterSystem, word, P) -> tuple:
    """Drop each letter of ``P`` that leaves the running Demazure product unchanged."""
    word = sys.check_word(word)
    w = sys.identity()
    lw = 0
    kept = []
    for p in sorted(P):
        v = sys.apply_gen(w, word[p - 1])
        lv = sys.length(v)
        if lv > lw:
            kept.append(p)
            w, lw = v, lv
    return tuple(kept)


def absorbable_set(sys: CoxeterSystem, word, D) -> tuple:
    """Positions ``i`` outside the reduced subword ``D`` that it absorbs.

    ``i`` is absorbable when adding it keeps the Demazure product and the
    letter of ``D`` that could be exchanged for it sits earlier than ``i``.
    """
    word = sys.check_word(word)
    D = tuple(sorted(D))
    prod = demazure_product(sys, subword(word, D))
    if sys.length(prod) != len(D):
        raise ValueError(f"{D} is not a reduced subword")
    out = []
    for i in range(1, len(word) + 1):
        if i in D:
            continue
        T = tuple(sorted(D + (i,)))
        if demazure_product(sys, subword(word, T)) != prod:
            continue
        partners = [
            j for j in D if demazure_product(sys, subword(word, [p for p in T if p != j])) == prod
        ]
        if len(partners) != 1:
            raise AssertionError(f"exchange partner not unique for {T}")
        if partners[0] < i:
            out.append(i)
    return tuple(out)


# ---------------------------------------------------------------------------
# facet adjacency graph


@dataclass(frozen=True)
class FacetGraph:
    """Facets as vertices; one directed edge per interior ridge."""

    facets: tuple  # facet position tuples, lex-sorted
    edges: tuple  # (source index, target index)

    def is_acyclic(self) -> bool:
        n = len(self.facets)
        indeg = [0] * n
        adj = [[] for _ in range(n)]
        for a, b in self.edges:
            adj[a].append(b)
            indeg[b] += 1
        stack = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in adj[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == n

    def sinks(self) -> list:
        has_out = {a for a, _ in self.edges}
        return [v for v in range(len(self.facets)) if v not in has_out]

    def sources(self) -> list:
        has_in = {b for _, b in self.edges}
        return [v for v in range(len(self.facets)) if v not in has_in]

    def random_linear_extensions(self, count: int, seed: int) -> list:
        """``count`` seeded topological orders, each a list of facet indices."""
        src = np.array([a for a, _ in self.edges], dtype=np.int64)
        dst = np.array([b for _, b in self.edges], dtype=np.int64)
        orders = kernels.random_linear_extensions(len(self.facets), src, dst, count, seed)
        return [list(map(int, row)) for row in orders]


def facet_adjacency_graph(cplx: SubwordComplex) -> FacetGraph:
    """Edges point toward the facet ``Q \\ D`` where ``D`` is the simplification of the ridge's complement."""
    if cplx.is_void:
        raise VoidComplexError("empty facet adjacency graph of a void complex")
    data = SubwordData(cplx.system, cplx.word)
    edges = facet_edges(data, data.index(cplx.target), [to_mask(f) for f in cplx.facets])
    return FacetGraph(cplx.facets, tuple(edges))


def facet_edges(data: SubwordData, t: int, facet_masks) -> list:
    """Directed interior-ridge edges between facets given as masks (mask-level core)."""
    full = data.full
    where = {int(f): k for k, f in enumerate(facet_masks)}
    ridges = {}
    for f in facet_masks:
        D = full ^ int(f)
        for i in range(data.m):
            bit = 1 << i
            if D & bit:
                continue
            T = D | bit
            if data.delta[T] == t:
                ridges.setdefault(T, set()).add(full ^ D)
    edges = []
    for T, fs in sorted(ridges.items()):
        if len(fs) != 2:
            raise AssertionError(f"interior ridge {to_positions(full ^ T)} in {len(fs)} facets")
        sink = full ^ data.simplify_mask(T)
        (other,) = fs - {sink}
        edges.append((where[other], where[sink]))
    return sorted(edges)


# ---------------------------------------------------------------------------
# greedoid exchange


def feasible_family(sys: CoxeterSystem, word, target) -> set:
    """Reduced subwords ``Y`` contained in some reduced subword representing the target."""
    cplx = build_complex(sys, word, target)
    out = set()
    for D in cplx.reduced_subwords():
        for k in range(len(D) + 1):
            for Y in itertools.combinations(D, k):
                if Y in out:
                    continue
                if sys.length(evaluate_word(sys, subword(word, Y))) == len(Y):
                    out.add(Y)
    return out


def exchange_candidates(family: set, X, Y) -> list:
    """Elements ``x`` of ``X \\ Y`` with ``Y + x`` feasible (empty list = exchange fails)."""
    X = tuple(sorted(X))
    Y = tuple(sorted(Y))
    return [x for x in X if x not in Y and tuple(sorted(Y + (x,))) in family]

"""Independent topological checks: f-vectors, integer homology, shellings, ridges."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .complex import check_subset_space, to_mask, to_positions


@dataclass(frozen=True)
class AbstractComplex:
    """Simplicial complex on vertices ``1..n`` given by its facets (position tuples)."""

    n: int
    facets: tuple

    @classmethod
    def from_facets(cls, n: int, facets) -> "AbstractComplex":
        sets = {frozenset(f) for f in facets}
        maximal = [f for f in sets if not any(f < g for g in sets)]
        return cls(n, tuple(sorted(tuple(sorted(f)) for f in maximal)))

    @classmethod
    def from_subword_complex(cls, cplx) -> "AbstractComplex":
        return cls(cplx.m, tuple(cplx.facets))

    def face_indicator(self) -> np.ndarray:
        check_subset_space(self.n)
        marks = np.zeros(1 << self.n, dtype=np.bool_)
        for f in self.facets:
            marks[to_mask(f)] = True
        return kernels.down_closure(marks, self.n)

    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integer homology; entry ``k`` of each list is dimension ``k - 1``."""

    betti: tuple
    torsion: tuple
    fvector: tuple

    @property
    def euler(self) -> int:
        """Unreduced Euler characteristic: alternating sum over nonempty faces."""
        return sum((-1) ** d * f for d, f in enumerate(self.fvector[1:]))

    @property
    def reduced_euler(self) -> int:
        return sum((-1) ** (k - 1) * f for k, f in enumerate(self.fvector))

    def rank(self, dim: int) -> int:
        k = dim + 1
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def is_acyclic(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def is_sphere_homology(self, dim: int) -> bool:
        if any(self.torsion):
            return False
        return all(b == (1 if k - 1 == dim else 0) for k, b in enumerate(self.betti)) and (
            -1 <= dim < len(self.betti) - 1
        )

    def to_json(self) -> dict:
        return {
            "reduced_homology": [
                {"dim": k - 1, "rank": b, "torsion": list(t)}
                for k, (b, t) in enumerate(zip(self.betti, self.torsion))
                if b or t
            ],
            "f_vector": list(self.fvector),
            "euler_characteristic": self.euler,
        }


def homology_from_indicator(face: np.ndarray, n: int) -> HomologyProfile:
    counts, betti, torsion = kernels.homology_data(face, n)
    fvec = [int(c) for c in counts]
    while len(fvec) > 1 and fvec[-1] == 0:
        fvec.pop()
    return HomologyProfile(tuple(betti), tuple(tuple(t) for t in torsion), tuple(fvec))


def reduced_homology(cplx) -> HomologyProfile:
    """Reduced homology over Z via Smith normal form of the boundary maps.

    Accepts an :class:`AbstractComplex` or a subword complex.
    """
    if not isinstance(cplx, AbstractComplex):
        cplx = AbstractComplex.from_subword_complex(cplx)
    return homology_from_indicator(cplx.face_indicator(), cplx.n)


def verify_shelling(order) -> bool:
    """Whether the facet sequence is a shelling.

    Each facet must meet the union of the earlier ones in a subcomplex
    generated by codimension-1 faces of that facet.
    """
    masks = [f if isinstance(f, (int, np.integer)) else to_mask(f) for f in order]
    return bool(kernels.check_shellings(np.array([masks], dtype=np.int64))[0])


def ridge_degrees(facets) -> Counter:
    masks = [f if isinstance(f, (int, np.integer)) else to_mask(f) for f in facets]
    deg = Counter()
    for f in masks:
        g = int(f)
        while g:
            low = g & -g
            deg[int(f) ^ low] += 1
            g ^= low
    return deg


def ridge_degree_check(facets) -> bool:
    """Every codimension-1 face lies in at most two facets."""
    if hasattr(facets, "facets"):
        facets = facets.facets
    return all(d <= 2 for d in ridge_degrees(facets).values())


def topological_boundary(facets, n: int) -> list:
    """Faces lying in some ridge that is contained in exactly one facet."""
    check_subset_space(n)
    marks = np.zeros(1 << n, dtype=np.bool_)
    for r, d in ridge_degrees(facets).items():
        if d == 1:
            marks[r] = True
    closed = kernels.down_closure(marks, n)
    return sorted(to_positions(int(F)) for F in np.flatnonzero(closed))

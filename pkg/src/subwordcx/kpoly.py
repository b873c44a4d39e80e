"""K-polynomials (Hilbert numerators) of subword complexes and their Alexander duals.

All of these are multilinear in the vertex variables, so the array-level
functions work on dense coefficient vectors indexed by subset masks; the
public functions convert to :class:`SparsePolynomial`.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .complex import SubwordData, SubwordComplex, build_complex, to_positions
from .coxeter import CoxeterSystem
from .poly import SparsePolynomial, Var, var
from .topology import AbstractComplex


def default_variables(m: int) -> list:
    return [var("z", k) for k in range(1, m + 1)]


def coeffs_to_poly(coeffs, variables) -> SparsePolynomial:
    terms = {}
    for mask in np.flatnonzero(coeffs):
        mono = tuple((variables[p - 1], 1) for p in to_positions(int(mask)))
        terms[mono] = int(coeffs[mask])
    return SparsePolynomial(terms)


def poly_to_coeffs(poly: SparsePolynomial, variables) -> np.ndarray:
    """Inverse of :func:`coeffs_to_poly` for multilinear polynomials."""
    where = {v: k for k, v in enumerate(variables)}
    out = np.zeros(1 << len(variables), dtype=np.int64)
    for mono, c in poly.terms.items():
        mask = 0
        for v, e in mono:
            if e != 1:
                raise ValueError("polynomial is not multilinear")
            mask |= 1 << where[v]
        out[mask] += c
    return out


# ---------------------------------------------------------------------------
# coefficient vectors


def faces_coeffs(face: np.ndarray, m: int) -> np.ndarray:
    """sum over faces D of prod_{i in D} z_i prod_{i not in D} (1 - z_i)."""
    return kernels.mobius(face.astype(np.int64), m)


def dual_faces_coeffs(face: np.ndarray, m: int) -> np.ndarray:
    """sum over faces D of prod_{i not in D} z_i prod_{i in D} (1 - z_i)."""
    return kernels.mobius(face[::-1].astype(np.int64), m)


def _signed_indicator(data: SubwordData, t: int) -> np.ndarray:
    ell = data.length(t)
    sign = np.where((data.popcount - ell) & 1, -1, 1)
    return np.where(data.delta == t, sign, 0).astype(np.int64)


def demazure_coeffs(data: SubwordData, t: int) -> np.ndarray:
    """sum over P with delta(P) = target of (-1)^(|P| - l) (1 - z)^P."""
    sup = kernels.superset_sum(_signed_indicator(data, t), data.m)
    return np.where(data.popcount & 1, -sup, sup)


def dual_demazure_coeffs(data: SubwordData, t: int) -> np.ndarray:
    """sum over P with delta(P) = target of (-1)^(|P| - l) z^P."""
    return _signed_indicator(data, t)


def absorbable_masks(data: SubwordData, reduced) -> np.ndarray:
    return np.array([data.absorbable_mask(int(D)) for D in reduced], dtype=np.int64)


def shelling_coeffs(data: SubwordData, t: int) -> np.ndarray:
    """sum over facets Q \\ D of (1 - z)^D z^abs(D)."""
    reduced = data.reduced_masks(t)
    return kernels.shelling_poly(reduced, absorbable_masks(data, reduced), data.m)


def invert_coeffs(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Substitute z_i -> 1 - z_i in a multilinear polynomial."""
    pc = kernels.popcounts(m)
    sup = kernels.superset_sum(coeffs, m)
    return np.where(pc & 1, -sup, sup)


def hochster_coeffs(betti: np.ndarray, m: int) -> np.ndarray:
    """sum_j (-1)^j beta_{j,P} z^P from link Betti numbers indexed by face masks."""
    signs = np.where(np.arange(betti.shape[1]) & 1, -1, 1)
    per_face = betti @ signs
    return per_face[::-1].astype(np.int64)


# ---------------------------------------------------------------------------
# public API


def _vars(m, variables):
    return default_variables(m) if variables is None else list(variables)


def kpoly_faces(cplx: SubwordComplex, variables=None) -> SparsePolynomial:
    """K-polynomial from the face enumeration (the oracle route)."""
    if cplx.is_void:
        return SparsePolynomial()
    face = AbstractComplex.from_subword_complex(cplx).face_indicator()
    return coeffs_to_poly(faces_coeffs(face, cplx.m), _vars(cplx.m, variables))


def kpoly_demazure(sys: CoxeterSystem, word, target, variables=None) -> SparsePolynomial:
    data = SubwordData(sys, word)
    return coeffs_to_poly(demazure_coeffs(data, data.index(target)), _vars(data.m, variables))


def kpoly_shelling(sys: CoxeterSystem, word, target, variables=None) -> SparsePolynomial:
    data = SubwordData(sys, word)
    return coeffs_to_poly(shelling_coeffs(data, data.index(target)), _vars(data.m, variables))


def kpoly_dual(sys: CoxeterSystem, word, target, variables=None, method: str = "demazure") -> SparsePolynomial:
    """Hilbert numerator of the Alexander dual ideal.

    ``method="demazure"`` sums signed monomials over subwords with Demazure
    product equal to the target; ``method="faces"`` sums over faces of the
    complex.  :func:`kpoly_dual_checked` runs both.
    """
    data = SubwordData(sys, word)
    vs = _vars(data.m, variables)
    if method == "demazure":
        return coeffs_to_poly(dual_demazure_coeffs(data, data.index(target)), vs)
    if method == "faces":
        cplx = build_complex(sys, word, target)
        if cplx.is_void:
            return SparsePolynomial()
        face = AbstractComplex.from_subword_complex(cplx).face_indicator()
        return coeffs_to_poly(dual_faces_coeffs(face, data.m), vs)
    raise ValueError(f"unknown method {method!r}")


def kpoly_dual_checked(sys: CoxeterSystem, word, target, variables=None) -> SparsePolynomial:
    a = kpoly_dual(sys, word, target, variables, "demazure")
    b = kpoly_dual(sys, word, target, variables, "faces")
    if a != b:
        raise AssertionError(f"dual K-polynomials disagree: {a} vs {b}")
    return a


def alexander_inversion_check(sys: CoxeterSystem, word, target) -> bool:
    """K(k[Delta]; z) == K(I*; 1 - z), with the substitution done symbolically."""
    dual = kpoly_dual(sys, word, target)
    m = len(word)
    inverted = dual.substitute({v: 1 - SparsePolynomial.variable(v) for v in default_variables(m)})
    return inverted == kpoly_demazure(sys, word, target)


def hochster_betti(sys: CoxeterSystem, word, target, field: int = 0) -> dict:
    """Betti numbers of the Alexander dual ideal from link homology.

    Keys are ``(j, P)`` with ``P`` a position tuple; only nonzero values are
    returned.  ``field=0`` works over the rationals, a prime ``p`` over GF(p).
    """
    cplx = build_complex(sys, word, target)
    if cplx.is_void:
        return {}
    m = cplx.m
    face = AbstractComplex.from_subword_complex(cplx).face_indicator()
    betti = kernels.link_betti_all(face, m, field)
    full = (1 << m) - 1
    out = {}
    for F in np.flatnonzero(face):
        for j in np.flatnonzero(betti[F]):
            out[(int(j), to_positions(full ^ int(F)))] = int(betti[F, j])
    return dict(sorted(out.items()))


def upper_koszul_betti(sys: CoxeterSystem, word, target, degree) -> list:
    """Reduced Betti numbers over Q of the upper Koszul complex of the dual ideal in ``degree``.

    ``degree`` is an exponent vector over the positions.  The complex has as
    faces the sets ``F`` inside its support with ``z^(degree - F)`` in the
    ideal, and its homology in dimension ``j - 1`` is the Betti number
    ``beta_j`` in that degree.  Index ``k`` of the result is dimension ``k - 1``.
    """
    data = SubwordData(sys, word)
    t = data.index(target)
    face = data.face_indicator(t)
    S = T = 0
    for k, b in enumerate(degree):
        if b:
            S |= 1 << k
        if b == 1:
            T |= 1 << k
    masks = np.arange(1 << data.m)
    # z^c lies in the ideal iff the complement of supp(c) is a face
    koszul = ((masks & ~S) == 0) & face[data.full ^ (S ^ (masks & T))]
    if not koszul.any():
        return []
    _, betti, torsion = kernels.homology_data(koszul, data.m)
    return betti


def hochster_kpoly(betti: dict, m: int, variables=None) -> SparsePolynomial:
    vs = _vars(m, variables)
    out = SparsePolynomial()
    for (j, P), b in betti.items():
        out = out + SparsePolynomial.monomial([vs[p - 1] for p in P], (-1) ** j * b)
    return out


__all__ = [
    "Var",
    "alexander_inversion_check",
    "hochster_betti",
    "hochster_kpoly",
    "upper_koszul_betti",
    "kpoly_demazure",
    "kpoly_dual",
    "kpoly_dual_checked",
    "kpoly_faces",
    "kpoly_shelling",
]

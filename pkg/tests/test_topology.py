import numpy as np
import pytest

from subwordcx.complex import build_complex
from subwordcx.coxeter import SymmetricGroup
from subwordcx.kernels import invariant_factors, snf_diagonal
from subwordcx.topology import (
    AbstractComplex,
    reduced_homology,
    ridge_degree_check,
    topological_boundary,
    verify_shelling,
)

S4 = SymmetricGroup(4)
PENTAGON = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]


def test_empty_complex_homology():
    h = reduced_homology(AbstractComplex.from_facets(1, [()]))
    assert h.betti[0] == 1 and not any(h.betti[1:])
    assert h.is_sphere_homology(-1)
    assert h.fvector == (1,)


def test_pentagon_homology():
    h = reduced_homology(build_complex(S4, (3, 2, 3, 2, 3), (1, 4, 3, 2)))
    assert h.rank(1) == 1 and h.rank(0) == 0 and h.rank(-1) == 0
    assert h.is_sphere_homology(1) and not h.is_acyclic()
    assert h.fvector == (1, 5, 5)
    assert h.euler == 0
    assert h.to_json()["reduced_homology"] == [{"dim": 1, "rank": 1, "torsion": []}]


def test_simplex_is_acyclic():
    h = reduced_homology(AbstractComplex.from_facets(3, [(1, 2, 3)]))
    assert h.is_acyclic() and h.euler == 1


def test_known_spaces():
    # boundary of the tetrahedron: S^2
    tet = AbstractComplex.from_facets(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])
    assert reduced_homology(tet).is_sphere_homology(2)
    # two disjoint points: S^0
    assert reduced_homology(AbstractComplex.from_facets(2, [(1,), (2,)])).is_sphere_homology(0)
    # wedge of two circles
    wedge = AbstractComplex.from_facets(5, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
    assert reduced_homology(wedge).rank(1) == 2


def test_projective_plane_has_torsion():
    # the six-vertex triangulation of RP^2
    rp2 = [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
    ]
    h = reduced_homology(AbstractComplex.from_facets(6, rp2))
    assert h.rank(1) == 0 and h.rank(2) == 0
    assert h.torsion[2] == (2,)
    assert h.euler == 1


def test_verify_shelling_examples():
    assert verify_shelling([(1, 2)])
    assert verify_shelling(PENTAGON)
    assert not verify_shelling([(1, 2), (3, 4), (2, 3), (4, 5), (1, 5)])
    # the last facet of a full cyclic order meets the union in two vertices: fine
    assert verify_shelling([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])


def test_ridge_degree_examples():
    assert ridge_degree_check(PENTAGON)
    assert not ridge_degree_check([(1, 2, 3), (1, 2, 4), (1, 2, 5)])
    assert ridge_degree_check([(1, 2, 3)])
    assert ridge_degree_check(build_complex(S4, (3, 2, 3, 2, 3), (1, 4, 3, 2)))


def test_topological_boundary():
    assert topological_boundary(PENTAGON, 5) == []
    assert topological_boundary([(1, 2), (2, 3)], 3) == [(), (1,), (3,)]


def test_snf_and_invariant_factors():
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert invariant_factors(snf_diagonal(A)) == [2, 6, 12]
    assert snf_diagonal(np.zeros((2, 3), dtype=np.int64)) == []


def test_snf_large_entries_use_exact_path():
    big = 1 << 40
    A = np.array([[big, 0], [0, 3 * big]], dtype=object)
    assert invariant_factors(snf_diagonal(A)) == [big, 3 * big]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sphere_boundary_of_simplex(n):
    facets = [tuple(v for v in range(1, n + 1) if v != k) for k in range(1, n + 1)]
    assert reduced_homology(AbstractComplex.from_facets(n, facets)).is_sphere_homology(n - 2)

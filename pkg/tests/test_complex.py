import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from subwordcx.complex import (
    SizeError,
    SubwordData,
    VoidComplexError,
    absorbable_set,
    boundary_faces,
    build_complex,
    classify,
    deletion,
    exchange_candidates,
    facet_adjacency_graph,
    feasible_family,
    is_face,
    link,
    simplify,
    to_mask,
    to_positions,
    vertex_decompose,
)
from subwordcx.coxeter import (
    Dihedral,
    SignedPermutations,
    SymmetricGroup,
    demazure_product,
    evaluate_word,
)
from subwordcx.grothendieck import embed, square_word
from subwordcx.topology import verify_shelling

S2, S4, S5, S6 = SymmetricGroup(2), SymmetricGroup(4), SymmetricGroup(5), SymmetricGroup(6)
PENTA = (3, 2, 3, 2, 3)
P1432 = (1, 4, 3, 2)
S1 = (2, 1)


@pytest.fixture
def pentagon():
    return build_complex(S4, PENTA, P1432)


def test_pentagon_facets(pentagon):
    assert pentagon.facets == ((1, 2), (1, 5), (2, 3), (3, 4), (4, 5))
    assert pentagon.dim == 1
    assert build_complex(S4, PENTA, P1432, brute=True).facets == pentagon.facets


def test_small_complexes():
    assert build_complex(S2, (1,), (1, 2)).facets == ((1,),)
    void = build_complex(S4, (1, 2), P1432)
    assert void.is_void and str(classify(void)) == "void"
    assert build_complex(S2, (1, 1), S1).facets == ((1,), (2,))


def test_to_json(pentagon):
    js = pentagon.to_json()
    assert js == {
        "word": [3, 2, 3, 2, 3],
        "target": "1432",
        "facets": [[1, 2], [1, 5], [2, 3], [3, 4], [4, 5]],
        "classification": "sphere",
        "dim": 1,
    }


def test_is_face(pentagon):
    assert is_face(pentagon, ())
    assert is_face(pentagon, (1, 2))
    assert not is_face(pentagon, (1, 2, 3))
    with pytest.raises(ValueError):
        is_face(pentagon, (0,))


def test_link_and_deletion(pentagon):
    assert link(pentagon, ()) == pentagon.faces()
    assert link(pentagon, (1,)) == [(), (2,), (5,)]
    assert link(pentagon, (1, 2)) == [()]
    dl = deletion(pentagon, (1,))
    assert [f for f in dl if len(f) == 2] == [(2, 3), (3, 4), (4, 5)]
    assert deletion(pentagon, ()) == pentagon.faces()
    with pytest.raises(ValueError):
        link(pentagon, (1, 3, 5))


def test_link_and_deletion_of_first_vertex_are_subword_complexes():
    sys = S4
    for word in itertools.product((1, 2, 3), repeat=5):
        for target in sorted(set(evaluate_word(sys, w) for w in itertools.product((1, 2, 3), repeat=3))):
            cplx = build_complex(sys, word, target)
            if cplx.is_void or not is_face(cplx, (1,)):
                continue
            shift = lambda faces: sorted(tuple(p - 1 for p in f) for f in faces)  # noqa: E731
            lk = build_complex(sys, word[1:], target)
            assert shift(link(cplx, (1,))) == lk.faces()
            left = sys.apply_gen(target, word[0], "left")
            dl = shift(deletion(cplx, (1,)))
            if sys.length(left) > sys.length(target):
                assert dl == lk.faces()
            else:
                assert dl == build_complex(sys, word[1:], left).faces()


def test_classify_examples(pentagon):
    assert str(classify(pentagon)) == "sphere(1)"
    assert str(classify(build_complex(S2, (1,), S1))) == "sphere(-1)"
    S3 = SymmetricGroup(3)
    assert str(classify(build_complex(S3, (1, 2), (2, 1, 3)))) == "ball(0)"
    assert str(classify(build_complex(S3, (), S3.identity()))) == "sphere(-1)"


def test_boundary_examples(pentagon):
    S3 = SymmetricGroup(3)
    assert boundary_faces(pentagon) == []
    assert boundary_faces(build_complex(S3, (1, 2), (2, 1, 3))) == [()]
    assert boundary_faces(build_complex(S2, (1, 1), S1)) == []


def test_vertex_decomposition(pentagon):
    tree = vertex_decompose(S4, PENTA, P1432)
    order = tree.shelling_order()
    assert sorted(order) == sorted(pentagon.facet_masks())
    assert verify_shelling(order)
    assert tree.depth() <= 5
    leaf = vertex_decompose(S2, (1,), (1, 2))
    assert leaf.leaves() == 1
    assert vertex_decompose(S2, (1, 1), S1).leaves() == 2
    with pytest.raises(VoidComplexError):
        vertex_decompose(S4, (1, 2), P1432)


def test_simplify_examples():
    assert simplify(S4, PENTA, (1, 2, 3)) == (1, 2, 3)
    assert simplify(S2, (1, 1), (1, 2)) == (1,)
    assert simplify(S4, PENTA, (1, 2, 3, 4, 5)) == (1, 2, 3)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=7), st.data())
def test_simplify_is_lex_first(word, data):
    word = tuple(word)
    P = tuple(sorted(data.draw(st.sets(st.integers(1, len(word))))))
    D = simplify(S4, word, P)
    d = demazure_product(S4, [word[p - 1] for p in P])
    assert set(D) <= set(P)
    assert demazure_product(S4, [word[p - 1] for p in D]) == d
    assert S4.length(d) == len(D)
    rivals = [
        C
        for C in itertools.combinations(P, len(D))
        if demazure_product(S4, [word[p - 1] for p in C]) == d
    ]
    assert min(rivals) == D


def test_absorbable_examples():
    word, grid = square_word(3)
    w = embed((1, 3, 2), 3)
    assert grid.position(1, 2) == 2 and grid.position(2, 1) == 6
    assert absorbable_set(S6, word, (2,)) == (6,)
    assert absorbable_set(S6, word, (6,)) == ()
    assert absorbable_set(S4, PENTA, (3, 4, 5)) == ()
    assert build_complex(S6, word, w).reduced_subwords() == [(2,), (6,)]
    with pytest.raises(ValueError):
        absorbable_set(S4, PENTA, (1, 3))


def test_absorbable_mask_agrees_with_element_level():
    for word in itertools.product((1, 2, 3), repeat=5):
        data = SubwordData(S4, word)
        for t in np.unique(data.delta):
            for D in data.reduced_masks(int(t)):
                fast = to_positions(data.absorbable_mask(int(D)))
                assert fast == absorbable_set(S4, word, to_positions(int(D)))


def test_facet_graph_examples(pentagon):
    g = facet_adjacency_graph(build_complex(S2, (1,), (1, 2)))
    assert g.edges == ()
    g = facet_adjacency_graph(build_complex(S2, (1, 1), S1))
    # the ridge {} lies in facets {1} and {2}; P = {1,2} simplifies to {1}
    assert g.facets == ((1,), (2,)) and g.edges == ((0, 1),)
    g = facet_adjacency_graph(pentagon)
    assert len(g.edges) == 5 and g.is_acyclic()
    # the unique source is the facet whose complement absorbs nothing
    (src,) = g.sources()
    assert g.facets[src] == (1, 2)
    assert absorbable_set(S4, PENTA, (3, 4, 5)) == ()
    assert [g.facets[s] for s in g.sinks()] == [(4, 5)]
    for order in g.random_linear_extensions(20, seed=3):
        assert verify_shelling([g.facets[i] for i in order])


def test_facet_graph_void():
    with pytest.raises(VoidComplexError):
        facet_adjacency_graph(build_complex(S4, (1, 2), P1432))


def test_greedoid_counterexample():
    word = (4, 3, 2, 1, 4, 3, 2, 4, 3, 4)
    family = feasible_family(S5, word, (1, 2, 5, 4, 3))
    assert (2, 5, 6) in family and (1, 9) in family
    assert exchange_candidates(family, (2, 5, 6), (1, 9)) == []


@pytest.mark.parametrize(
    "sys,word",
    [
        (S4, (1, 2, 3, 1, 2, 1, 3, 2)),
        (SignedPermutations(3), (3, 2, 3, 1, 2, 3, 2)),
        (Dihedral(5), (1, 2, 1, 2, 1, 2, 1)),
    ],
)
def test_dfs_matches_brute_force(sys, word):
    data = SubwordData(sys, word)
    for t in np.unique(data.delta):
        target = data.table.elements[int(t)]
        for pi in data.table.elements:
            if sys.length(pi) > sys.length(target):
                continue
            a = build_complex(sys, word, pi)
            b = build_complex(sys, word, pi, brute=True)
            assert a.facets == b.facets
            assert sorted(a.facet_masks()) == sorted(int(f) for f in data.facet_masks(data.index(pi)))


def test_face_indicator_matches_faces(pentagon):
    data = SubwordData(S4, PENTA)
    face = data.face_indicator(data.index(P1432))
    assert sorted(to_positions(int(F)) for F in np.flatnonzero(face)) == pentagon.faces()


def test_size_cap(monkeypatch):
    monkeypatch.setenv("COXETER_MAX_FACES", "3")
    with pytest.raises(SizeError):
        build_complex(S4, PENTA, P1432)


def test_mask_helpers():
    assert to_mask((1, 3)) == 0b101
    assert to_positions(0b101) == (1, 3)
    assert to_positions(0) == ()

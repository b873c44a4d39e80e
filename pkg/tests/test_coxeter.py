import itertools
import random
from collections import deque
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from subwordcx.coxeter import (
    LEFT,
    RIGHT,
    CoxeterError,
    Dihedral,
    SignedPermutations,
    SymmetricGroup,
    apply_gen,
    bruhat_leq,
    bruhat_leq_subword,
    contains_target,
    demazure_product,
    evaluate_word,
    group_table,
    is_reduced,
    length,
    make_system,
    minimal_universal_word,
    parse_word,
    reduced_word,
    reduced_words,
    repetition_number,
)

S3, S4, S6 = SymmetricGroup(3), SymmetricGroup(4), SymmetricGroup(6)


def bfs_lengths(sys):
    dist = {sys.identity(): 0}
    queue = deque([sys.identity()])
    while queue:
        w = queue.popleft()
        for i in range(1, sys.rank + 1):
            v = sys.apply_gen(w, i)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def tableau_leq(a, b):
    # Ehresmann criterion: sorted prefixes compare entrywise
    for k in range(1, len(a)):
        if any(x > y for x, y in zip(sorted(a[:k]), sorted(b[:k]))):
            return False
    return True


def test_apply_gen_examples():
    e = S4.identity()
    assert apply_gen(S4, e, 3, RIGHT) == (1, 2, 4, 3)
    assert apply_gen(S4, (1, 2, 4, 3), 3, RIGHT) == e
    assert apply_gen(S4, (1, 2, 4, 3), 2, RIGHT) == (1, 4, 2, 3)
    # left action swaps values
    assert apply_gen(S4, (1, 2, 4, 3), 2, LEFT) == (1, 3, 4, 2)


def test_apply_gen_rejects_bad_index():
    with pytest.raises(CoxeterError):
        apply_gen(S4, S4.identity(), 4)
    with pytest.raises(CoxeterError):
        apply_gen(S4, S4.identity(), 0)


def test_length_examples():
    assert length(S4, S4.identity()) == 0
    assert length(S4, (1, 4, 3, 2)) == 3
    assert length(S4, (4, 3, 2, 1)) == 6


def test_evaluate_and_reduced():
    assert evaluate_word(S4, ()) == S4.identity()
    assert evaluate_word(S4, (3, 2, 3)) == (1, 4, 3, 2)
    assert evaluate_word(S4, (1, 1)) == S4.identity()
    assert is_reduced(S4, (3, 2, 3))
    assert is_reduced(S4, (2, 3, 2))
    assert not is_reduced(S4, (1, 1))


def test_demazure_examples():
    assert demazure_product(S4, ()) == S4.identity()
    assert demazure_product(S4, (1, 1)) == (2, 1, 3, 4)
    assert demazure_product(S4, (3, 2, 3, 2, 3)) == (1, 4, 3, 2)


def test_bruhat_examples():
    for w in itertools.permutations(range(1, 5)):
        assert bruhat_leq(S4, S4.identity(), w)
    assert bruhat_leq(S4, (1, 4, 2, 3), (1, 4, 3, 2))
    assert not bruhat_leq(S4, (2, 1, 3, 4), (1, 4, 3, 2))


def test_contains_target_examples():
    assert contains_target(S4, (2, 1), S4.identity())
    assert contains_target(S4, (3, 2, 3, 2, 3), (1, 4, 3, 2))
    assert not contains_target(S4, (1, 2), (1, 4, 3, 2))


def test_reduced_words_examples():
    assert reduced_words(S4, S4.identity()) == ((),)
    assert set(reduced_words(S4, (1, 4, 3, 2))) == {(3, 2, 3), (2, 3, 2)}
    assert set(reduced_words(S3, (3, 2, 1))) == {(1, 2, 1), (2, 1, 2)}
    assert list(reduced_words(S4, (4, 3, 2, 1))) == sorted(reduced_words(S4, (4, 3, 2, 1)))


def test_repetition_number_examples():
    assert repetition_number(S4, (), (1, 4, 3, 2)) == 0
    assert repetition_number(S4, (3, 2, 3, 2, 3), (1, 4, 3, 2)) == 4
    assert repetition_number(S3, (1, 2, 1), (3, 2, 1)) == 1


def test_minimal_universal_examples():
    assert minimal_universal_word(S3, S3.identity(), 3) == [()]
    assert minimal_universal_word(S3, (3, 2, 1), 6) == [(1, 2, 1, 2), (2, 1, 2, 1)]
    assert minimal_universal_word(S3, (2, 1, 3), 2) == [(1,)]
    assert minimal_universal_word(S3, (3, 2, 1), 3) == []


def test_parse_and_format():
    assert S4.parse("1432") == (1, 4, 3, 2)
    assert S4.parse("1 4 3 2") == (1, 4, 3, 2)
    assert S4.parse("132") == (1, 3, 2, 4)
    assert S4.format((1, 4, 3, 2)) == "1432"
    B3 = SignedPermutations(3)
    assert B3.parse("2 -1 3") == (2, -1, 3)
    assert B3.format((2, -1, 3)) == "2 -1 3"
    with pytest.raises(CoxeterError):
        S4.parse("1442")
    assert parse_word("3 2 3") == (3, 2, 3)
    assert parse_word("3,2,3") == (3, 2, 3)


def test_make_system():
    assert make_system("A", 4) == S4
    assert make_system("b", 3) == SignedPermutations(3)
    assert make_system("I", 5) == Dihedral(5)
    with pytest.raises(CoxeterError):
        make_system("E", 6)
    with pytest.raises(CoxeterError):
        Dihedral(1)


def test_ranks():
    assert S4.rank == 3
    assert SignedPermutations(3).rank == 3
    assert Dihedral(7).rank == 2


@pytest.mark.parametrize("sys", [SignedPermutations(2), SignedPermutations(3), SignedPermutations(4), SymmetricGroup(5)])
def test_closed_form_length_matches_bfs(sys):
    dist = bfs_lengths(sys)
    assert all(sys.length(w) == d for w, d in dist.items())


def test_group_orders():
    assert len(bfs_lengths(SignedPermutations(3))) == 48
    assert len(bfs_lengths(SignedPermutations(4))) == 384
    for m in range(2, 9):
        assert len(bfs_lengths(Dihedral(m))) == 2 * m


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 8])
def test_dihedral_lengths_from_alternating_words(m):
    sys = Dihedral(m)
    for L in range(m + 1):
        for start in (1, 2):
            word = tuple(start if k % 2 == 0 else 3 - start for k in range(L))
            assert sys.length(evaluate_word(sys, word)) == L
    assert sys.length(evaluate_word(sys, (1, 2) * m)) == 0


def test_generators_are_involutions():
    for sys in (S4, SignedPermutations(3), Dihedral(5)):
        for w in group_table(sys).elements:
            for i in range(1, sys.rank + 1):
                for side in (LEFT, RIGHT):
                    assert sys.apply_gen(sys.apply_gen(w, i, side), i, side) == w


systems = st.sampled_from([SymmetricGroup(5), SignedPermutations(4), Dihedral(7)])


@given(systems, st.lists(st.integers(1, 4), max_size=12), st.integers(1, 4), st.sampled_from([LEFT, RIGHT]))
def test_apply_gen_changes_length_by_one(sys, raw, i, side):
    word = tuple((a - 1) % sys.rank + 1 for a in raw)
    i = (i - 1) % sys.rank + 1
    w = evaluate_word(sys, word)
    assert abs(sys.length(sys.apply_gen(w, i, side)) - sys.length(w)) == 1


@given(systems, st.lists(st.integers(1, 4), max_size=10))
def test_demazure_product_dominates_product(sys, raw):
    word = tuple((a - 1) % sys.rank + 1 for a in raw)
    d = demazure_product(sys, word)
    assert bruhat_leq(sys, evaluate_word(sys, word), d)
    assert sys.length(d) <= len(word)
    if is_reduced(sys, word):
        assert d == evaluate_word(sys, word)


def test_bruhat_matches_subword_criterion_on_s4():
    elems = group_table(S4).elements
    for a in elems:
        for b in elems:
            assert bruhat_leq(S4, a, b) == bruhat_leq_subword(S4, a, b)


def test_bruhat_matches_subword_criterion_b3_and_dihedral():
    for sys in (SignedPermutations(3), Dihedral(5)):
        elems = group_table(sys).elements
        for a in elems:
            for b in elems:
                assert bruhat_leq(sys, a, b) == bruhat_leq_subword(sys, a, b)


def test_bruhat_random_pairs_s6():
    rng = random.Random(6)
    base = list(range(1, 7))
    for _ in range(10_000):
        a = tuple(rng.sample(base, 6))
        b = tuple(rng.sample(base, 6))
        assert bruhat_leq(S6, a, b) == tableau_leq(a, b)


def test_bruhat_upper_set_kernel_matches_lifting():
    table = group_table(S4)
    for t in table.elements:
        up = table.upper_set(t)
        assert [bool(x) for x in up] == [bruhat_leq(S4, t, g) for g in table.elements]


@pytest.mark.parametrize("sys", [S4, SignedPermutations(3), Dihedral(6)])
def test_reduced_words_are_reduced_and_counted(sys):
    @lru_cache(maxsize=None)
    def count(w):
        if sys.length(w) == 0:
            return 1
        return sum(count(sys.apply_gen(w, s)) for s in sys.right_descents(w))

    for w in group_table(sys).elements:
        rws = reduced_words(sys, w)
        assert len(rws) == len(set(rws)) == count(w)
        for r in rws:
            assert is_reduced(sys, r) and evaluate_word(sys, r) == w
        assert reduced_word(sys, w) in rws


def test_check_word_rejects_out_of_range():
    with pytest.raises(CoxeterError):
        S4.check_word((1, 4))

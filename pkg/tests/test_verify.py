import json

import numpy as np

from subwordcx.coxeter import SymmetricGroup
from subwordcx.verify import (
    Property,
    Report,
    all_words,
    contained_instances,
    containment_sweep,
    exchange_sweep,
    hochster_sweep,
    kpoly_sweep,
    random_instances,
    run_suite,
    shelling_experiment,
    subset_products,
    sweep_words,
    topology_sweep,
)
from subwordcx.complex import SubwordData
from subwordcx.coxeter import evaluate_word

S4 = SymmetricGroup(4)


def test_property_keeps_first_counterexample():
    p = Property("s", "n")
    p.check(True, word=[1])
    p.check(False, word=(1, 2), mask=np.int64(3))
    p.check(False, word=(9,))
    r = p.result()
    assert not r.passed and r.checked == 3
    assert r.counterexample == {"word": [1, 2], "mask": 3}
    assert "counterexample" in r.line()


def test_experimental_failures_do_not_fail_report():
    bad = Property("s", "belief", experimental=True)
    bad.check(False)
    good = Property("s", "fact")
    good.check(True)
    rep = Report([bad.result(), good.result()])
    assert rep.passed
    assert "FAIL (experimental)" in rep.text()
    json.dumps(rep.to_json())


def test_word_generators():
    assert sum(1 for _ in all_words(3, 3)) == 1 + 3 + 9 + 27
    a = list(sweep_words(3, 9, seed=7, samples=5))
    b = list(sweep_words(3, 9, seed=7, samples=5))
    assert a == b and len(a) == sum(3 ** k for k in range(9)) + 5
    assert len(list(random_instances(S4, 10, 6, 1))) == 10


def test_subset_products():
    data = SubwordData(S4, (1, 2, 1, 3))
    prods = subset_products(data)
    for mask in range(16):
        sub = [data.word[k] for k in range(4) if mask >> k & 1]
        assert data.table.elements[prods[mask]] == evaluate_word(S4, sub)


def test_small_sweeps_pass():
    words = list(all_words(3, 5))
    results = []
    results += containment_sweep(S4, 4)
    results += exchange_sweep(S4, 5)
    results += topology_sweep(S4, contained_instances(S4, words))
    results += shelling_experiment(S4, contained_instances(S4, words), count=10)
    results += kpoly_sweep(S4, contained_instances(S4, words))
    results += hochster_sweep(S4, contained_instances(S4, words))
    for r in results:
        assert r.passed, r.line()
        assert r.checked > 0, r.name


def test_suites_are_deterministic():
    a = run_suite("lemmas", 4, seed=3)
    b = run_suite("lemmas", 4, seed=3)
    assert a.text() == b.text() and a.passed


def test_groth_suite_small():
    rep = run_suite("groth", 3)
    assert rep.passed, rep.text()

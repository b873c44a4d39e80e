"""Time the numba kernels against their numpy fallbacks on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--length 16]

Both paths are called directly, so the ``SUBWORDCX_NUMBA`` flag only matters
in that with ``SUBWORDCX_NUMBA=0`` the "numba" column runs as plain Python.
Outputs of the two paths are compared before anything is timed.
"""
import argparse
import time

import numpy as np

from subwordcx import kernels
from subwordcx._jit import backend_name
from subwordcx.complex import SubwordData
from subwordcx.coxeter import SymmetricGroup
from subwordcx.kpoly import absorbable_masks


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(length, small, seed):
    rng = np.random.default_rng(seed)
    s5 = SymmetricGroup(5)
    word = tuple(int(a) for a in rng.integers(1, 5, size=length))
    data = SubwordData(s5, word)
    table = data.table
    letters = np.array([a - 1 for a in word], dtype=np.int64)
    m = data.m
    signed = rng.integers(-3, 4, size=1 << m).astype(np.int64)

    # a smaller instance for homology, where the work grows much faster
    s4 = SymmetricGroup(4)
    sw = tuple(int(a) for a in rng.integers(1, 4, size=small))
    sd = SubwordData(s4, sw)
    # the contained target with the most facets
    t = max((c for c in range(len(sd.table.elements)) if sd.contains(c)), key=lambda c: len(sd.reduced_masks(c)))
    face = sd.face_indicator(t)
    pc = kernels.popcounts(sd.m)
    reduced = sd.reduced_masks(t)
    absorb = absorbable_masks(sd, reduced)
    facets = sd.facet_masks(t)
    orders = np.array([np.roll(facets, k) for k in range(min(len(facets), 50))], dtype=np.int64)

    yield f"subset_demazure m={m}", kernels._subset_demazure_nb, kernels._subset_demazure_np, (
        letters, table.right, table.lengths)
    yield f"mobius m={m}", kernels._mobius_nb, kernels._mobius_np, (signed, m)
    yield f"superset_sum m={m}", kernels._superset_sum_nb, kernels._superset_sum_np, (signed, m)
    yield f"down_closure m={m}", kernels._down_closure_nb, kernels._down_closure_np, (signed > 2, m)
    yield f"shelling_poly m={sd.m}", kernels._shelling_poly_nb, kernels._shelling_poly_np, (
        np.asarray(reduced, dtype=np.int64), np.asarray(absorb, dtype=np.int64), 1 << sd.m)
    yield f"homology m={sd.m}", _homology_nb, _homology_np, (face, pc, sd.m)
    yield f"link_betti GF(2) m={sd.m}", _links_nb, kernels._link_betti_field_np, (face, pc, sd.m, 2)
    yield f"check_shellings {orders.shape[0]}x{orders.shape[1]}", kernels._check_shellings_nb, \
        kernels._check_shellings_np, (orders,)


def _homology_nb(face, pc, m):
    counts, ranks, _, _ = kernels._homology_nb(face, pc, m)
    return counts, ranks


def _homology_np(face, pc, m):
    counts, ranks, _ = kernels._homology_np(face, pc, m)
    return counts, ranks


def _links_nb(face, pc, m, p):
    out, tors, _ = kernels._link_betti_field_nb(face, pc, m, p)
    return out, tors


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--length", type=int, default=16, help="word length for the subset transforms")
    ap.add_argument("--small", type=int, default=10, help="word length for homology kernels")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"backend flag: {backend_name()}")
    print(f"{'kernel':32s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, nb, npf, inputs in cases(args.length, args.small, args.seed):
        first = nb(*inputs)  # compiles (or loads the cache)
        if not same(first, npf(*inputs)):
            raise SystemExit(f"{name}: backends disagree")
        a = best_of(nb, inputs, args.repeat)
        b = best_of(npf, inputs, args.repeat)
        print(f"{name:32s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:7.1f}x")


if __name__ == "__main__":
    main()

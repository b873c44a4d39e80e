"""Finite Coxeter groups: elements, words, length, Bruhat order, Demazure products.

Conventions used throughout the package:

* generators are numbered ``1..rank`` and words are tuples of generator indices;
* words multiply left to right, and ``w * s_i`` acts on the right of one-line
  notation (it swaps positions ``i`` and ``i + 1``);
* group elements are hashable tuples in a backend-specific normal form.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

Word = tuple

LEFT = "left"
RIGHT = "right"


class CoxeterError(ValueError):
    """Bad generator index, malformed element, or incompatible input."""


class CoxeterSystem:
    """Common interface of the finite backends.

    Subclasses implement ``identity``, ``_right``, ``_left``, ``length``,
    ``inverse``, ``parse`` and ``format``.
    """

    kind = "?"
    rank = 0

    def identity(self):
        raise NotImplementedError

    def length(self, w) -> int:
        raise NotImplementedError

    def inverse(self, w):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, w) -> str:
        raise NotImplementedError

    def _right(self, w, i):
        raise NotImplementedError

    def _left(self, w, i):
        raise NotImplementedError

    def check_gen(self, i: int) -> None:
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.rank:
            raise CoxeterError(f"generator index {i!r} out of range 1..{self.rank}")

    def check_word(self, word) -> Word:
        word = tuple(int(a) for a in word)
        for a in word:
            self.check_gen(a)
        return word

    def apply_gen(self, w, i: int, side: str = RIGHT):
        """Return ``w * s_i`` (``side="right"``) or ``s_i * w`` (``side="left"``)."""
        self.check_gen(i)
        if side == RIGHT:
            return self._right(w, i)
        if side == LEFT:
            return self._left(w, i)
        raise CoxeterError(f"side must be 'left' or 'right', got {side!r}")

    def multiply(self, a, b):
        out = a
        for i in reduced_word(self, b):
            out = self._right(out, i)
        return out

    def right_descents(self, w) -> list[int]:
        lw = self.length(w)
        return [i for i in range(1, self.rank + 1) if self.length(self._right(w, i)) < lw]

    def left_descents(self, w) -> list[int]:
        lw = self.length(w)
        return [i for i in range(1, self.rank + 1) if self.length(self._left(w, i)) < lw]


@dataclass(frozen=True)
class SymmetricGroup(CoxeterSystem):
    """S_n acting on one-line notation; ``s_i`` swaps ``i`` and ``i + 1``."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise CoxeterError("SymmetricGroup needs n >= 1")

    kind = "A"

    @property
    def rank(self) -> int:
        return self.n - 1

    def identity(self):
        return tuple(range(1, self.n + 1))

    def _right(self, w, i):
        w = list(w)
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def _left(self, w, i):
        return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)

    def length(self, w) -> int:
        n = len(w)
        return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])

    def inverse(self, w):
        inv = [0] * len(w)
        for pos, v in enumerate(w, 1):
            inv[v - 1] = pos
        return tuple(inv)

    def longest(self):
        return tuple(range(self.n, 0, -1))

    def parse(self, text: str):
        text = str(text).strip()
        if " " in text or "," in text:
            vals = [int(t) for t in text.replace(",", " ").split()]
        else:
            vals = [int(ch) for ch in text]
        return self.from_list(vals)

    def from_list(self, vals):
        """Accept a permutation of ``1..k`` with ``k <= n``; pad with fixed points."""
        vals = [int(v) for v in vals]
        k = len(vals)
        if k > self.n or sorted(vals) != list(range(1, k + 1)):
            raise CoxeterError(f"{vals} is not a permutation in S_{self.n}")
        return tuple(vals) + tuple(range(k + 1, self.n + 1))

    def format(self, w) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in w)
        return " ".join(str(v) for v in w)


@dataclass(frozen=True)
class SignedPermutations(CoxeterSystem):
    """Type B_n as signed permutations in window notation.

    Generators ``1..n-1`` swap adjacent positions; generator ``n`` negates the
    first entry.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise CoxeterError("SignedPermutations needs n >= 1")

    kind = "B"

    @property
    def rank(self) -> int:
        return self.n

    def identity(self):
        return tuple(range(1, self.n + 1))

    def _right(self, w, i):
        w = list(w)
        if i == self.n:
            w[0] = -w[0]
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def _left(self, w, i):
        if i == self.n:
            return tuple(-v if abs(v) == 1 else v for v in w)
        out = []
        for v in w:
            a = abs(v)
            sign = 1 if v > 0 else -1
            if a == i:
                out.append(sign * (i + 1))
            elif a == i + 1:
                out.append(sign * i)
            else:
                out.append(v)
        return tuple(out)

    def length(self, w) -> int:
        # inv(w) - sum of negative entries
        n = len(w)
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])
        return inv - sum(v for v in w if v < 0)

    def inverse(self, w):
        inv = [0] * len(w)
        for pos, v in enumerate(w, 1):
            inv[abs(v) - 1] = pos if v > 0 else -pos
        return tuple(inv)

    def parse(self, text: str):
        vals = [int(t) for t in str(text).replace(",", " ").split()]
        if len(vals) != self.n or sorted(abs(v) for v in vals) != list(range(1, self.n + 1)):
            raise CoxeterError(f"{vals} is not a signed permutation of rank {self.n}")
        return tuple(vals)

    def format(self, w) -> str:
        return " ".join(str(v) for v in w)


@dataclass(frozen=True)
class Dihedral(CoxeterSystem):
    """Dihedral group of order 2m; elements ``(k, f)`` mean rho^k * s1^f with rho = s1 s2."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise CoxeterError("Dihedral needs m >= 2")

    kind = "I"
    rank = 2

    def identity(self):
        return (0, 0)

    def _mul(self, a, b):
        k, f = a
        k2, g = b
        sign = -1 if f else 1
        return ((k + sign * k2) % self.m, (f + g) % 2)

    def _gen(self, i):
        return (0, 1) if i == 1 else ((-1) % self.m, 1)

    def _right(self, w, i):
        return self._mul(w, self._gen(i))

    def _left(self, w, i):
        return self._mul(self._gen(i), w)

    def length(self, w) -> int:
        return _dihedral_lengths(self.m)[w]

    def inverse(self, w):
        k, f = w
        return w if f else ((-k) % self.m, 0)

    def parse(self, text: str):
        parts = [int(t) for t in str(text).replace(",", " ").split()]
        if len(parts) != 2 or parts[1] not in (0, 1):
            raise CoxeterError(f"dihedral element must be 'k,f', got {text!r}")
        return (parts[0] % self.m, parts[1])

    def format(self, w) -> str:
        return f"{w[0]},{w[1]}"


@lru_cache(maxsize=None)
def _dihedral_lengths(m: int) -> dict:
    sys = Dihedral(m)
    dist = {(0, 0): 0}
    queue = deque([(0, 0)])
    while queue:
        w = queue.popleft()
        for i in (1, 2):
            v = sys._right(w, i)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def make_system(kind: str, param: int) -> CoxeterSystem:
    """``("A", n) -> S_n``, ``("B", n) -> B_n``, ``("I", m) -> I_2(m)``."""
    kind = kind.upper()
    if kind == "A":
        return SymmetricGroup(param)
    if kind == "B":
        return SignedPermutations(param)
    if kind in ("I", "I2", "D", "DIHEDRAL"):
        return Dihedral(param)
    raise CoxeterError(f"unknown Coxeter type {kind!r}")


def parse_word(text) -> Word:
    if isinstance(text, str):
        return tuple(int(t) for t in text.replace(",", " ").split())
    return tuple(int(t) for t in text)


# ---------------------------------------------------------------------------
# element-level operations


def length(sys: CoxeterSystem, w) -> int:
    return sys.length(w)


def apply_gen(sys: CoxeterSystem, w, i: int, side: str = RIGHT):
    return sys.apply_gen(w, i, side)


def evaluate_word(sys: CoxeterSystem, word) -> tuple:
    w = sys.identity()
    for i in sys.check_word(word):
        w = sys._right(w, i)
    return w


def is_reduced(sys: CoxeterSystem, word) -> bool:
    word = sys.check_word(word)
    return sys.length(evaluate_word(sys, word)) == len(word)


def demazure_product(sys: CoxeterSystem, word) -> tuple:
    """Multiply by each letter only when that increases length."""
    w = sys.identity()
    lw = 0
    for i in sys.check_word(word):
        v = sys._right(w, i)
        lv = sys.length(v)
        if lv > lw:
            w, lw = v, lv
    return w


def bruhat_leq(sys: CoxeterSystem, a, b) -> bool:
    """Bruhat comparison ``a <= b`` by the lifting rule on a right descent of ``b``."""
    return _bruhat_leq(sys, tuple(a), tuple(b))


@lru_cache(maxsize=1 << 20)
def _bruhat_leq(sys, a, b) -> bool:
    la, lb = sys.length(a), sys.length(b)
    if la > lb:
        return False
    if la == lb:
        return a == b
    if lb == 0:
        return la == 0
    for i in range(1, sys.rank + 1):
        bs = sys._right(b, i)
        if sys.length(bs) < lb:
            break
    as_ = sys._right(a, i)
    if sys.length(as_) < la:
        return _bruhat_leq(sys, as_, bs)
    return _bruhat_leq(sys, a, bs)


def bruhat_leq_subword(sys: CoxeterSystem, a, b) -> bool:
    """Oracle: some subword of a reduced word of ``b`` represents ``a``."""
    rw = reduced_word(sys, b)
    la = sys.length(a)
    for pos in itertools.combinations(range(len(rw)), la):
        sub = [rw[p] for p in pos]
        if evaluate_word(sys, sub) == tuple(a) and len(sub) == la:
            return True
    return False


def contains_target(sys: CoxeterSystem, word, target) -> bool:
    return bruhat_leq(sys, target, demazure_product(sys, word))


def reduced_word(sys: CoxeterSystem, w) -> Word:
    """One reduced word for ``w`` (peeling the smallest right descent each time)."""
    out = []
    lw = sys.length(w)
    while lw:
        for i in range(1, sys.rank + 1):
            v = sys._right(w, i)
            if sys.length(v) < lw:
                out.append(i)
                w, lw = v, lw - 1
                break
    return tuple(reversed(out))


def reduced_words(sys: CoxeterSystem, w) -> tuple:
    """All reduced words of ``w``, sorted lexicographically."""
    return _reduced_words(sys, tuple(w))


@lru_cache(maxsize=4096)
def _reduced_words(sys, w) -> tuple:
    lw = sys.length(w)
    if lw == 0:
        return ((),)
    out = []
    for i in range(1, sys.rank + 1):
        v = sys._right(w, i)
        if sys.length(v) < lw:
            out.extend(r + (i,) for r in _reduced_words(sys, v))
    return tuple(sorted(out))


def count_embeddings(pattern, word) -> int:
    """Number of position sets of ``word`` whose letters spell ``pattern``."""
    counts = [1] + [0] * len(pattern)
    for letter in word:
        for k in range(len(pattern), 0, -1):
            if pattern[k - 1] == letter:
                counts[k] += counts[k - 1]
    return counts[len(pattern)]


def is_subsequence(pattern, word) -> bool:
    it = iter(word)
    return all(any(a == b for b in it) for a in pattern)


def repetition_number(sys: CoxeterSystem, word, target) -> int:
    word = sys.check_word(word)
    return max(count_embeddings(r, word) for r in reduced_words(sys, target))


def minimal_universal_word(sys: CoxeterSystem, target, max_len: int) -> list:
    """All shortest words (length <= max_len) containing every reduced word of ``target``."""
    rws = reduced_words(sys, target)
    start = sys.length(target)
    for k in range(start, max_len + 1):
        found = [
            w
            for w in itertools.product(range(1, sys.rank + 1), repeat=k)
            if all(is_subsequence(r, w) for r in rws)
        ]
        if found:
            return sorted(found)
    return []


# ---------------------------------------------------------------------------
# indexed tables for the array kernels


class GroupTable:
    """The group enumerated by BFS, with Cayley tables over element indices.

    ``right[g, i - 1]`` is the index of ``g * s_i`` and ``left[g, i - 1]`` of
    ``s_i * g``.  Index 0 is the identity.
    """

    MAX_ORDER = 50_000

    def __init__(self, sys: CoxeterSystem):
        self.sys = sys
        elems = [sys.identity()]
        index = {elems[0]: 0}
        queue = deque([elems[0]])
        while queue:
            w = queue.popleft()
            for i in range(1, sys.rank + 1):
                v = sys._right(w, i)
                if v not in index:
                    if len(elems) >= self.MAX_ORDER:
                        raise CoxeterError(f"group order exceeds {self.MAX_ORDER}")
                    index[v] = len(elems)
                    elems.append(v)
                    queue.append(v)
        self.elements = elems
        self.index = index
        order = len(elems)
        r = max(sys.rank, 1)
        self.right = np.zeros((order, r), dtype=np.int32)
        self.left = np.zeros((order, r), dtype=np.int32)
        for g, w in enumerate(elems):
            for i in range(1, sys.rank + 1):
                self.right[g, i - 1] = index[sys._right(w, i)]
                self.left[g, i - 1] = index[sys._left(w, i)]
        self.lengths = np.array([sys.length(w) for w in elems], dtype=np.int32)
        self._upsets: dict[int, np.ndarray] = {}

    def __len__(self):
        return len(self.elements)

    def upper_set(self, target) -> np.ndarray:
        """Boolean vector over indices: ``g >= target`` in Bruhat order."""
        from . import kernels

        t = self.index[tuple(target)]
        if t not in self._upsets:
            self._upsets[t] = kernels.bruhat_upper_set(self.right, self.lengths, t)
        return self._upsets[t]

    def bruhat_matrix(self) -> np.ndarray:
        """``M[a, b]`` is True iff element ``a`` is below element ``b``."""
        if getattr(self, "_bruhat", None) is None:
            self._bruhat = np.array([self.upper_set(w) for w in self.elements], dtype=np.bool_)
        return self._bruhat


@lru_cache(maxsize=32)
def group_table(sys: CoxeterSystem) -> GroupTable:
    return GroupTable(sys)

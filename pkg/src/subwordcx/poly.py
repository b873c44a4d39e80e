"""Sparse multivariate polynomials with integer coefficients.

Variables are ``Var(family, indices)`` such as ``z[1,2]``, ``x[3]`` or
``y[1]``.  A monomial is a sorted tuple of ``(Var, exponent)`` pairs.
"""
from __future__ import annotations

import re
from typing import NamedTuple

FAMILY_ORDER = {"z": 0, "x": 1, "y": 2}


class Var(NamedTuple):
    family: str
    indices: tuple

    def sort_key(self):
        return (FAMILY_ORDER.get(self.family, len(FAMILY_ORDER)), self.family, self.indices)

    def __str__(self):
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"


def var(family: str, *indices: int) -> Var:
    return Var(family, tuple(int(i) for i in indices))


class PolynomialDivisionError(ArithmeticError):
    """Raised when a supposedly exact division leaves a remainder."""


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: t[0].sort_key()))


def _mono_key(mono):
    deg = sum(e for _, e in mono)
    return (deg, [(v.sort_key(), -e) for v, e in mono])


class SparsePolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in dict(terms).items():
                if c:
                    mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda t: t[0].sort_key()))
                    self.terms[mono] = self.terms.get(mono, 0) + int(c)
            self.terms = {m: c for m, c in self.terms.items() if c}

    # constructors
    @classmethod
    def const(cls, c: int) -> "SparsePolynomial":
        return cls({(): c})

    @classmethod
    def variable(cls, v: Var) -> "SparsePolynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def monomial(cls, variables, coeff: int = 1) -> "SparsePolynomial":
        d = {}
        for v in variables:
            d[v] = d.get(v, 0) + 1
        return cls({tuple(d.items()): coeff})

    @staticmethod
    def _coerce(other):
        if isinstance(other, SparsePolynomial):
            return other
        if isinstance(other, int):
            return SparsePolynomial.const(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePolynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"SparsePolynomial({self})"

    # inspection
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, variables) -> int:
        """Coefficient of the monomial given as an iterable of variables (with repeats)."""
        target = SparsePolynomial.monomial(variables)
        (mono,) = target.terms
        return self.terms.get(mono, 0)

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    # substitution and the s_i action
    def substitute(self, mapping) -> "SparsePolynomial":
        """Replace variables by polynomials (or ints); unmapped variables stay."""
        out = SparsePolynomial()
        cache = {}
        for mono, c in self.terms.items():
            term = SparsePolynomial.const(c)
            for v, e in mono:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = SparsePolynomial._coerce(mapping[v]) ** e
                    term = term * cache[key]
                else:
                    term = term * SparsePolynomial({((v, e),): 1})
            out = out + term
        return out

    def rename(self, mapping) -> "SparsePolynomial":
        """Variable-for-variable substitution (faster than :meth:`substitute`)."""
        return SparsePolynomial(
            {tuple((mapping.get(v, v), e) for v, e in mono): c for mono, c in self.terms.items()}
        )

    def swap(self, a: Var, b: Var) -> "SparsePolynomial":
        return self.rename({a: b, b: a})

    def collect(self, v: Var) -> dict:
        """Coefficients with respect to powers of ``v``: ``{k: poly without v}``."""
        out: dict = {}
        for mono, c in self.terms.items():
            k = 0
            rest = []
            for w, e in mono:
                if w == v:
                    k = e
                else:
                    rest.append((w, e))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: _raw(t) for k, t in out.items()}

    # text / JSON
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> list:
        out = []
        for mono, c in self.sorted_terms():
            flat = []
            for v, e in mono:
                flat.extend([[v.family, *v.indices]] * e)
            out.append({"coeff": c, "monomial": flat})
        return out

    @classmethod
    def from_json(cls, data) -> "SparsePolynomial":
        out = cls()
        for term in data:
            vs = [Var(t[0], tuple(t[1:])) for t in term["monomial"]]
            out = out + cls.monomial(vs, term["coeff"])
        return out


def _raw(terms: dict) -> SparsePolynomial:
    p = SparsePolynomial.__new__(SparsePolynomial)
    p.terms = terms
    return p


_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^([a-zA-Z]+)\[([0-9,\s]+)\](?:\^(\d+))?$")


def parse_poly(text: str) -> SparsePolynomial:
    """Inverse of ``str(poly)``: ``"1 - z[1,2]*z[2,1]"``, ``"x[1]^2 + 3*y[2]"``."""
    text = text.strip()
    if text == "0":
        return SparsePolynomial()
    out = SparsePolynomial()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign
        vs = []
        for f in m.group(2).strip().split("*"):
            f = f.strip()
            if f.isdigit():
                coeff *= int(f)
                continue
            fm = _FACTOR.match(f)
            if not fm:
                raise ValueError(f"bad factor {f!r}")
            v = var(fm.group(1), *[int(i) for i in fm.group(2).split(",")])
            vs.extend([v] * int(fm.group(3) or 1))
        out = out + SparsePolynomial.monomial(vs, coeff)
        pos = m.end()
    return out


def x(i: int) -> SparsePolynomial:
    return SparsePolynomial.variable(var("x", i))


def y(j: int) -> SparsePolynomial:
    return SparsePolynomial.variable(var("y", j))


def z(*idx: int) -> SparsePolynomial:
    return SparsePolynomial.variable(var("z", *idx))


def demazure_operator(f: SparsePolynomial, i: int) -> SparsePolynomial:
    """Isobaric divided difference (x_{i+1} f - x_i s_i(f)) / (x_{i+1} - x_i).

    ``s_i`` swaps ``x[i]`` and ``x[i+1]``; other variables (``y`` included)
    are inert.  The quotient is computed by synthetic division in ``x[i]`` and
    a nonzero remainder raises :class:`PolynomialDivisionError`.
    """
    xi, xj = var("x", i), var("x", i + 1)
    num = SparsePolynomial.variable(xj) * f - SparsePolynomial.variable(xi) * f.swap(xi, xj)
    if not num:
        return SparsePolynomial()
    # num / (x_i - x_{i+1}) by Horner in x_i, then negate
    coeffs = num.collect(xi)
    top = max(coeffs)
    a = SparsePolynomial.variable(xj)
    quotient = SparsePolynomial()
    carry = SparsePolynomial()
    for k in range(top, 0, -1):
        carry = coeffs.get(k, SparsePolynomial()) + a * carry
        quotient = quotient + carry * SparsePolynomial({((xi, k - 1),): 1})
    remainder = coeffs.get(0, SparsePolynomial()) + a * carry
    if remainder:
        raise PolynomialDivisionError(f"x[{i+1}] - x[{i}] does not divide {num}")
    return -quotient

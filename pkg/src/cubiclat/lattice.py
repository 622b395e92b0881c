"""Exact lattices given by rational Gram matrices.

A :class:`Lattice` is constructed from the Gram matrix of the pairing it
carries.  Definite forms are normalised to a positive Gram matrix plus a
``negated`` flag, so enumeration code always sees a positive form while
callers can still ask for the twisted pairing ``L(-1)``.
"""
from __future__ import annotations

import json
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

from . import intlinalg as il


class DegenerateFormError(ValueError):
    pass


_RATIONAL = re.compile(r"([+-]?\d+)(?:/(\d+))?")


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a reduced Fraction."""
    if isinstance(s, numbers.Rational) and not isinstance(s, bool):
        return Fraction(int(s.numerator), int(s.denominator))
    if isinstance(s, str):
        m = _RATIONAL.fullmatch(s.strip())
        if m is None or (m.group(2) is not None and int(m.group(2)) == 0):
            raise ValueError(f"not a rational 'p/q': {s!r}")
        return Fraction(int(m.group(1)), int(m.group(2) or 1))
    raise ValueError(f"cannot read rational from {s!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _inertia(gram: Sequence[Sequence[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by congruence diagonalisation."""
    m = il.to_fraction_matrix(gram)
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        i = next((k for k in active if m[k][k] != 0), None)
        if i is None:
            pair = next(((a, b) for a in active for b in active if a != b and m[a][b] != 0), None)
            if pair is None:
                break
            a, b = pair
            # replace e_a by e_a + e_b, giving a nonzero diagonal entry
            for k in range(n):
                m[a][k] += m[b][k]
            for k in range(n):
                m[k][a] += m[k][b]
            if m[a][a] == 0:
                for k in range(n):
                    m[a][k] -= 2 * m[b][k]
                for k in range(n):
                    m[k][a] -= 2 * m[k][b]
            i = a
        p = m[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        for k in active:
            if m[k][i] != 0:
                f = m[k][i] / p
                for j in range(n):
                    m[k][j] -= f * m[i][j]
                for j in range(n):
                    m[j][k] -= f * m[j][i]
    return pos, neg, len(gram) - pos - neg


class Lattice:
    """A free Z-module with a nondegenerate rational symmetric pairing.

    ``gram`` is always the Gram matrix of the pairing itself.  Negative
    definite lattices keep a positive copy in ``positive_gram`` and report
    ``negated = True``.
    """

    def __init__(self, gram: Sequence[Sequence], label: str = ""):
        g = tuple(tuple(parse_rational(x) for x in row) for row in gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix is not symmetric")
        if il.det(g) == 0:
            raise DegenerateFormError("Gram matrix is degenerate")
        self._gram = g
        self.label = label

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._gram

    @property
    def rank(self) -> int:
        return len(self._gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        p, q, _ = _inertia(self._gram)
        return p, q

    @cached_property
    def definite_sign(self) -> str:
        p, q = self.signature
        if q == 0:
            return "positive"
        if p == 0:
            return "negative"
        return "indefinite"

    @property
    def negated(self) -> bool:
        return self.definite_sign == "negative"

    @cached_property
    def positive_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram of the positive definite form underlying a definite lattice."""
        if self.definite_sign == "indefinite":
            raise ValueError(f"lattice {self.label!r} is indefinite")
        if self.negated:
            return tuple(tuple(-x for x in row) for row in self._gram)
        return self._gram

    @cached_property
    def det(self) -> Fraction:
        return il.det(self._gram)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._gram for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(self._gram[i][i] % 2 == 0 for i in range(self.rank))

    def twist(self, label: str | None = None) -> "Lattice":
        """The lattice L(-1) with the sign of the pairing reversed."""
        return Lattice([[-x for x in row] for row in self._gram],
                       self.label + "(-1)" if label is None else label)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return inner(self, x, y)

    def norm(self, x: Sequence) -> Fraction:
        return inner(self, x, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self._gram == other._gram and self.label == other.label

    def __hash__(self) -> int:
        return hash((self._gram, self.label))

    def __repr__(self) -> str:
        return f"Lattice(label={self.label!r}, rank={self.rank}, det={self.det})"

    def to_json(self) -> dict:
        return {"label": self.label, "rank": self.rank,
                "gram": [[format_rational(x) for x in row] for row in self._gram]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "Lattice":
        if isinstance(obj, str):
            obj = json.loads(obj)
        gram = [[parse_rational(x) for x in row] for row in obj["gram"]]
        if int(obj["rank"]) != len(gram):
            raise ValueError("rank does not match Gram size")
        return cls(gram, obj.get("label", ""))


def inner(L: Lattice, x: Sequence, y: Sequence) -> Fraction:
    """x^T G y for coordinate vectors in the basis of L."""
    if len(x) != L.rank or len(y) != L.rank:
        raise ValueError(f"dimension mismatch: {len(x)}, {len(y)} vs rank {L.rank}")
    g = L.gram
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            row = g[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
    return total


def direct_sum(*parts: Lattice, label: str | None = None) -> Lattice:
    n = sum(p.rank for p in parts)
    g = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                g[off + i][off + j] = p.gram[i][j]
        off += p.rank
    return Lattice(g, " + ".join(p.label for p in parts) if label is None else label)


def dual_basis(L: Lattice) -> list[list[Fraction]]:
    """Rows are coordinates of the dual basis; equal to the inverse Gram."""
    return il.inverse(L.gram)


def dual_lattice(L: Lattice) -> Lattice:
    return Lattice(il.inverse(L.gram), L.label + "^dual")


def discriminant_group(L: Lattice) -> list[int]:
    """Invariant factors (> 1) of L^dual / L via Smith normal form."""
    if not L.is_integral():
        raise ValueError(f"lattice {L.label!r} is not integral")
    return [d for d in il.smith_invariants([[int(x) for x in row] for row in L.gram]) if d != 1]


def primary_parts(orders: Iterable[int]) -> list[int]:
    """Prime power orders of the cyclic factors of a product of cyclic groups."""
    out = []
    for n in orders:
        n = abs(int(n))
        p = 2
        while n > 1:
            if p * p > n:
                out.append(n)
                break
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            if q > 1:
                out.append(q)
            p += 1
    return sorted(out)


def same_abelian_group(a: Iterable[int], b: Iterable[int]) -> bool:
    """Whether two products of cyclic groups are isomorphic."""
    return primary_parts(a) == primary_parts(b)


@dataclass(frozen=True)
class Sublattice:
    """Span of integer coordinate vectors inside an ambient lattice."""

    ambient: Lattice
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, ambient: Lattice, basis: Iterable[Sequence[int]]):
        rows = tuple(tuple(int(c) for c in v) for v in basis)
        if any(len(v) != ambient.rank for v in rows):
            raise ValueError("basis vector length differs from ambient rank")
        if rows and il.rank(rows) != len(rows):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", rows)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def induced_gram(self) -> list[list[Fraction]]:
        return [[inner(self.ambient, x, y) for y in self.basis] for x in self.basis]

    def lattice(self, label: str = "") -> Lattice:
        return Lattice(self.induced_gram(), label)

    def contains(self, x: Sequence[int]) -> bool:
        return member(self.basis, x)


def orthogonal_complement(ambient: Lattice, S: Sublattice) -> Sublattice:
    """Primitive sublattice of vectors orthogonal to S."""
    if S.rank and il.det(S.induced_gram()) == 0:
        raise DegenerateFormError("pairing restricted to S is degenerate")
    if S.rank == 0:
        return Sublattice(ambient, il.identity(ambient.rank))
    rows = il.matmul(S.basis, ambient.gram)
    den = il.lcm_denominator(x for row in rows for x in row)
    rows = [[int(x * den) for x in row] for row in rows]
    return Sublattice(ambient, il.integer_kernel(rows))


def saturation(ambient: Lattice, S: Sublattice) -> tuple[Sublattice, int]:
    """Smallest primitive sublattice containing S, with the index [sat:S]."""
    if S.rank == 0:
        return S, 1
    kern = il.integer_kernel(S.basis)
    sat = il.integer_kernel(kern) if kern else il.identity(ambient.rank)
    index = prod(il.smith_invariants(S.basis))
    return Sublattice(ambient, sat), index


def member(generators: Sequence[Sequence], x: Sequence) -> bool:
    """True iff x is an integral combination of linearly independent generators."""
    if not any(x):
        return True
    c = il.solve_left(generators, x)
    return c is not None and all(v.denominator == 1 for v in c)


def coordinates(generators: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    c = il.solve_left(generators, x)
    if c is None:
        raise ValueError("vector is outside the rational span of the generators")
    return c

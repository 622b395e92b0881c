"""The fixed coordinate model of E8 and the sublattices living inside it.

E8 is realised as the vectors of Z^8 or (Z + 1/2)^8 with even coordinate
sum, under the standard dot product.  Every lattice below is an explicit
set of rational generators in this space, so membership questions are
plain linear algebra.  The ``(-1)`` twists used by the geometry are handled
by callers flipping signs; everything here is positive definite.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import intlinalg as il
from .lattice import Lattice, Sublattice, coordinates, member

Vec = tuple[Fraction, ...]

H = Fraction(1, 2)
THIRD = Fraction(1, 3)


def vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def unit(i: int) -> Vec:
    """Standard basis vector e_i, 1-indexed."""
    return tuple(Fraction(int(j == i - 1)) for j in range(8))


def lincomb(*terms) -> Vec:
    """Sum of (coefficient, vector) pairs."""
    out = [Fraction(0)] * 8
    for c, v in terms:
        for k in range(8):
            out[k] += Fraction(c) * v[k]
    return tuple(out)


def dot(x: Sequence, y: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def neg(x: Sequence) -> Vec:
    return tuple(-Fraction(a) for a in x)


def add(x: Sequence, y: Sequence) -> Vec:
    return tuple(Fraction(a) + b for a, b in zip(x, y))


@dataclass(frozen=True)
class ModelLattice:
    """Z-span of independent rational generators in Q^8 (dot product)."""

    label: str
    generators: tuple[Vec, ...]

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        return [[dot(a, b) for b in self.generators] for a in self.generators]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def lattice(self) -> Lattice:
        return Lattice(self.gram, self.label)

    def member(self, x: Sequence) -> bool:
        return member(self.generators, x)

    def coords(self, x: Sequence) -> list[Fraction]:
        return coordinates(self.generators, x)

    def vector(self, c: Sequence) -> Vec:
        return lincomb(*zip(c, self.generators))


E8_BASIS: tuple[Vec, ...] = (
    vec(2, 0, 0, 0, 0, 0, 0, 0),
    vec(-1, 1, 0, 0, 0, 0, 0, 0),
    vec(0, -1, 1, 0, 0, 0, 0, 0),
    vec(0, 0, -1, 1, 0, 0, 0, 0),
    vec(0, 0, 0, -1, 1, 0, 0, 0),
    vec(0, 0, 0, 0, -1, 1, 0, 0),
    vec(0, 0, 0, 0, 0, -1, 1, 0),
    vec(H, H, H, H, H, H, H, H),
)
E8 = ModelLattice("E8", E8_BASIS)

# A2 = <a1, a2> with (a1, a2) = -1
A1_ROOT: Vec = vec(1, 0, 0, 0, 0, 0, 0, 1)
A2_ROOT: Vec = vec(-H, H, H, H, H, H, H, -H)
A2 = ModelLattice("A2", (A1_ROOT, A2_ROOT))

# glue vector v2 = -(a1 + 2 a2)/3, generating A2^dual / A2
GLUE_A2: Vec = lincomb((-THIRD, A1_ROOT), (-2 * THIRD, A2_ROOT))

E6_DUAL_GENS: tuple[Vec, ...] = (
    lincomb((1, unit(3)), (-1, unit(2))),
    lincomb((1, unit(4)), (-1, unit(3))),
    lincomb((1, unit(5)), (-1, unit(4))),
    lincomb((1, unit(6)), (-1, unit(5))),
    lincomb((2 * THIRD, unit(2)), (2 * THIRD, unit(3)), (-THIRD, unit(4)),
            (-THIRD, unit(5)), (-THIRD, unit(6)), (-THIRD, unit(7))),
    lincomb((H, unit(1)), (H, unit(2)), (H, unit(3)), (H, unit(4)),
            (-H, unit(5)), (-H, unit(6)), (-H, unit(7)), (-H, unit(8))),
)
E6_DUAL = ModelLattice("E6^dual", E6_DUAL_GENS)

# three mutually orthogonal roots of E6, fixing the involution J
S_ROOTS: tuple[Vec, Vec, Vec] = (
    lincomb((1, unit(2)), (-1, unit(3))),
    lincomb((1, unit(4)), (-1, unit(5))),
    lincomb((1, unit(6)), (-1, unit(7))),
)

M1 = ModelLattice("M1", (
    lincomb((2, unit(4)), (-1, unit(3)), (-1, unit(2))),
    lincomb((1, unit(5)), (-1, unit(4))),
    lincomb((1, unit(6)), (-1, unit(5))),
    E6_DUAL_GENS[4],
    E6_DUAL_GENS[5],
))
M2 = ModelLattice("M2", (
    lincomb((-1, unit(2)), (-1, unit(3)), (2, unit(4)), (-1, unit(5)), (1, unit(6))),
    lincomb((-1, unit(4)), (1, unit(5))),
    lincomb((H, unit(1)), (H, unit(2)), (H, unit(3)), (H, unit(4)), (-3 * H, unit(5)),
            (H, unit(6)), (-H, unit(7)), (-H, unit(8))),
    E6_DUAL_GENS[4],
))
M3 = ModelLattice("M3", (
    lincomb((-2, unit(4)), (1, unit(5)), (1, unit(6))),
    lincomb((-1, unit(2)), (-1, unit(3)), (2, unit(4))),
    E6_DUAL_GENS[4],
    E6_DUAL_GENS[5],
))

MODEL_ID = (
    "E8=Z8-even-sum;a1=(1,0,0,0,0,0,0,1);a2=(-1,1,1,1,1,1,1,-1)/2;"
    "s1=e2-e3;s2=e4-e5;s3=e6-e7"
)


def _integer_vectors_to_model(rows, basis) -> tuple[Vec, ...]:
    return tuple(lincomb(*zip(r, basis)) for r in rows)


def _reduced(rows, basis) -> tuple[Vec, ...]:
    gens = _integer_vectors_to_model(rows, basis)
    gram = [[dot(a, b) for b in gens] for a in gens]
    red = il.lll_reduce(il.identity(len(gens)), gram)
    return _integer_vectors_to_model(red, gens)


def sublattice_orthogonal_to(parent: ModelLattice, vectors: Sequence[Vec], label: str) -> ModelLattice:
    """Primitive sublattice of ``parent`` orthogonal to the given vectors."""
    rows = [[dot(g, v) for v in vectors] for g in parent.generators]
    den = il.lcm_denominator(x for r in rows for x in r)
    kern = il.integer_left_kernel([[int(x * den) for x in r] for r in rows])
    return ModelLattice(label, _reduced(kern, parent.generators))


@lru_cache(maxsize=None)
def e6() -> ModelLattice:
    """E6 = A2-perp inside E8, with an LLL-reduced basis."""
    return sublattice_orthogonal_to(E8, (A1_ROOT, A2_ROOT), "E6")


@lru_cache(maxsize=None)
def glue_e6() -> Vec:
    """The E6-dual class [1]: w in E6^dual with w + v2 in E8.

    Found as x - v2 for an E8 vector x whose A2 pairings match those of v2.
    """
    target = (dot(GLUE_A2, A1_ROOT), dot(GLUE_A2, A2_ROOT))
    for r in e8_roots():
        if (dot(r, A1_ROOT), dot(r, A2_ROOT)) == target:
            return add(r, neg(GLUE_A2))
    raise AssertionError("no E8 root realises the glue class")


def in_T(w: Sequence) -> bool:
    """w lies in the coset T = E6 + [1]."""
    return (E6_DUAL.member(w) and dot(w, A1_ROOT) == 0 and dot(w, A2_ROOT) == 0
            and E8.member(add(w, GLUE_A2)))


def e6_class(w: Sequence) -> int:
    """Class of w in E6^dual / E6 as 0, 1 (= T) or 2 (= -T)."""
    if e6().member(w):
        return 0
    if E8.member(add(w, GLUE_A2)):
        return 1
    if E8.member(add(neg(w), GLUE_A2)):
        return 2
    raise ValueError("vector is not in E6^dual")


@lru_cache(maxsize=None)
def e8_roots() -> tuple[Vec, ...]:
    """The 240 roots of E8 listed directly from the coordinate description."""
    out = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [Fraction(0)] * 8
                    v[i], v[j] = Fraction(si), Fraction(sj)
                    out.append(tuple(v))
    for mask in range(256):
        signs = [-1 if mask >> k & 1 else 1 for k in range(8)]
        if signs.count(-1) % 2 == 0:
            out.append(tuple(Fraction(s, 2) for s in signs))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def e6_roots() -> tuple[Vec, ...]:
    return tuple(r for r in e8_roots() if dot(r, A1_ROOT) == 0 and dot(r, A2_ROOT) == 0)


def x42(a: Vec) -> tuple[Vec, ...]:
    """Roots of E6 not orthogonal to the root ``a`` (including +-a)."""
    return tuple(c for c in e6_roots() if dot(a, c) != 0)


def x42_decomposition(a: Vec) -> list[frozenset]:
    """X42 as the distinct root sets of the A2 lattices Za + Zc with (a, c) = -1."""
    systems = []
    for c in e6_roots():
        if dot(a, c) != -1:
            continue
        ac = add(a, c)
        s = frozenset([a, c, ac, neg(a), neg(c), neg(ac)])
        if s not in systems:
            systems.append(s)
    return systems


@dataclass(frozen=True)
class CosetModel:
    """A coset L + t, with L a model lattice and t in L's rational span."""

    base: ModelLattice
    shift: tuple[Fraction, ...]  # coordinates of t in base's generators

    @property
    def label(self) -> str:
        return f"{self.base.label}+t"


def intersect_with_class(parent: ModelLattice, cls: int) -> CosetModel:
    """parent ∩ (E6 + [cls]) for a sublattice ``parent`` of E6^dual.

    Returned as (parent ∩ E6) + shift, using the E6 class map on the generators.
    """
    classes = [e6_class(g) for g in parent.generators]
    idx = next((i for i, c in enumerate(classes) if c), None)
    if idx is None:
        raise ValueError("parent lies inside E6")
    inv = 1 if classes[idx] == 1 else 2  # inverse of the class mod 3
    rows = []
    for j, c in enumerate(classes):
        if j == idx:
            continue
        r = [0] * parent.rank
        r[j] = 1
        r[idx] = (-c * inv) % 3
        rows.append(r)
    r = [0] * parent.rank
    r[idx] = 3
    rows.append(r)
    sub = ModelLattice(f"{parent.label}∩E6", _reduced(rows, parent.generators))
    if cls % 3 == 0:
        return CosetModel(sub, tuple(Fraction(0) for _ in range(sub.rank)))
    k = (cls * inv) % 3
    t = lincomb((k, parent.generators[idx]))
    return CosetModel(sub, tuple(sub.coords(t)))


@lru_cache(maxsize=None)
def T_coset() -> CosetModel:
    """T = E6 + [1] written as E6 plus a shift in E6 coordinates."""
    base = e6()
    return CosetModel(base, tuple(base.coords(glue_e6())))


@lru_cache(maxsize=None)
def M_cosets() -> tuple[CosetModel, CosetModel, CosetModel]:
    """M_i ∩ T for i = 1, 2, 3."""
    return tuple(intersect_with_class(M, 1) for M in (M1, M2, M3))


def sublattice_in_e8(vectors: Sequence[Vec]) -> Sublattice:
    """The span of model vectors as a Sublattice of the abstract E8."""
    rows = [[int(c) for c in E8.coords(v)] for v in vectors]
    return Sublattice(E8.lattice(), rows)

"""Representation numbers of genus-unique forms from local densities.

For a positive definite even form S of rank r that is alone in its genus,
r(t, S) is the product of the archimedean density with the finite local
densities.  The finite part away from 2 * det is a Dirichlet L-value, which
is enclosed rigorously here: character partial sums are evaluated in exact
fixed point and the tail is bounded by partial summation.  Every quantity is
carried as a :class:`BracketedReal` with rational endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from .intlinalg import det
from .localdensity import LocalNormalForm, alpha_p_yang


@dataclass(frozen=True)
class BracketedReal:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lower), Fraction(self.upper)
        if lo > hi:
            raise ValueError("lower endpoint exceeds upper endpoint")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def exact(cls, x) -> "BracketedReal":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    def _lift(self, other) -> "BracketedReal":
        return other if isinstance(other, BracketedReal) else BracketedReal.exact(other)

    def __add__(self, other):
        o = self._lift(other)
        return BracketedReal(self.lower + o.lower, self.upper + o.upper)

    __radd__ = __add__

    def __neg__(self):
        return BracketedReal(-self.upper, -self.lower)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        ps = [self.lower * o.lower, self.lower * o.upper, self.upper * o.lower, self.upper * o.upper]
        return BracketedReal(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "BracketedReal":
        if self.lower <= 0 <= self.upper:
            raise ZeroDivisionError("bracket contains zero")
        return BracketedReal(1 / self.upper, 1 / self.lower)

    def __truediv__(self, other):
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def integers_inside(self) -> list[int]:
        lo = -((-self.lower.numerator) // self.lower.denominator)
        hi = self.upper.numerator // self.upper.denominator
        return list(range(lo, hi + 1))

    def __float__(self) -> float:
        return float((self.lower + self.upper) / 2)


def sqrt_bracket(x, bits: int = 96) -> BracketedReal:
    """Enclosure of sqrt(x) for a nonnegative rational x."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << bits
    n = x.numerator * x.denominator * scale * scale
    s = isqrt(n)
    lo = Fraction(s, x.denominator * scale)
    hi = lo if s * s == n else Fraction(s + 1, x.denominator * scale)
    return BracketedReal(lo, hi)


_PI_DIGITS = "3.14159265358979323846264338327950288419716939937510582097494459"
PI = BracketedReal(Fraction(_PI_DIGITS) - Fraction(1, 10**60), Fraction(_PI_DIGITS) + Fraction(1, 10**60))


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D / n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    a, m = D % n, n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def fundamental_discriminant(t: int) -> int:
    """Discriminant of Q(sqrt t); 1 when t is a square."""
    sf = squarefree_part(t)
    return sf if sf % 4 == 1 else 4 * sf


def squarefree_part(t: int) -> int:
    out = 1
    for p, e in factorize(t).items():
        if e % 2:
            out *= p
    return out


def factorize(n: int) -> dict[int, int]:
    n = abs(n)
    f: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            f[p] = f.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        f[n] = f.get(n, 0) + 1
    return f


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _char_period(D: int) -> np.ndarray:
    q = abs(D) if D not in (0, 1) else 1
    return np.array([kronecker(D, n) if n else (1 if q == 1 else 0) for n in range(q)], dtype=np.int64)


def l_value_2(D: int, terms: int = 200_000) -> BracketedReal:
    """Rigorous enclosure of L(2, chi_D) with chi_D = (D / .).

    When D is a perfect square the character is principal and the value is
    zeta(2) times Euler factors at primes dividing D.  Otherwise the sum is
    cut at ``terms`` and the tail bounded by 2 max|A(x)| / (N+1)^2, where A
    is the (periodic, mean zero) partial sum of the character.
    """
    if _is_square(D):
        val = PI * PI / 6
        for p in factorize(D):
            val = val * (1 - Fraction(1, p * p))
        return val
    per = _char_period(D)
    q = len(per)
    if per.sum() != 0:
        raise ValueError("character is not mean zero over its period")
    maxA = int(np.max(np.abs(np.cumsum(per))))
    chi = per[np.arange(1, terms + 1) % q]
    P = 1 << 80
    # floor(P/n^2) exactly; each term has error < 1
    parts = [P // (k * k) for k in range(1, terms + 1)]
    acc = sum(int(c) * v for c, v in zip(chi.tolist(), parts) if c)
    trunc_err = Fraction(terms, P)
    tail = Fraction(2 * maxA, (terms + 1) ** 2)
    s = Fraction(acc, P)
    return BracketedReal(s - trunc_err - tail, s + trunc_err + tail)


def zagier_b(n: int, delta: int) -> int:
    """#{x mod 2n : x^2 = delta mod 4n}."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(1 for x in range(2 * n) if (x * x - delta) % (4 * n) == 0)


def zagier_b_from_character(n: int, D: int) -> int:
    """sum over d | n of |mu(n/d)| chi_D(d), valid for fundamental D."""
    total = 0
    for d in divisors(n):
        q = n // d
        if all(e == 1 for e in factorize(q).values()):
            total += kronecker(D, d)
    return total


@dataclass(frozen=True)
class RegisteredForm:
    """A genus-unique positive form S(x) = x^T A x / 2 with local data."""

    name: str
    A: tuple[tuple[int, ...], ...]
    local: dict

    @property
    def rank(self) -> int:
        return len(self.A)

    @property
    def det(self) -> int:
        return int(det(self.A))

    def alpha(self, t: int, p: int) -> Fraction:
        return alpha_p_yang(self.local[p], t)


def _form(name: str, B: Sequence[Sequence], local: dict) -> RegisteredForm:
    A = tuple(tuple(int(Fraction(x) * 3) for x in row) for row in B)
    return RegisteredForm(name, A, local)


F = Fraction
_B1 = [[6, -2, 0, -2, 0], [-2, 2, -1, 0, -1], [0, -1, 2, 0, 0], [-2, 0, 0, F(4, 3), 1], [0, -1, 0, 1, 2]]
_B2 = [[8, -3, 2, -2], [-3, 2, -2, 0], [2, -2, 4, 1], [-2, 0, 1, F(4, 3)]]
_B3 = [[6, -4, 0, -2], [-4, 6, -2, 0], [0, -2, F(4, 3), 1], [-2, 0, 1, 2]]
THIRD = F(1, 3)

REGISTRY: dict[str, RegisteredForm] = {
    "S1": _form("S1", _B1, {
        3: LocalNormalForm(3, ((2, 0), (2, 1), (2, 1), (2, 1), (1, 1))),
        2: LocalNormalForm(2, ((1, 0),), (), ((THIRD, 0), (THIRD, 0))),
    }),
    "S2": _form("S2", _B2, {
        3: LocalNormalForm(3, ((2, 0), (1, 1), (1, 1), (2, 2))),
        2: LocalNormalForm(2, (), (), ((THIRD, 0), (THIRD, 0))),
    }),
    "S3": _form("S3", _B3, {
        3: LocalNormalForm(3, ((2, 0), (1, 1), (2, 1), (1, 1))),
        2: LocalNormalForm(2, ((1, 0), (5, 0)), ((1, 0),), ()),
    }),
}


def _product_over_bad_primes(S: RegisteredForm, t: int) -> Fraction:
    out = Fraction(1)
    for p in S.local:
        out *= S.alpha(t, p)
    return out


@dataclass(frozen=True)
class RepNumber:
    bracket: BracketedReal
    value: int


def _round(bracket: BracketedReal, max_width: Fraction) -> RepNumber:
    if bracket.width >= max_width:
        raise ArithmeticError(f"bracket width {float(bracket.width):.3g} is not below {float(max_width)}")
    ints = bracket.integers_inside()
    if len(ints) != 1:
        raise ArithmeticError(f"bracket [{float(bracket.lower)}, {float(bracket.upper)}] holds {len(ints)} integers")
    return RepNumber(bracket, ints[0])


def rep_number_even_rank(S: RegisteredForm | str, t: int, max_width=Fraction(1, 1000),
                         terms: int = 200_000) -> RepNumber:
    """r(t, S) for a registered form of even rank r.

    r(t, S) = (sum_{a|t} chi(a) a^{1-r/2}) L(r/2, chi)^{-1} alpha_inf prod_{p | 2 det} alpha_p
    with chi = chi_{(-1)^{r/2} 4 det} and alpha_inf = (2 pi)^{r/2} t^{r/2-1} / (Gamma(r/2) sqrt(det A)).
    Only r = 4 is supported.
    """
    if isinstance(S, str):
        S = REGISTRY[S]
    if S.rank != 4:
        raise ValueError("only rank 4 forms are supported")
    if t < 1:
        raise ValueError("t must be positive")
    D = 4 * S.det
    dsum = sum((Fraction(kronecker(D, a), a) for a in divisors(t)), Fraction(0))
    L = l_value_2(D, terms)
    alpha_inf = (2 * PI) * (2 * PI) * t / sqrt_bracket(S.det)
    val = alpha_inf * dsum / L * _product_over_bad_primes(S, t)
    return _round(val, Fraction(max_width))


def square_part_coprime_to_6(t: int) -> int:
    """t2 with t = t0 t2^2, t2 coprime to 6 and maximal."""
    out = 1
    for p, e in factorize(t).items():
        if p > 3:
            out *= p ** (e // 2)
    return out


def rep_number_odd_rank(S: RegisteredForm | str, t: int, max_width=Fraction(1, 1000),
                        terms: int = 200_000) -> RepNumber:
    """r(t, S) for the registered rank 5 form, restricted to t2 = 1.

    r(t, S) = (2 pi)^{5/2} Gamma(5/2)^{-1} t^{3/2} det(A)^{-1/2} L(2, chi_D) zeta(4)^{-1}
              prod_{p | 2 det} (1 - chi_D(p) p^{-2}) (1 - p^{-4})^{-1} alpha_p(t, S),
    D the discriminant of Q(sqrt t).  The prefactor simplifies to
    (16 pi^2 / 3) * 90 / pi^4 * t^{3/2} / sqrt(det A) with Gamma(5/2) = 3 sqrt(pi) / 4.
    """
    if isinstance(S, str):
        S = REGISTRY[S]
    if S.rank != 5:
        raise ValueError("only rank 5 forms are supported")
    if t < 1:
        raise ValueError("t must be positive")
    if square_part_coprime_to_6(t) != 1:
        raise ValueError("t2 != 1 is not supported")
    D = fundamental_discriminant(t)
    L = l_value_2(D, terms)
    pi2 = PI * PI
    # (2 pi)^{5/2} / Gamma(5/2) = 2^{5/2} pi^2 * 4 / 3 ; zeta(4) = pi^4 / 90
    pref = sqrt_bracket(32) * 4 * 90 / (3 * pi2)
    t32 = sqrt_bracket(Fraction(t) ** 3)
    val = pref * t32 / sqrt_bracket(S.det) * L
    for p in S.local:
        val = val * ((1 - Fraction(kronecker(D, p), p * p)) / (1 - Fraction(1, p ** 4)))
    val = val * _product_over_bad_primes(S, t)
    return _round(val, Fraction(max_width))

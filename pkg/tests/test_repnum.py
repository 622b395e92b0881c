from fractions import Fraction
from math import gcd

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cubiclat.repnum import (PI, REGISTRY, BracketedReal, divisors, factorize, fundamental_discriminant,
                             kronecker, l_value_2, rep_number_even_rank, rep_number_odd_rank,
                             sqrt_bracket, square_part_coprime_to_6, squarefree_part, zagier_b,
                             zagier_b_from_character)
from cubiclat.shortvec import norm_counts


def brackets():
    return st.tuples(st.fractions(-10, 10, max_denominator=50), st.fractions(0, 3, max_denominator=50)).map(
        lambda p: BracketedReal(p[0], p[0] + p[1]))


@given(brackets(), brackets(), st.data())
def test_bracket_arithmetic_is_sound(x, y, data):
    a = data.draw(st.fractions(x.lower, x.upper))
    b = data.draw(st.fractions(y.lower, y.upper))
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    if not y.contains(0):
        assert (x / y).contains(a / b)


def test_bracket_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        BracketedReal(Fraction(1), Fraction(0))


@given(st.fractions(Fraction(1, 100), 10**6, max_denominator=1000))
def test_sqrt_bracket_contains_sqrt(x):
    s = sqrt_bracket(x)
    assert s.lower ** 2 <= x <= s.upper ** 2
    assert s.width < Fraction(1, 10**20)


def test_pi_bracket():
    with mpmath.workdps(80):
        ref = Fraction(mpmath.nstr(mpmath.pi, 75))
    assert PI.contains(ref)
    assert PI.width <= Fraction(2, 10**60)


@given(st.integers(-200, 200).filter(lambda d: d % 4 in (0, 1) and d != 0), st.integers(1, 500))
def test_kronecker_matches_jacobi_on_odd(D, n):
    if n % 2 == 1:
        assert kronecker(D, n) == sympy.jacobi_symbol(D % n, n) if gcd(D, n) == 1 else kronecker(D, n) == 0


@given(st.integers(1, 10**5))
def test_factorize_and_divisors(n):
    f = factorize(n)
    assert f == sympy.factorint(n)
    assert divisors(n) == sorted(sympy.divisors(n))
    s = squarefree_part(n)
    assert (n // s) == sympy.integer_nthroot(n // s, 2)[0] ** 2


def test_fundamental_discriminant():
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(2) == 8
    assert fundamental_discriminant(3) == 12
    assert fundamental_discriminant(12) == 12
    assert square_part_coprime_to_6(5 * 25 * 9) == 5


@pytest.mark.parametrize("D", [5, 8, 12, 13, 24, 36, 44, 60, 108])
def test_l_value_contains_mpmath_value(D):
    chi = [0] + [kronecker(D, k) for k in range(1, abs(D))]
    with mpmath.workdps(30):
        ref = Fraction(mpmath.nstr(mpmath.dirichlet(2, chi), 25))
    b = l_value_2(D, terms=20000)
    assert b.lower < Fraction(ref) + Fraction(1, 10**12)
    assert b.upper > Fraction(ref) - Fraction(1, 10**12)
    assert b.width < Fraction(1, 10**6)


@given(st.integers(1, 60), st.integers(1, 40))
def test_zagier_b_two_ways(n, t):
    D = fundamental_discriminant(t)
    if gcd(n, 6 * t) != 1:
        return
    assert zagier_b(n, D) == zagier_b_from_character(n, D)


@pytest.mark.parametrize("name", ["S2", "S3"])
def test_even_rank_formula_matches_enumeration(name):
    S = REGISTRY[name]
    counts = norm_counts(S.A, None, 2 * 30)
    for t in range(1, 31):
        r = rep_number_even_rank(S, t, terms=50000)
        assert r.value == counts.get(Fraction(2 * t), 0), (name, t)


def test_odd_rank_formula_matches_enumeration():
    S = REGISTRY["S1"]
    counts = norm_counts(S.A, None, 60)
    for t in range(1, 31):
        if square_part_coprime_to_6(t) != 1:
            with pytest.raises(ValueError):
                rep_number_odd_rank(S, t)
            continue
        assert rep_number_odd_rank(S, t, terms=50000).value == counts.get(Fraction(2 * t), 0), t

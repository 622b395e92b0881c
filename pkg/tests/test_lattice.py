import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubiclat import intlinalg as il
from cubiclat.lattice import (DegenerateFormError, Lattice, Sublattice, direct_sum, discriminant_group,
                              dual_lattice, format_rational, orthogonal_complement, parse_rational,
                              primary_parts, same_abelian_group, saturation)

A2 = [[2, -1], [-1, 2]]
D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Lattice([[1, 2], [3, 1]])
    with pytest.raises(DegenerateFormError):
        Lattice([[1, 1], [1, 1]])


def test_signature_and_sign():
    U = Lattice([[0, 1], [1, 0]])
    assert U.signature == (1, 1)
    assert U.definite_sign == "indefinite"
    neg = Lattice(A2).twist()
    assert neg.signature == (0, 2)
    assert neg.definite_sign == "negative"
    assert neg.positive_gram == Lattice(A2).gram


def test_parse_and_format_rational():
    assert parse_rational("-5/6") == Fraction(-5, 6)
    assert parse_rational("3") == 3
    assert format_rational(Fraction(2, 4)) == "1/2"
    for bad in ("1/0", "x", "1.5", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_json_round_trip():
    L = Lattice([[2, Fraction(1, 3)], [Fraction(1, 3), 4]], "toy")
    obj = json.loads(json.dumps(L.to_json()))
    assert obj["gram"][0][1] == "1/3"
    assert Lattice.from_json(obj) == L


def test_discriminant_groups():
    assert discriminant_group(Lattice(A2)) == [3]
    assert discriminant_group(Lattice(D4)) == [2, 2]
    assert discriminant_group(Lattice([[0, 1], [1, 0]])) == []
    assert same_abelian_group([120], [3, 40])
    assert not same_abelian_group([2, 6], [12])
    assert primary_parts([12, 18]) == [2, 3, 4, 9]


def test_direct_sum_and_dual():
    L = direct_sum(Lattice(A2), Lattice([[0, 1], [1, 0]]))
    assert L.rank == 4
    assert L.det == -3
    assert dual_lattice(Lattice(A2)).det == Fraction(1, 3)


pos_gram = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4).map(
    lambda b: il.matmul(b, il.transpose(b))).filter(lambda g: il.det(g) != 0)


@given(pos_gram, st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=2))
def test_orthogonal_complement_properties(gram, rows):
    L = Lattice(gram)
    if il.rank(rows) != len(rows):
        return
    S = Sublattice(L, rows)
    C = orthogonal_complement(L, S)
    assert C.rank == L.rank - S.rank
    for x in C.basis:
        for y in S.basis:
            assert L.inner(x, y) == 0
    _, idx = saturation(L, C)
    assert idx == 1


def test_saturation_index_of_scaled_vector():
    L = Lattice(D4)
    S = Sublattice(L, [[2, 0, 0, 0], [0, 3, 0, 0]])
    sat, idx = saturation(L, S)
    assert idx == 6
    assert sat.contains([1, 0, 0, 0])

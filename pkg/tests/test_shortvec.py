from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubiclat import intlinalg as il
from cubiclat import model
from cubiclat.lattice import Lattice
from cubiclat.repnum import divisors
from cubiclat.shortvec import (box_search, canonical_shift, count_roots_orthogonal, norm_counts, roots,
                               vectors_of_norm, vectors_of_norm_in_coset, vectors_up_to_norm)


def small_grams(n):
    return st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda b: il.matmul(b, il.transpose(b))).filter(lambda g: il.det(g) != 0)


def test_root_counts():
    assert len(roots(model.E8.lattice())) == 240
    assert len(roots(model.e6().lattice())) == 72
    a5 = model.sublattice_orthogonal_to(model.e6(), [model.e6_roots()[0]], "A5")
    assert len(roots(a5.lattice())) == 30


def test_e8_theta_is_240_sigma3():
    # theta_E8 = E_4, so N(2k) = 240 sigma_3(k)
    counts = norm_counts(model.E8.lattice(), None, 10)
    for k in range(1, 6):
        assert counts[Fraction(2 * k)] == 240 * sum(d ** 3 for d in divisors(k))


@given(st.integers(2, 3).flatmap(small_grams), st.integers(1, 12))
def test_tree_search_matches_box_search(gram, m):
    got = [tuple(Fraction(c) for c in v) for v in vectors_of_norm(gram, m)]
    assert got == box_search(gram, m)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(
    small_grams(n), st.lists(st.fractions(0, 1, max_denominator=6), min_size=n, max_size=n))),
    st.integers(1, 40))
def test_coset_search_matches_box_search(gram_shift, m6):
    gram, shift = gram_shift
    m = Fraction(m6, 6)
    assert vectors_of_norm_in_coset(gram, shift, m) == box_search(gram, m, shift)


@given(st.integers(2, 3).flatmap(small_grams), st.integers(0, 10))
def test_norm_counts_agree_with_lists(gram, bound):
    counts = norm_counts(gram, None, bound)
    vecs = vectors_up_to_norm(gram, bound)
    L = Lattice(gram)
    tally = {}
    for v in vecs:
        tally[L.norm(v)] = tally.get(L.norm(v), 0) + 1
    assert counts == tally


def test_negative_definite_input_is_flipped():
    neg = model.E8.lattice().twist()
    assert len(roots(neg)) == 240


def test_indefinite_rejected():
    with pytest.raises(ValueError):
        roots(Lattice([[0, 1], [1, 0]]))


def test_canonical_shift():
    assert canonical_shift([Fraction(-1, 3), Fraction(7, 2)]) == (Fraction(2, 3), Fraction(1, 2))


def test_count_roots_orthogonal():
    L = Lattice([[2, -1], [-1, 2]])
    assert count_roots_orthogonal(L, [1, 0]) == 0
    assert count_roots_orthogonal(L, [1, 2]) == 2

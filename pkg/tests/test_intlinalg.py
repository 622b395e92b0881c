from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from cubiclat import intlinalg as il


def int_matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4, lo=-6, hi=6):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def square_matrices(n_max=4, lo=-5, hi=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square_matrices())
def test_det_matches_sympy(a):
    assert il.det(a) == sympy.Matrix(a).det()


@given(square_matrices())
def test_inverse_is_inverse(a):
    if il.det(a) == 0:
        return
    assert il.matmul(a, il.inverse(a)) == il.identity(len(a))


@given(int_matrices())
def test_rank_matches_sympy(a):
    assert il.rank(a) == sympy.Matrix(a).rank()


@given(int_matrices())
def test_hnf_transform_is_unimodular(a):
    h, u = il.hnf_with_transform(a)
    assert il.matmul(u, a) == il.to_fraction_matrix(h)
    assert abs(il.det(u)) == 1
    nonzero = [row for row in h if any(row)]
    assert h[: len(nonzero)] == nonzero


@given(int_matrices(max_cols=5))
def test_integer_kernel_is_saturated_kernel(a):
    k = il.integer_kernel(a)
    n = len(a[0])
    assert len(k) == n - il.rank(a)
    for v in k:
        assert all(sum(row[j] * v[j] for j in range(n)) == 0 for row in a)
    if k:
        # a saturated sublattice of Z^n has all Smith invariants equal to 1
        assert all(d == 1 for d in il.smith_invariants(k))


@given(int_matrices())
def test_smith_invariants_match_sympy(a):
    ours = [d for d in il.smith_invariants(a) if d]
    snf = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
    theirs = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert ours == theirs


def test_solve_left():
    basis = [[1, 0, 1], [0, 2, 0]]
    assert il.solve_left(basis, [3, 4, 3]) == [3, 2]
    assert il.solve_left(basis, [1, 0, 0]) is None


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_is_change_of_basis(b):
    if il.det(b) == 0:
        return
    gram = il.matmul(b, il.transpose(b))
    u = il.lll_reduce(il.identity(3), gram)
    assert abs(il.det(u)) == 1
    red = il.matmul(il.matmul(u, gram), il.transpose(u))
    assert il.det(red) == il.det(gram)
    # size reduction: |mu_ij| <= 1/2 implies |g_ij| <= g_jj / 2 for the first pair
    assert 2 * abs(red[0][1]) <= red[0][0]


def test_lcm_denominator():
    assert il.lcm_denominator([Fraction(1, 2), Fraction(1, 3), 4]) == 6

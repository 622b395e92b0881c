from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubiclat.localdensity import (LocalNormalForm, alpha_p_brute, alpha_p_direct, alpha_p_yang, hilbert2,
                                   jordan_split, legendre, odd_normal_form, stable_level, vp)
from cubiclat.repnum import REGISTRY


def even_forms(n):
    def build(vals):
        diag, off = vals[:n], vals[n:]
        A = [[0] * n for _ in range(n)]
        k = 0
        for i in range(n):
            A[i][i] = 2 * diag[i]
            for j in range(i + 1, n):
                A[i][j] = A[j][i] = off[k]
                k += 1
        return A
    size = n + n * (n - 1) // 2
    return st.lists(st.integers(1, 4), min_size=size, max_size=size).map(build)


def test_valuations_and_symbols():
    assert vp(Fraction(18, 5), 3) == 2
    assert vp(Fraction(5, 12), 2) == -2
    assert legendre(2, 3) == -1
    assert legendre(4, 3) == 1
    assert hilbert2(1) == 1
    assert hilbert2(3) == -1


@given(st.integers(2, 3).flatmap(even_forms), st.integers(1, 30), st.sampled_from([2, 3]), st.integers(1, 2))
def test_direct_matches_brute(A, t, p, a):
    if p ** (a * len(A)) > 5000:
        a = 1
    assert alpha_p_direct(A, t, p, a) == alpha_p_brute(A, t, p, a)


def test_jordan_split_preserves_det_valuation():
    A = REGISTRY["S1"].A
    from cubiclat.intlinalg import det
    blocks = jordan_split(A, 3)
    total = sum(vp(det(b), 3) for b in blocks)
    assert total == vp(det(A), 3)


@pytest.mark.parametrize("name", ["S1", "S2", "S3"])
@pytest.mark.parametrize("p", [2, 3])
def test_yang_matches_stabilised_direct(name, p):
    S = REGISTRY[name]
    for t in range(1, 40):
        a = stable_level(S.A, t, p)
        direct = alpha_p_direct(S.A, t, p, a)
        if p ** (a + 1) <= 3**7:
            assert direct == alpha_p_direct(S.A, t, p, a + 1)
        assert direct == alpha_p_yang(S.local[p], t), (name, p, t)


def test_odd_normal_form_matches_registry_at_3():
    for name in ("S1", "S2", "S3"):
        nf = odd_normal_form(REGISTRY[name].A, 3)
        assert sorted(l for _, l in nf.diagonal) == sorted(l for _, l in REGISTRY[name].local[3].diagonal)


def test_normal_form_validation():
    with pytest.raises(ValueError):
        LocalNormalForm(3, ((3, 0),))
    with pytest.raises(ValueError):
        LocalNormalForm(3, ((1, 0),), ((1, 0),))
    with pytest.raises(ValueError):
        LocalNormalForm(2, ((1, 1),))


def test_budget_guard():
    with pytest.raises(ValueError):
        alpha_p_direct(REGISTRY["S1"].A, 1, 3, 20, budget=10**6)

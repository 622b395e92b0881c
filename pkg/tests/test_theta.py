import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubiclat import model, theta
from cubiclat.repnum import BracketedReal
from cubiclat.shortvec import box_search


@pytest.fixture(scope="module")
def tables():
    return theta.coset_tables(300)


def test_first_flagged_coefficient(tables):
    m = Fraction(46, 3)
    assert tables[0][m] == 600
    row = theta.ThetaRow(46, tables[0][m], tables[1][m], tables[2][m])
    assert row.flagged
    assert row.combination > 0


def test_table_range_guard(tables):
    with pytest.raises(KeyError):
        tables[0][Fraction(301, 3)]


def test_coset_counts_match_box_search():
    for c in model.M_cosets():
        for k in (2, 5, 8):
            m = Fraction(k, 3)
            got = theta.theta_coeffs(c, m)[m]
            assert got == len(box_search(c.base.gram, m, c.shift))


def test_csv_layout():
    rows = [theta.ThetaRow(k, 1, 0, 0) for k in (45, 46, 47)]
    text = theta.rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "k,N_M1capT,N_M2capT,N_M3capT,4N1-10N2-15N3"
    assert lines[2] == "46,1,0,0,4"
    assert [r.flagged for r in rows] == [False, True, False]


def test_nonpositive_flagged():
    rows = [theta.ThetaRow(46, 1, 1, 0), theta.ThetaRow(47, 0, 1, 0)]
    assert theta.nonpositive_flagged(rows) == [rows[0]]


@given(st.fractions(Fraction(1, 10), 10**6, max_denominator=97))
def test_log_bracket_contains_log(x):
    b = theta.log_bracket(x)
    ref = math.log(x.numerator) - math.log(x.denominator)
    assert float(b.lower) - 1e-12 <= ref <= float(b.upper) + 1e-12
    assert b.width < Fraction(1, 10**12)


def test_bound_preconditions():
    with pytest.raises(theta.PreconditionError):
        theta.bound_M1_lower(Fraction(2))  # t = 3
    with pytest.raises(theta.PreconditionError):
        theta.bound_M2_upper(Fraction(2, 3))  # t = 1
    assert isinstance(theta.bound_M1_lower(Fraction(46, 3)), BracketedReal)


def test_bounds_sandwich_small(tables):
    for t in range(21, 150):
        m = Fraction(2 * t, 3)
        if t % 12 in (2, 11):
            assert tables[0][m] > theta.bound_M1_lower(m).upper
        if t % 3 == 2:
            assert tables[1][m] < theta.bound_M2_upper(m).lower
            assert tables[2][m] < theta.bound_M3_upper(m).lower


def _last_failure(lo, hi, factor=Fraction(1)):
    """Largest admissible t in [lo, hi] where the analytic margin is not positive."""
    last = None
    for t in range(lo, hi + 1):
        if t % 12 in (2, 11) and not theta.analytic_margin(t, factor).lower > 0:
            last = t
    return last


def test_analytic_threshold():
    assert _last_failure(8000, 12000) == 8522
    assert _last_failure(900, 3000, Fraction(444, 1000)) == 1046


def test_divisor_refinement_samples():
    for t in (1000, 2310, 5040, 8528):
        assert theta.divisor_refinement_holds(t)


def test_key_inequality(tables):
    r = theta.check_key_inequality(23, tables)
    assert r.status == "holds"
    assert (r.n1, r.n2, r.n3) == (600, 72, 72)
    assert r.admitted_by == ["t = 2 or 11 mod 12", "t = 2 or 3 mod 4"]
    assert theta.check_key_inequality(15, tables).admitted_by == ["t = 2 or 3 mod 4"]
    assert theta.check_key_inequality(5, tables).status == "precondition_unmet"

"""Theta series of the M_i ∩ T cosets, analytic bounds and the key inequality."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import model
from .lattice import Lattice
from .repnum import BracketedReal, divisors, sqrt_bracket
from .shortvec import norm_counts


@dataclass(frozen=True)
class ThetaTable:
    """Vector counts by norm, complete up to ``m_max``."""

    entries: dict[Fraction, int]
    m_max: Fraction
    source: str = "enumeration"
    label: str = ""

    def __getitem__(self, m) -> int:
        m = Fraction(m)
        if m > self.m_max:
            raise KeyError(f"norm {m} beyond table range {self.m_max}")
        return self.entries.get(m, 0)

    def norms(self) -> list[Fraction]:
        return sorted(self.entries)


def _gram_and_shift(obj):
    if isinstance(obj, model.CosetModel):
        return obj.base.gram, obj.shift, obj.label
    if isinstance(obj, model.ModelLattice):
        return obj.gram, None, obj.label
    if isinstance(obj, Lattice):
        return obj, None, obj.label
    gram, shift = obj
    return gram, shift, ""


def theta_coeffs(obj, m_max) -> ThetaTable:
    """Theta coefficients of a lattice or coset by exact enumeration.

    ``obj`` is a :class:`Lattice`, a model lattice, a model coset or a
    (gram, shift) pair.
    """
    gram, shift, label = _gram_and_shift(obj)
    m_max = Fraction(m_max)
    return ThetaTable(norm_counts(gram, shift, m_max), m_max, "enumeration", label)


def _coset_counts(args):
    i, kmax = args
    c = model.M_cosets()[i]
    return norm_counts(c.base.gram, c.shift, Fraction(kmax, 3))


def coset_tables(kmax: int, threads: int = 1) -> tuple[ThetaTable, ThetaTable, ThetaTable]:
    """Theta tables of M_1 ∩ T, M_2 ∩ T, M_3 ∩ T up to norm kmax / 3."""
    jobs = [(i, kmax) for i in range(3)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, 3)) as ex:
            results = list(ex.map(_coset_counts, jobs))
    else:
        results = [_coset_counts(j) for j in jobs]
    labels = ("M1∩T", "M2∩T", "M3∩T")
    return tuple(ThetaTable(r, Fraction(kmax, 3), "enumeration", lab) for r, lab in zip(results, labels))


@dataclass(frozen=True)
class ThetaRow:
    k: int
    n1: int
    n2: int
    n3: int

    @property
    def combination(self) -> int:
        return 4 * self.n1 - 10 * self.n2 - 15 * self.n3

    @property
    def flagged(self) -> bool:
        """Rows whose combination must be positive."""
        return 46 <= self.k <= 2108 and self.k % 12 in (4, 10)


def theta_rows(kmax: int, threads: int = 1) -> list[ThetaRow]:
    t1, t2, t3 = coset_tables(kmax, threads)
    rows = []
    for k in range(1, kmax + 1):
        m = Fraction(k, 3)
        rows.append(ThetaRow(k, t1[m], t2[m], t3[m]))
    return rows


CSV_HEADER = ("k", "N_M1capT", "N_M2capT", "N_M3capT", "4N1-10N2-15N3")


def rows_to_csv(rows: Sequence[ThetaRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow((r.k, r.n1, r.n2, r.n3, r.combination))
    return buf.getvalue()


def nonpositive_flagged(rows: Sequence[ThetaRow]) -> list[ThetaRow]:
    return [r for r in rows if r.flagged and r.combination <= 0]


# -- analytic bounds -------------------------------------------------------

def _fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if not man and exp:
        raise ArithmeticError("non-finite interval endpoint")
    return (-1 if sign else 1) * Fraction(int(man)) * Fraction(2) ** exp


def log_bracket(x) -> BracketedReal:
    """Rigorous enclosure of the natural logarithm of a positive rational."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a nonpositive number")
    v = mpmath.iv.log(mpmath.iv.mpf(x.numerator) / x.denominator)
    return BracketedReal(_fraction(v.a), _fraction(v.b))


class PreconditionError(ValueError):
    pass


def _t_of(m) -> int:
    t = Fraction(m) * Fraction(3, 2)
    if t.denominator != 1 or t <= 0:
        raise PreconditionError(f"3m/2 = {t} is not a positive integer")
    return int(t)


def bound_M1_lower(m) -> BracketedReal:
    """5.2488 m^(3/2), valid when t = 3m/2 is 2 or 11 mod 12."""
    t = _t_of(m)
    if t % 12 not in (2, 11):
        raise PreconditionError(f"t = {t} is not 2 or 11 mod 12")
    m = Fraction(m)
    return Fraction(52488, 10000) * m * sqrt_bracket(m)


def bound_M2_upper(m) -> BracketedReal:
    """(9m/4)(ln(3m/2) + 1), valid when t = 3m/2 is 2 mod 3."""
    t = _t_of(m)
    if t % 3 != 2:
        raise PreconditionError(f"t = {t} is not 2 mod 3")
    m = Fraction(m)
    return Fraction(9, 4) * m * (log_bracket(t) + 1)


def bound_M3_upper(m) -> BracketedReal:
    """9.0004 m (ln(3m/2) + 1), valid when t = 3m/2 is 2 mod 3."""
    t = _t_of(m)
    if t % 3 != 2:
        raise PreconditionError(f"t = {t} is not 2 mod 3")
    m = Fraction(m)
    return Fraction(90004, 10000) * m * (log_bracket(t) + 1)


def analytic_margin(t: int, factor=Fraction(1)) -> BracketedReal:
    """RHS minus LHS of the analytic comparison obtained from the bounds.

    4 * 5.2488 (2/3)^{3/2} t^{3/2} - factor * (10 * (3/2) + 15 * 9.0004 * (2/3)) t (log t + 1)
    """
    lg = log_bracket(t) + 1
    rhs = 4 * Fraction(52488, 10000) * Fraction(2, 3) * sqrt_bracket(Fraction(2, 3)) * t * sqrt_bracket(t)
    lhs = factor * (10 * Fraction(3, 2) + 15 * Fraction(90004, 10000) * Fraction(2, 3)) * t * lg
    return rhs - lhs


def divisor_refinement_holds(t: int) -> bool:
    """sum_{a | t} 1/a < 0.444 (log t + 1), decided rigorously."""
    s = sum((Fraction(1, a) for a in divisors(t)), Fraction(0))
    bound = Fraction(444, 1000) * (log_bracket(t) + 1)
    if s < bound.lower:
        return True
    if s > bound.upper:
        return False
    raise ArithmeticError(f"log enclosure too wide at t = {t}")


@dataclass
class KeyInequalityReport:
    t: int
    status: str  # "holds", "fails" or "precondition_unmet"
    admitted_by: list[str] = field(default_factory=list)
    n1: int = 0
    n2: int = 0
    n3: int = 0
    refinement: bool | None = None

    @property
    def lhs(self) -> int:
        return 10 * self.n2 + 15 * self.n3

    @property
    def rhs(self) -> int:
        return 4 * self.n1


def admitting_congruences(t: int) -> list[str]:
    """Which of the two stated congruence conditions admit t."""
    out = []
    if t % 12 in (2, 11):
        out.append("t = 2 or 11 mod 12")
    if t % 4 in (2, 3):
        out.append("t = 2 or 3 mod 4")
    return out


def check_key_inequality(t: int, tables: Sequence[ThetaTable] | None = None) -> KeyInequalityReport:
    """10 N_{M2∩T}(2t/3) + 15 N_{M3∩T}(2t/3) < 4 N_{M1∩T}(2t/3) by enumeration."""
    if t <= 0:
        raise ValueError("t must be positive")
    admitted = admitting_congruences(t)
    refinement = divisor_refinement_holds(t) if 1000 <= t <= 8528 else None
    if not admitted:
        return KeyInequalityReport(t, "precondition_unmet", admitted, refinement=refinement)
    m = Fraction(2 * t, 3)
    if tables is None or any(tb.m_max < m for tb in tables):
        tables = coset_tables(2 * t)
    n1, n2, n3 = (tb[m] for tb in tables)
    status = "holds" if 10 * n2 + 15 * n3 < 4 * n1 else "fails"
    return KeyInequalityReport(t, status, admitted, n1, n2, n3, refinement)

"""Exact integer and rational matrix routines.

Matrices are lists of rows.  Entries are Python ints or Fractions, so all
results are exact regardless of size.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list]


def to_fraction_matrix(a: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(a: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = to_fraction_matrix(a)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Inverse over the rationals; raises ValueError if singular."""
    n = len(a)
    m = [row + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(to_fraction_matrix(a))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve_left(basis: Sequence[Sequence], x: Sequence) -> list[Fraction] | None:
    """Rational c with c . basis = x, or None when x is outside the row span."""
    rows = to_fraction_matrix(basis)
    k, n = len(rows), len(x)
    # augmented system basis^T c = x
    m = [[rows[j][i] for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    if any(m[i][k] != 0 for i in range(r, n)):
        return None
    out = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        out[c] = m[i][k]
    return out


def rank(a: Sequence[Sequence]) -> int:
    m = to_fraction_matrix(a)
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def hnf_with_transform(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form H and unimodular U with U . a = H.

    Zero rows of H come last, so the matching rows of U span the integer
    left kernel of ``a``.
    """
    h = [list(map(int, row)) for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid down the column until a single nonzero entry remains
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def integer_left_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Basis (rows) of {x in Z^m : x . a = 0}."""
    if not a:
        return []
    h, u = hnf_with_transform(a)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def integer_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Basis (rows) of {x in Z^n : a . x = 0}."""
    return integer_left_kernel(transpose(a))


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows)
              for j in range(t, cols) if m[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            p = m[t][t]
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        changed = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        changed = True
            if changed:
                nz = [(abs(m[i][t]), i, t) for i in range(t, rows) if m[i][t]]
                nz += [(abs(m[t][j]), t, j) for j in range(t, cols) if m[t][j]]
                _, i, j = min(nz)
                m[t], m[i] = m[i], m[t]
                for row in m:
                    row[t], row[j] = row[j], row[t]
                continue
            # force divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % p), None)
            if bad is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def lll_reduce(basis: Sequence[Sequence[int]], gram: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> Matrix:
    """Exact LLL on integer coordinate rows w.r.t. a positive definite Gram.

    Only used to precondition enumeration; callers never rely on the
    reduced basis being canonical.
    """
    b = [list(map(int, row)) for row in basis]
    g = to_fraction_matrix(gram)
    n = len(b)

    def ip(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar_norm = [Fraction(0)] * n
        # Gram of b
        gb = [[ip(b[i], b[j]) for j in range(n)] for i in range(n)]
        r = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                r[i][j] = gb[i][j] - sum(mu[j][k] * r[i][k] for k in range(j))
                if j < i:
                    mu[i][j] = r[i][j] / bstar_norm[j]
            bstar_norm[i] = r[i][i]
        return mu, bstar_norm

    k = 1
    mu, bn = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, bn = gso()
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bn = gso()
            k = max(k - 1, 1)
    return b


def lcm_denominator(values) -> int:
    d = 1
    for v in values:
        q = Fraction(v).denominator
        d = d * q // gcd(d, q)
    return d

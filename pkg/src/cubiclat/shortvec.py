"""Short vector enumeration in positive definite lattices and their cosets.

The search tree is Fincke-Pohst over a floating point LDL^T factorisation,
expanded breadth first with numpy so whole layers of the tree are handled
at once.  Floating point only prunes: every bound is widened by a relative
margin of 2**-20 and each surviving candidate is re-checked with exact
integer arithmetic before it is reported.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from . import intlinalg as il
from .lattice import Lattice

MARGIN = 2.0 ** -20
CHUNK = 1 << 20


def _as_fractions(gram) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in gram]


def _positive_gram(L) -> list[list[Fraction]]:
    if isinstance(L, Lattice):
        if L.definite_sign != "positive":
            if L.definite_sign == "negative":
                return _as_fractions(L.positive_gram)
            raise ValueError(f"lattice {L.label!r} is indefinite")
        return _as_fractions(L.gram)
    g = _as_fractions(L)
    if Lattice(g).definite_sign != "positive":
        raise ValueError("Gram matrix is not positive definite")
    return g


def _ldl(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(g)
    lo = np.eye(n)
    d = np.zeros(n)
    for j in range(n):
        d[j] = g[j, j] - np.sum(lo[j, :j] ** 2 * d[:j])
        for i in range(j + 1, n):
            lo[i, j] = (g[i, j] - np.sum(lo[i, :j] * lo[j, :j] * d[:j])) / d[j]
    if np.any(d <= 0):
        raise ValueError("Gram matrix is not positive definite")
    return lo, d


class _Enumerator:
    """Fincke-Pohst on Z^n + shift for a fixed Gram matrix."""

    def __init__(self, gram: Sequence[Sequence[Fraction]], shift: Sequence[Fraction] | None = None):
        self.gram = _as_fractions(gram)
        n = len(self.gram)
        self.n = n
        self.shift = [Fraction(x) for x in (shift if shift is not None else [0] * n)]
        if len(self.shift) != n:
            raise ValueError("shift length differs from rank")
        self.gden = il.lcm_denominator(x for row in self.gram for x in row)
        self.tden = il.lcm_denominator(self.shift)
        self.gint = np.array([[int(x * self.gden) for x in row] for row in self.gram], dtype=np.int64)
        self.tnum = np.array([int(x * self.tden) for x in self.shift], dtype=np.int64)
        self.scale = self.gden * self.tden ** 2
        gf = np.array([[float(x) for x in row] for row in self.gram])
        self.mu, self.d = _ldl(gf)
        self.shift_f = np.array([float(x) for x in self.shift])

    def scaled_norms(self, x: np.ndarray) -> np.ndarray:
        """Exact integers scale * (x + shift)^2 for integer rows x."""
        z = x * self.tden + self.tnum
        return np.einsum("ij,ij->i", z @ self.gint, z)

    def chunks(self, bound: Fraction) -> Iterator[np.ndarray]:
        """Integer rows x with (x + shift)^2 <= bound, possibly with extras."""
        bf = float(bound) * (1 + MARGIN) + 1e-9
        n = self.n
        start = np.zeros((1, 0), dtype=np.int64)
        yield from self._expand(n - 1, start, np.zeros(1), bf)

    def _expand(self, level: int, x: np.ndarray, s: np.ndarray, bf: float) -> Iterator[np.ndarray]:
        n = self.n
        if len(x) == 0:
            return
        # x holds coordinates level+1 .. n-1
        y = x + self.shift_f[level + 1:]
        t = y @ self.mu[level + 1:, level] if level + 1 < n else np.zeros(len(x))
        c = -t - self.shift_f[level]
        rho = np.sqrt(np.maximum(bf - s, 0.0) / self.d[level]) * (1 + MARGIN)
        lo = np.ceil(c - rho - 1e-9).astype(np.int64)
        hi = np.floor(c + rho + 1e-9).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        total = int(cnt.sum())
        if total == 0:
            return
        if total > CHUNK and len(x) > 1:
            half = len(x) // 2
            yield from self._expand(level, x[:half], s[:half], bf)
            yield from self._expand(level, x[half:], s[half:], bf)
            return
        idx = np.repeat(np.arange(len(x)), cnt)
        offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        xl = lo[idx] + offs
        xn = np.column_stack([xl, x[idx]]) if x.shape[1] else xl[:, None]
        sn = s[idx] + self.d[level] * (xl + self.shift_f[level] + t[idx]) ** 2
        keep = sn <= bf
        xn, sn = xn[keep], sn[keep]
        if level == 0:
            yield xn
        else:
            yield from self._expand(level - 1, xn, sn, bf)


def _reduced_enumerator(gram, shift=None) -> tuple[_Enumerator, list[list[int]]]:
    """Enumerator in an LLL-reduced basis plus the change of basis U.

    A vector with coordinates y in the reduced basis has coordinates y . U
    in the original one.
    """
    g = _as_fractions(gram)
    n = len(g)
    u = il.lll_reduce(il.identity(n), g)
    g_red = il.matmul(il.matmul(u, g), il.transpose(u))
    shift_red = None
    if shift is not None:
        uinv = il.inverse(u)
        shift_red = [sum(Fraction(shift[i]) * uinv[i][j] for i in range(n)) for j in range(n)]
    return _Enumerator(g_red, shift_red), u


def _target_filter(enum: _Enumerator, x: np.ndarray, m: Fraction | None, bound: Fraction) -> np.ndarray:
    norms = enum.scaled_norms(x)
    if m is None:
        keep = norms * bound.denominator <= bound.numerator * enum.scale
    else:
        keep = norms * m.denominator == m.numerator * enum.scale
    return x[keep]


def _collect_array(gram, shift, m: Fraction | None, bound: Fraction) -> np.ndarray:
    enum, u = _reduced_enumerator(gram, shift)
    u_np = np.array(u, dtype=np.int64)
    rows = [np.zeros((0, enum.n), dtype=np.int64)]
    for chunk in enum.chunks(bound):
        sel = _target_filter(enum, chunk, m, bound)
        if len(sel):
            rows.append(sel @ u_np)
    return np.concatenate(rows)


def coset_norm_array(L, t: Sequence, m) -> np.ndarray:
    """Integer rows x such that x + t has norm m, unsorted.

    The array form of :func:`vectors_of_norm_in_coset` for callers that
    post-process large candidate sets with numpy.
    """
    m = Fraction(m)
    if m < 0:
        raise ValueError("norm target must be nonnegative")
    return _collect_array(_positive_gram(L), [Fraction(x) for x in t], m, m)


def _collect(gram, shift, m: Fraction | None, bound: Fraction) -> list[tuple[Fraction, ...]]:
    allx = _collect_array(gram, shift, m, bound)
    n = allx.shape[1]
    if not len(allx):
        return []
    t = [Fraction(x) for x in (shift if shift is not None else [0] * n)]
    if all(v == 0 for v in t):
        out = [tuple(int(c) for c in r) for r in allx.tolist()]
    else:
        out = [tuple(c + tc for c, tc in zip(r, t)) for r in allx.tolist()]
    out.sort()
    return out


def vectors_of_norm(L, m) -> list[tuple[int, ...]]:
    """All coordinate vectors x with x^T G x = m, sorted lexicographically."""
    m = Fraction(m)
    if m < 0:
        raise ValueError("norm target must be nonnegative")
    return _collect(_positive_gram(L), None, m, m)


def vectors_up_to_norm(L, bound) -> list[tuple[int, ...]]:
    bound = Fraction(bound)
    return _collect(_positive_gram(L), None, None, bound)


def vectors_of_norm_in_coset(L, t: Sequence, m) -> list[tuple[Fraction, ...]]:
    """All vectors of L + t of norm m, as rational coordinate tuples."""
    m = Fraction(m)
    if m < 0:
        raise ValueError("norm target must be nonnegative")
    return _collect(_positive_gram(L), [Fraction(x) for x in t], m, m)


def canonical_shift(t: Sequence) -> tuple[Fraction, ...]:
    """Representative of t modulo the lattice with coordinates in [0, 1)."""
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in t)


def roots(L) -> list[tuple[int, ...]]:
    return vectors_of_norm(L, 2)


def count_roots_orthogonal(L, v: Sequence) -> int:
    """Number of roots r of L with (r, v) = 0; v in L's (rational) coordinates."""
    g = _positive_gram(L)
    gv = [sum(g[i][j] * Fraction(v[j]) for j in range(len(v))) for i in range(len(g))]
    return sum(1 for r in roots(L) if sum(ri * gi for ri, gi in zip(r, gv)) == 0)


_memo_lock = threading.Lock()
_memo: dict = {}


def norm_counts(L, t: Sequence | None, bound) -> dict[Fraction, int]:
    """Counts of vectors of L + t by norm, for all norms up to ``bound``.

    Results are memoised per (Gram, shift) and reused for smaller bounds.
    """
    bound = Fraction(bound)
    g = _positive_gram(L)
    shift = tuple(canonical_shift(t)) if t is not None else tuple(Fraction(0) for _ in g)
    key = (tuple(tuple(r) for r in g), shift)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None and hit[0] >= bound:
        return {k: v for k, v in hit[1].items() if k <= bound}
    enum, _ = _reduced_enumerator(g, shift)
    limit = bound.numerator * enum.scale // bound.denominator
    acc = np.zeros(int(limit) + 1, dtype=np.int64)
    for chunk in enum.chunks(bound):
        norms = enum.scaled_norms(chunk)
        norms = norms[norms <= limit]
        acc += np.bincount(norms, minlength=len(acc))
    counts = {Fraction(int(k), enum.scale): int(c) for k, c in enumerate(acc) if c}
    with _memo_lock:
        _memo[key] = (bound, counts)
    return counts


def box_search(L, m, t: Sequence | None = None) -> list[tuple[Fraction, ...]]:
    """Naive enumeration over the box containing the norm-m ellipsoid.

    Coordinate bounds |x_i + t_i| <= sqrt(m * (G^-1)_ii) are computed
    exactly; used only to cross-check the tree search.
    """
    g = _positive_gram(L)
    n = len(g)
    m = Fraction(m)
    t = [Fraction(x) for x in (t if t is not None else [0] * n)]
    ginv = il.inverse(g)
    ranges = []
    for i in range(n):
        r2 = m * ginv[i][i]
        # smallest integer R with R^2 >= r2
        R = isqrt(r2.numerator // r2.denominator)
        while R * R < r2:
            R += 1
        lo = -R - t[i]
        hi = R - t[i]
        ranges.append(range(int(np.floor(float(lo))) - 1, int(np.ceil(float(hi))) + 2))
    grid = np.array(np.meshgrid(*ranges, indexing="ij")).reshape(n, -1).T.astype(np.int64)
    enum = _Enumerator(g, t)
    norms = enum.scaled_norms(grid)
    sel = grid[norms * m.denominator == m.numerator * enum.scale]
    out = [tuple(Fraction(int(c)) + tc for c, tc in zip(r, t)) for r in sel.tolist()]
    out.sort()
    return out

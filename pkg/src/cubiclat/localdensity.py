"""Local densities alpha_p(t, S) of integral quadratic forms.

Two independent routes:

* :func:`alpha_p_direct` counts solutions of S(x) = t modulo p^a.  The form is
  first split into orthogonal blocks over Z_(p) (a change of basis that is
  invertible mod p^a, so counts are preserved), then the value distributions
  of the blocks are convolved.
* :func:`alpha_p_yang` evaluates Yang's closed formulas for R_1 from a
  :class:`LocalNormalForm`.

Forms are given by their even integral Gram matrix A, with S(x) = x^T A x / 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    n, d, v = x.numerator, x.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _vp0(x, p: int) -> float:
    return float("inf") if x == 0 else vp(x, p)


def mod_pa(x, q: int) -> int:
    """Image of a p-integral rational in Z/q."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, q) % q


def legendre(u, p: int) -> int:
    r = mod_pa(u, p)
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def hilbert2(x) -> int:
    """(2, x)_2 for a 2-adic unit x, else 0."""
    x = Fraction(x)
    if vp(x, 2) != 0:
        return 0
    return 1 if mod_pa(x, 8) in (1, 7) else -1


def jordan_split(A: Sequence[Sequence], p: int) -> list[list[list[Fraction]]]:
    """Orthogonal splitting of the bilinear form A over Z_(p).

    Returns 1x1 blocks (and 2x2 blocks when p = 2) whose direct sum is
    Z_(p)-equivalent to A.
    """
    M = [[Fraction(x) for x in row] for row in A]
    blocks = []
    while M:
        n = len(M)
        m = min(_vp0(M[i][j], p) for i in range(n) for j in range(n))
        piv = next(([i] for i in range(n) if _vp0(M[i][i], p) == m), None)
        if piv is None:
            i, j = next((i, j) for i in range(n) for j in range(n)
                        if i != j and _vp0(M[i][j], p) == m)
            if p != 2:
                # e_i -> e_i + e_j makes the diagonal reach valuation m
                for k in range(n):
                    M[i][k] += M[j][k]
                for k in range(n):
                    M[k][i] += M[k][j]
                piv = [i]
            else:
                piv = [i, j]
        blk = [[M[a][b] for b in piv] for a in piv]
        blocks.append(blk)
        rest = [k for k in range(n) if k not in piv]
        if len(piv) == 1:
            c = blk[0][0]
            M = [[M[a][b] - M[a][piv[0]] * M[piv[0]][b] / c for b in rest] for a in rest]
        else:
            i, j = piv
            det = blk[0][0] * blk[1][1] - blk[0][1] * blk[1][0]
            inv = [[blk[1][1] / det, -blk[0][1] / det], [-blk[1][0] / det, blk[0][0] / det]]
            new = []
            for a in rest:
                va = (M[a][i], M[a][j])
                row = []
                for b in rest:
                    vb = (M[i][b], M[j][b])
                    s = sum(va[x] * inv[x][y] * vb[y] for x in range(2) for y in range(2))
                    row.append(M[a][b] - s)
                new.append(row)
            M = new
    return blocks


def _block_distribution(blk, q: int) -> np.ndarray:
    """Histogram over Z/q of the values of the quadratic form x^T blk x / 2."""
    y = np.arange(q, dtype=np.int64)
    sq = y * y % q
    if len(blk) == 1:
        vals = mod_pa(blk[0][0] / 2, q) * sq % q
        return np.bincount(vals, minlength=q).astype(np.int64)
    c1, c2, c12 = mod_pa(blk[0][0] / 2, q), mod_pa(blk[1][1] / 2, q), mod_pa(blk[0][1], q)
    out = np.zeros(q, dtype=np.int64)
    base2 = c2 * sq % q
    for y1 in range(q):
        vals = (c1 * (y1 * y1 % q) + c12 * y1 % q * y % q + base2) % q
        out += np.bincount(vals, minlength=q)
    return out


def _pack(coeffs: list[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _cyclic_convolve(x: list[int], y: list[int], q: int) -> list[int]:
    """Exact cyclic convolution over Z/q of nonnegative integer sequences.

    Both sequences are packed into one big integer each (Kronecker
    substitution) so a single big-integer product does the work.
    """
    bound = max(x) * max(y) * q
    width = (bound.bit_length() + 8) // 8
    z = (_pack(x, width) * _pack(y, width)).to_bytes(width * (2 * q), "little")
    coeff = [int.from_bytes(z[i * width:(i + 1) * width], "little") for i in range(2 * q - 1)]
    return [coeff[i] + (coeff[i + q] if i + q < len(coeff) else 0) for i in range(q)]


def alpha_p_direct(A: Sequence[Sequence], t: int, p: int, a: int, budget: int = 10**9) -> Fraction:
    """p^{-a(r-1)} #{x in (Z/p^a)^r : S(x) = t mod p^a}, exactly.

    ``budget`` caps the work (sum over blocks of q^dim, plus q per
    convolution), raising ValueError when exceeded.
    """
    if a < 1:
        raise ValueError("level must be at least 1")
    q = p ** a
    r = len(A)
    blocks = jordan_split(A, p)
    work = sum(q ** len(b) for b in blocks) + len(blocks) * q
    if work > budget:
        raise ValueError(f"work {work} exceeds budget {budget}")
    dist = [1] + [0] * (q - 1)
    for blk in blocks:
        dist = _cyclic_convolve(dist, _block_distribution(blk, q).tolist(), q)
    return Fraction(dist[t % q], p ** (a * (r - 1)))


def alpha_p_brute(A: Sequence[Sequence], t: int, p: int, a: int) -> Fraction:
    """Literal count over (Z/p^a)^r; only for tiny levels."""
    q = p ** a
    r = len(A)
    An = np.array([[int(x) for x in row] for row in A], dtype=np.int64)
    grid = np.stack(np.meshgrid(*[np.arange(q)] * r, indexing="ij"), -1).reshape(-1, r)
    vals = np.einsum("ij,jk,ik->i", grid, An, grid) // 2
    return Fraction(int(np.sum(vals % q == t % q)), q ** (r - 1))


def stable_level(A: Sequence[Sequence], t: int, p: int) -> int:
    """a* = v_p(2t) + v_p(det A) + 2, past which the finite densities are constant."""
    from .intlinalg import det
    return vp(2 * t, p) + vp(det(A), p) + 2


@dataclass(frozen=True)
class LocalNormalForm:
    """Z_p-normal form of a quadratic form x^T S x.

    ``diagonal`` holds (unit, exponent) pairs for eps * p^l; at p = 2,
    ``u_blocks`` and ``v_blocks`` hold (unit, exponent) for
    eps * 2^m [[0, 1/2], [1/2, 0]] and eps * 2^n [[1, 1/2], [1/2, 1]].
    """

    p: int
    diagonal: tuple[tuple[Fraction, int], ...]
    u_blocks: tuple[tuple[Fraction, int], ...] = field(default=())
    v_blocks: tuple[tuple[Fraction, int], ...] = field(default=())

    def __post_init__(self):
        p = self.p
        for name in ("diagonal", "u_blocks", "v_blocks"):
            entries = tuple((Fraction(e), int(l)) for e, l in getattr(self, name))
            object.__setattr__(self, name, entries)
            exps = [l for _, l in entries]
            if exps != sorted(exps):
                raise ValueError(f"{name} exponents must be nondecreasing")
            if any(vp(e, p) != 0 for e, _ in entries):
                raise ValueError(f"{name} entries must be p-adic units")
        if p != 2 and (self.u_blocks or self.v_blocks):
            raise ValueError("U/V blocks only occur at p = 2")
        exps = [l for _, l in self.diagonal + self.u_blocks + self.v_blocks]
        if not exps or min(exps) != 0:
            raise ValueError("normal form must have minimal exponent 0")

    @property
    def rank(self) -> int:
        return len(self.diagonal) + 2 * len(self.u_blocks) + 2 * len(self.v_blocks)

    def gram_half(self) -> list[list[Fraction]]:
        """The half-integral matrix S of the normal form."""
        n = self.rank
        g = [[Fraction(0)] * n for _ in range(n)]
        i = 0
        for e, l in self.diagonal:
            g[i][i] = e * Fraction(self.p) ** l
            i += 1
        for e, m in self.u_blocks:
            s = e * Fraction(2) ** m
            g[i][i + 1] = g[i + 1][i] = s / 2
            i += 2
        for e, m in self.v_blocks:
            s = e * Fraction(2) ** m
            g[i][i] = g[i + 1][i + 1] = s
            g[i][i + 1] = g[i + 1][i] = s / 2
            i += 2
        return g


def odd_normal_form(A: Sequence[Sequence], p: int) -> LocalNormalForm:
    """Diagonal Z_p normal form of S = A/2 for odd p."""
    if p == 2:
        raise ValueError("use a hard-coded normal form at p = 2")
    entries = []
    for blk in jordan_split(A, p):
        s = blk[0][0] / 2
        l = vp(s, p)
        entries.append((s / Fraction(p) ** l, l))
    entries.sort(key=lambda e: e[1])
    return LocalNormalForm(p, tuple(entries))


def _unit_part(t: int, p: int) -> tuple[Fraction, int]:
    a = vp(t, p)
    return Fraction(t) / Fraction(p) ** a, a


def _pow_half(p: int, twice_exp: int) -> tuple[Fraction, bool]:
    """p^(twice_exp/2) as (rational part, whether a factor sqrt(p) remains)."""
    if twice_exp % 2 == 0:
        return Fraction(p) ** (twice_exp // 2), False
    return Fraction(p) ** ((twice_exp - 1) // 2), True


def _r1_odd(nf: LocalNormalForm, t: int) -> Fraction:
    p = nf.p
    u, a = _unit_part(t, p)
    diag = nf.diagonal

    def odd_set(k):
        return [i for i, (_, l) in enumerate(diag) if l < k and (l - k) % 2]

    def twice_d(k):
        return 2 * k + sum(l - k for _, l in diag if l < k)

    def v(k):
        s = legendre(-1, p) ** (len(odd_set(k)) // 2)  # nonnegative exponent
        for i in odd_set(k):
            s *= legendre(diag[i][0], p)
        return s

    total = Fraction(0)
    for k in range(1, a + 1):
        if len(odd_set(k)) % 2 == 0:
            val, root = _pow_half(p, twice_d(k))
            assert not root
            total += (1 - Fraction(1, p)) * v(k) * val
    k = a + 1
    val, root = _pow_half(p, twice_d(k))
    if len(odd_set(k)) % 2 == 0:
        assert not root
        total += v(k) * val * Fraction(-1, p)
    else:
        # f(t) = (u/p) / sqrt(p) absorbs the half-integral power
        assert root
        total += v(k) * val * legendre(u, p)
    return total


def _r1_two(nf: LocalNormalForm, t: int) -> Fraction:
    u, a = _unit_part(t, 2)
    diag, ub, vb = nf.diagonal, nf.u_blocks, nf.v_blocks
    total = Fraction(0)
    for k in range(1, a + 4):
        odd = [h for h, (_, l) in enumerate(diag) if l < k - 1 and (l - k + 1) % 2]
        pk = -1 if sum(n - k for _, n in vb if n < k) % 2 else 1
        eps_k = Fraction(1)
        for h in odd:
            eps_k *= diag[h][0]
        twice_d = (2 * k + sum(l - k + 1 for _, l in diag if l < k - 1)
                   + 2 * sum(m - k for _, m in ub if m < k)
                   + 2 * sum(n - k for _, n in vb if n < k))
        delta = 0 if any(l == k - 1 for _, l in diag) else 1
        if not delta:
            continue
        mu = u * Fraction(2) ** (a - k + 3) - sum((e for e, l in diag if l < k - 1), Fraction(0))
        if len(odd) % 2:
            val, root = _pow_half(2, twice_d - 3)
            assert not root
            total += pk * (hilbert2(mu * eps_k) if mu else 0) * val
        elif mu == 0 or vp(mu, 2) >= 2:
            # mu in 4Z_2: the exponential is +1 on 8Z_2 and -1 on 4 + 8Z_2
            val, root = _pow_half(2, twice_d - 2)
            assert not root
            psi = 1 if mu == 0 or vp(mu, 2) >= 3 else -1
            total += pk * hilbert2(eps_k) * val * psi
    return total


def alpha_p_yang(nf: LocalNormalForm, t: int) -> Fraction:
    """alpha_p(t, S) = 1 + R_1(t, S) from the closed formulas."""
    if t == 0:
        raise ValueError("t must be nonzero")
    if nf.p == 2:
        return 1 + _r1_two(nf, t)
    return 1 + _r1_odd(nf, t)

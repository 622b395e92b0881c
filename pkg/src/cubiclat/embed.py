"""Embedding certificates for the rank three lattice B_n inside U + E8(-1).

A certificate (n, alpha, beta, v) fixes

    a1, a2  -> the model A2 inside E8,
    l       =  alpha e + beta f + v'        in U + E8(-1),

with v' = v + v2 (d = 2 mod 6, v in T = E6 + [1]) or v' = v (d = 0 mod 6,
v in E6).  Its value is the number m of pairs of (-2)-vectors of U + E8(-1)
orthogonal to a1, a2 and l.

Two routes compute m.  :func:`classify_roots` applies the divisibility rules
over the 72 roots of E6.  :func:`verify_certificate` ignores those rules and
instead enumerates the rank 7 orthogonal complement of <a1, a2, l> from
scratch with exact rational arithmetic.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from . import intlinalg as il
from . import model
from .lattice import Lattice, direct_sum, format_rational, parse_rational
from .model import A1_ROOT, A2_ROOT, E8, GLUE_A2, MODEL_ID, S_ROOTS, dot
from .shortvec import coset_norm_array

log = logging.getLogger(__name__)

SCHEMA = "cubic-cert/1"


# -- lattices ------------------------------------------------------------------

def bn_lattice(n: int, eps: int) -> Lattice:
    if n < 1 or eps not in (0, 1):
        raise ValueError("need n >= 1 and eps in {0, 1}")
    return Lattice([[-2, 1, 0], [1, -2, eps], [0, eps, 2 * n]], f"B_{n}(eps={eps})")


def u_lattice() -> Lattice:
    return Lattice([[0, 1], [1, 0]], "U")


def e8_negative() -> Lattice:
    return E8.lattice().twist("E8(-1)")


def build_Kd_perp(n: int, d_mod_6: int) -> Lattice:
    """B_n + U + E8(-1) + E8(-1), the lattice K_d-perp(-1)."""
    if d_mod_6 not in (0, 2):
        raise ValueError("d_mod_6 must be 0 or 2")
    if n < 1 or (d_mod_6 == 0 and n < 2):
        raise ValueError(f"invalid n = {n} for d = {d_mod_6} mod 6")
    eps = 1 if d_mod_6 == 2 else 0
    e8n = e8_negative()
    d = 6 * n + d_mod_6
    return direct_sum(bn_lattice(n, eps), u_lattice(), e8n, e8n, label=f"K_{d}^perp(-1)")


# -- certificates --------------------------------------------------------------

@dataclass(frozen=True)
class TypeCounts:
    typeI: int = 0
    typeII: int = 0
    typeIII: int = 0
    diag_extra: int = 0

    @property
    def total(self) -> int:
        return self.typeI + self.typeII + self.typeIII + self.diag_extra

    def to_json(self) -> dict:
        return {"typeI": self.typeI, "typeII": self.typeII, "typeIII": self.typeIII,
                "alpha_eq_beta_extra": self.diag_extra}

    @classmethod
    def from_json(cls, obj: dict) -> "TypeCounts":
        keys = {"typeI", "typeII", "typeIII", "alpha_eq_beta_extra"}
        if set(obj) != keys:
            raise ValueError(f"type_breakdown keys must be {sorted(keys)}")
        vals = [obj["typeI"], obj["typeII"], obj["typeIII"], obj["alpha_eq_beta_extra"]]
        if any(type(x) is not int for x in vals):
            raise ValueError("type_breakdown entries must be integers")
        return cls(*vals)


@dataclass(frozen=True)
class EmbeddingCertificate:
    d_mod_6: int
    n: int
    alpha: int
    beta: int
    v: tuple[Fraction, ...]
    claimed_m: int
    type_breakdown: TypeCounts
    model_id: str = MODEL_ID

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "d_mod_6": self.d_mod_6,
            "n": self.n,
            "alpha": self.alpha,
            "beta": self.beta,
            "v": [format_rational(x) for x in self.v],
            "claimed_m": self.claimed_m,
            "type_breakdown": self.type_breakdown.to_json(),
            "model_id": self.model_id,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict | str) -> "EmbeddingCertificate":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        if not isinstance(obj, dict):
            raise ValueError("certificate must be a JSON object")
        keys = {"schema", "d_mod_6", "n", "alpha", "beta", "v", "claimed_m", "type_breakdown", "model_id"}
        if set(obj) != keys:
            raise ValueError(f"certificate keys must be {sorted(keys)}")
        if obj["schema"] != SCHEMA:
            raise ValueError(f"unknown schema {obj['schema']!r}")
        for k in ("d_mod_6", "n", "alpha", "beta", "claimed_m"):
            if type(obj[k]) is not int:
                raise ValueError(f"{k} must be an integer")
        if not isinstance(obj["v"], list) or not all(isinstance(x, str) for x in obj["v"]):
            raise ValueError("v must be a list of rational strings")
        if not isinstance(obj["model_id"], str):
            raise ValueError("model_id must be a string")
        return cls(obj["d_mod_6"], obj["n"], obj["alpha"], obj["beta"],
                   tuple(parse_rational(x) for x in obj["v"]), obj["claimed_m"],
                   TypeCounts.from_json(obj["type_breakdown"]), obj["model_id"])


def expected_norm(d_mod_6: int, n: int, alpha: int, beta: int) -> Fraction:
    if d_mod_6 == 2:
        return 2 * Fraction(alpha * beta - n) - Fraction(2, 3)
    return 2 * Fraction(alpha * beta - n)


# -- classification by divisibility -------------------------------------------

_SCALED_ROOTS: list[np.ndarray] = []


def _scaled_e6_roots() -> np.ndarray:
    """Rows 2r for the 72 roots of E6."""
    if not _SCALED_ROOTS:
        _SCALED_ROOTS.append(np.array([[int(2 * x) for x in r] for r in model.e6_roots()], dtype=np.int64))
    return _SCALED_ROOTS[0]


def _pairings(W6: np.ndarray) -> np.ndarray:
    """(w, r) for rows 6w and all E6 roots r, as exact integers."""
    prod = W6 @ _scaled_e6_roots().T
    if np.any(prod % 12):
        raise ValueError("vector does not pair integrally with the E6 roots")
    return prod // 12


def _counts_from_pairings(C: np.ndarray, alpha: int, beta: int) -> np.ndarray:
    """Rows (2 typeI, 2 typeII, 2 typeIII) for a matrix of root pairings."""
    nz = C != 0
    t1 = np.sum(~nz, axis=1)
    t2 = np.sum(nz & (C % beta == 0), axis=1)
    t3 = np.sum(nz & (C % alpha == 0), axis=1)
    return np.stack([t1, t2, t3], axis=1)


def classify_roots(alpha: int, beta: int, v: Sequence) -> TypeCounts:
    """Type I/II/III counts from the divisibility rules over the E6 roots.

    For a root r with c = (v, r): c = 0 gives Type I, beta | c gives Type II
    and alpha | c gives Type III (both may apply).  Each +/- pair of roots
    contributes once; alpha = beta adds the vector e - f.
    """
    v = tuple(Fraction(x) for x in v)
    if dot(v, A1_ROOT) != 0 or dot(v, A2_ROOT) != 0:
        raise ValueError("v is not orthogonal to A2")
    if not model.E6_DUAL.member(v):
        raise ValueError("v is not in E6^dual")
    W6 = np.array([[int(6 * x) for x in v]], dtype=np.int64)
    t1, t2, t3 = (int(x) // 2 for x in _counts_from_pairings(_pairings(W6), alpha, beta)[0])
    return TypeCounts(t1, t2, t3, 1 if alpha == beta else 0)


# -- independent verification --------------------------------------------------

def _ambient_gram() -> list[list[int]]:
    g8 = E8.gram
    g = [[0] * 10 for _ in range(10)]
    g[0][1] = g[1][0] = 1
    for i in range(8):
        for j in range(8):
            g[2 + i][2 + j] = -int(g8[i][j])
    return g


def _ambient_coords(a: int, b: int, y: Sequence) -> list[int] | None:
    c = E8.coords(y) if any(y) else [Fraction(0)] * 8
    if any(x.denominator != 1 for x in c):
        return None
    return [a, b] + [int(x) for x in c]


def _e8_vector(coords: Sequence[int]) -> tuple[Fraction, ...]:
    return E8.vector(coords[2:])


def _exact_short_vectors(gram: Sequence[Sequence[Fraction]], target: Fraction) -> list[tuple[int, ...]]:
    """All x with x^T gram x = target, by exact rational Fincke-Pohst."""
    n = len(gram)
    g = il.to_fraction_matrix(gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for j in range(n):
        d[j] = g[j][j] - sum(mu[j][k] ** 2 * d[k] for k in range(j))
        for i in range(j + 1, n):
            mu[i][j] = (g[i][j] - sum(mu[i][k] * mu[j][k] * d[k] for k in range(j))) / d[j]
    if any(x <= 0 for x in d):
        raise ValueError("complement is not definite")
    out = []
    x = [0] * n

    def rec(i: int, rest: Fraction):
        c = sum((mu[j][i] * x[j] for j in range(i + 1, n)), Fraction(0))
        r2 = rest / d[i]
        x0 = -round(c)
        lo = x0
        while (lo - 1 + c) ** 2 <= r2:
            lo -= 1
        hi = x0
        while (hi + 1 + c) ** 2 <= r2:
            hi += 1
        for xi in range(lo, hi + 1):
            q = (xi + c) ** 2
            if q > r2:
                continue
            x[i] = xi
            left = rest - d[i] * q
            if i == 0:
                if left == 0:
                    out.append(tuple(x))
            else:
                rec(i - 1, left)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return out


@dataclass
class ComplementReport:
    rank: int
    roots: list[tuple[int, ...]]  # ambient Z^10 coordinates (e, f, E8 basis)
    breakdown: TypeCounts
    lemma41_violations: int
    saturation_index: int


def complement_roots(alpha: int, beta: int, y: Sequence) -> ComplementReport:
    """(-2)-vectors of U + E8(-1) orthogonal to a1, a2 and alpha e + beta f + y.

    ``y`` is the E8 component of l in the model.
    """
    G = _ambient_gram()
    rows = [_ambient_coords(0, 0, A1_ROOT), _ambient_coords(0, 0, A2_ROOT), _ambient_coords(alpha, beta, y)]
    if any(r is None for r in rows):
        raise ValueError("generator outside U + E8")
    sat_index = 1
    for dv in il.smith_invariants(rows):
        sat_index *= dv
    SG = il.matmul(rows, G)
    K = il.integer_kernel(SG)
    if len(K) != 7:
        raise ValueError(f"complement has rank {len(K)}, expected 7")
    gk = il.matmul(il.matmul(K, G), il.transpose(K))
    pos = [[-x for x in row] for row in gk]
    red = il.lll_reduce(il.identity(7), pos)
    basis = il.matmul(red, K)
    pos_red = [[-x for x in row] for row in il.matmul(il.matmul(basis, G), il.transpose(basis))]
    sols = _exact_short_vectors(pos_red, Fraction(2))
    roots = sorted(tuple(sum(c * b[j] for c, b in zip(s, basis)) for j in range(10)) for s in sols)
    cnt = [0, 0, 0, 0]
    bad = 0
    for r in roots:
        a, b = r[0], r[1]
        if a == 0 and b == 0:
            cnt[0] += 1
        elif b == 0:
            cnt[1] += 1
        elif a == 0:
            cnt[2] += 1
        elif a * b == -1:
            cnt[3] += 1
        else:
            bad += 1
    bd = TypeCounts(*(c // 2 for c in cnt))
    return ComplementReport(7, roots, bd, bad, sat_index)


def _reflect(y: Sequence[Fraction], s: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = dot(y, s) * 2 / dot(s, s)
    return tuple(a - c * b for a, b in zip(y, s))


def j_involution(y: Sequence) -> tuple[Fraction, ...]:
    """J = product of the reflections in s1, s2, s3 acting on the E8 model."""
    out = tuple(Fraction(x) for x in y)
    for s in S_ROOTS:
        out = _reflect(out, s)
    return out


def jprime_fixes_negatively(root: Sequence[int]) -> bool:
    """J'(r) = -r for an ambient root r; J' is -1 on U and J on E8."""
    y = _e8_vector(root)
    return j_involution(y) == tuple(-x for x in y)


def cert_e8_component(cert: EmbeddingCertificate) -> tuple[Fraction, ...]:
    v = tuple(Fraction(x) for x in cert.v)
    return model.add(v, GLUE_A2) if cert.d_mod_6 == 2 else v


def jprime_check(cert: EmbeddingCertificate) -> bool:
    """True when J'(r) != -r for every r in R_l, enumerated explicitly."""
    rep = complement_roots(cert.alpha, cert.beta, cert_e8_component(cert))
    return not any(jprime_fixes_negatively(r) for r in rep.roots)


def s_coordinates(v: Sequence) -> tuple[Fraction, Fraction, Fraction] | None:
    """(x1, x2, x3) with v = sum x_i s_i, or None outside that span."""
    c = il.solve_left(S_ROOTS, [Fraction(x) for x in v])
    return None if c is None else tuple(c)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "general_type", "nonneg_kodaira" or "invalid"
    gate: str | None = None
    reason: str = ""

    @property
    def valid(self) -> bool:
        return self.kind != "invalid"

    def __str__(self) -> str:
        return self.kind if self.valid else f"invalid[{self.gate}]: {self.reason}"


def _invalid(gate: str, reason: str) -> Verdict:
    return Verdict("invalid", gate, reason)


def verify_certificate(cert: EmbeddingCertificate | dict | str) -> Verdict:
    """Check every gate of a certificate; the root count comes from the complement."""
    if not isinstance(cert, EmbeddingCertificate):
        try:
            cert = EmbeddingCertificate.from_json(cert)
        except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
            return _invalid("schema", str(exc))
    c = cert
    if c.model_id != MODEL_ID:
        return _invalid("model", f"model_id {c.model_id!r} is not the built-in model")
    if c.d_mod_6 not in (0, 2):
        return _invalid("schema", "d_mod_6 must be 0 or 2")
    if c.n < 1 or (c.d_mod_6 == 0 and c.n < 2):
        return _invalid("schema", "n out of range")
    if c.alpha < 1 or c.beta < 1:
        return _invalid("schema", "alpha and beta must be positive")
    if len(c.v) != 8:
        return _invalid("schema", "v must have 8 coordinates")
    bd = c.type_breakdown
    if min(bd.typeI, bd.typeII, bd.typeIII, bd.diag_extra) < 0 or bd.diag_extra > 1:
        return _invalid("breakdown", "breakdown counts out of range")
    if bd.diag_extra and c.alpha != c.beta:
        return _invalid("breakdown", "alpha = beta extra claimed with alpha != beta")
    if bd.total != c.claimed_m:
        return _invalid("breakdown", "breakdown does not sum to claimed_m")
    if not 1 <= c.claimed_m <= 7:
        return _invalid("range", f"claimed_m = {c.claimed_m} outside [1, 7]")
    if not c.n < c.alpha * c.beta < 2 * c.n:
        return _invalid("window", "n < alpha beta < 2n fails")
    v = tuple(Fraction(x) for x in c.v)
    if dot(v, v) != expected_norm(c.d_mod_6, c.n, c.alpha, c.beta):
        return _invalid("norm", f"(v, v) = {dot(v, v)} != {expected_norm(c.d_mod_6, c.n, c.alpha, c.beta)}")
    if dot(v, A1_ROOT) != 0 or dot(v, A2_ROOT) != 0:
        return _invalid("lattice", "v is not orthogonal to A2")
    if c.d_mod_6 == 2:
        if not (model.E6_DUAL.member(v) and E8.member(model.add(v, GLUE_A2))):
            return _invalid("lattice", "v is not in the coset T = E6 + [1]")
    else:
        if not E8.member(v):
            return _invalid("lattice", "v is not in E6")
        xs = s_coordinates(v)
        if xs is None or any(x == 0 for x in xs):
            return _invalid("span", "v is not x1 s1 + x2 s2 + x3 s3 with all x_i nonzero")
        cs = model.e6().coords(v)
        if gcd(*[int(x) for x in cs]) != 1:
            return _invalid("primitivity", "v is not primitive in E6")
        if gcd(c.alpha, c.beta) % 3 == 0:
            return _invalid("primitivity", "3 divides gcd(alpha, beta)")
    rep = complement_roots(c.alpha, c.beta, cert_e8_component(c))
    if rep.saturation_index != 1:
        return _invalid("primitivity", f"<a1, a2, l> has saturation index {rep.saturation_index}")
    if len(rep.roots) != 2 * c.claimed_m:
        return _invalid("roots", f"complement has {len(rep.roots)} roots, claimed {2 * c.claimed_m}")
    if rep.lemma41_violations:
        return _invalid("breakdown", "complement root with alpha' beta' outside {0, -1}")
    if rep.breakdown != bd:
        return _invalid("breakdown", f"complement breakdown {rep.breakdown} != claimed {bd}")
    if c.d_mod_6 == 0 and any(jprime_fixes_negatively(r) for r in rep.roots):
        return _invalid("jprime", "some root r has J'(r) = -r")
    return Verdict("general_type" if c.claimed_m <= 6 else "nonneg_kodaira")


# -- searches ------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    max_pairs: int = 200
    max_candidates: int = 10**6
    max_m: int = 7
    target_m: int | None = None  # accept only this m when set


@dataclass
class SearchResult:
    n: int
    d_mod_6: int
    certificate: EmbeddingCertificate | None
    pairs_tried: int = 0
    candidates: int = 0
    exhausted: bool = False
    best_m: dict = field(default_factory=dict)  # (alpha, beta) -> smallest positive m seen

    @property
    def found(self) -> bool:
        return self.certificate is not None


def search_pairs(n: int, d_mod_6: int) -> list[tuple[int, int]]:
    """(alpha, beta) with alpha <= beta and n < alpha beta < 2n, by (alpha beta, alpha)."""
    out = []
    for a in range(1, isqrt(2 * n) + 1):
        for b in range(a, (2 * n - 1) // a + 1):
            if not n < a * b < 2 * n:
                continue
            if d_mod_6 == 2 and gcd(a, b) != 1:
                continue
            if d_mod_6 == 0 and gcd(a, b) % 3 == 0:
                continue
            out.append((a, b))
    out.sort(key=lambda p: (p[0] * p[1], p[0]))
    return out


def _accepts(m: int, cfg: SearchConfig, strict: bool) -> bool:
    if cfg.target_m is not None:
        return m == cfg.target_m
    if strict:
        return 0 < m < 7 and m <= cfg.max_m
    return 0 < m <= cfg.max_m


def _search(n: int, d_mod_6: int, cfg: SearchConfig, batch_for) -> SearchResult:
    """Shared driver.  ``batch_for(alpha, beta)`` returns (vectors, counts).

    ``vectors`` is a sequence of candidates in search order (converted to
    Q^8 lazily by ``to_q8``) and ``counts`` a (k, 4) integer array of type
    counts per candidate.
    """
    res = SearchResult(n, d_mod_6, None)
    fallback = None
    pairs = search_pairs(n, d_mod_6)
    for alpha, beta in pairs[: cfg.max_pairs]:
        res.pairs_tried += 1
        vecs, counts, to_q8 = batch_for(alpha, beta)
        k = len(counts)
        room = cfg.max_candidates - res.candidates
        if k > room:
            k = room
            res.exhausted = True
        if k == 0:
            if res.exhausted:
                break
            continue
        m = counts[:k].sum(axis=1)
        pos = m[m > 0]
        if len(pos):
            res.best_m[(alpha, beta)] = int(pos.min())
        strict = np.array([_accepts(int(x), cfg, True) for x in m])
        loose = np.array([_accepts(int(x), cfg, False) for x in m])
        for i in np.flatnonzero(strict | (loose if fallback is None else False)):
            cert = EmbeddingCertificate(d_mod_6, n, alpha, beta, to_q8(vecs[i]), int(m[i]),
                                        TypeCounts(*(int(x) for x in counts[i])))
            if d_mod_6 == 0 and not jprime_check(cert):
                continue
            if strict[i]:
                res.candidates += int(i) + 1
                res.certificate = cert
                return res
            if fallback is None:
                fallback = cert
        res.candidates += k
        if res.exhausted:
            break
    if len(pairs) > cfg.max_pairs:
        res.exhausted = True
    res.certificate = fallback
    return res


def _t_vectors_scaled(norm: Fraction) -> np.ndarray:
    """Rows 6w for the vectors w of T = E6 + [1] of the given norm, sorted."""
    tc = model.T_coset()
    x = coset_norm_array(tc.base.gram, tc.shift, norm)
    s3 = np.array([int(3 * c) for c in tc.shift], dtype=np.int64)
    b2 = np.array([[int(2 * c) for c in g] for g in tc.base.generators], dtype=np.int64)
    W6 = (3 * x + s3) @ b2
    if len(W6):
        W6 = W6[np.lexsort(W6.T[::-1])]
    return W6


def _from_scaled(row) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(c), 6) for c in row)


def search_2mod6(n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    """First certificate for d = 6n + 2, trying pairs in order and T-vectors lexicographically."""
    if n < 1:
        raise ValueError("n must be positive")

    def batch(alpha: int, beta: int):
        W6 = _t_vectors_scaled(expected_norm(2, n, alpha, beta))
        if not len(W6):
            return W6, np.zeros((0, 4), dtype=np.int64), _from_scaled
        c = _counts_from_pairings(_pairings(W6), alpha, beta) // 2
        counts = np.column_stack([c, np.zeros(len(c), dtype=np.int64)])
        return W6, counts, _from_scaled

    return _search(n, 2, config, batch)


def three_square_decompositions(m: int) -> list[tuple[int, int, int]]:
    """All (x1, x2, x3) with nonzero entries and x1^2 + x2^2 + x3^2 = m, sorted."""
    out = []
    r = isqrt(m)
    for x1 in range(-r, r + 1):
        for x2 in range(-r, r + 1):
            rest = m - x1 * x1 - x2 * x2
            if x1 == 0 or x2 == 0 or rest <= 0:
                continue
            x3 = isqrt(rest)
            if x3 * x3 == rest:
                out.extend([(x1, x2, -x3), (x1, x2, x3)])
    return sorted(out)


def three_nonzero_squares(m: int) -> tuple[int, int, int] | None:
    """A representation m = x1^2 + x2^2 + x3^2 with 0 < x1 <= x2 <= x3, or None."""
    if m < 1:
        raise ValueError("m must be positive")
    x1 = 1
    while 3 * x1 * x1 <= m:
        x2 = x1
        while x1 * x1 + 2 * x2 * x2 <= m:
            rest = m - x1 * x1 - x2 * x2
            x3 = isqrt(rest)
            if x3 * x3 == rest:
                return (x1, x2, x3)
            x2 += 1
        x1 += 1
    return None


THREE_SQUARE_SPORADIC = (1, 2, 5, 10, 13, 25, 37, 58, 85, 130)


def is_three_square_exception(m: int) -> bool:
    """m = 4^a (8b + 7) or m = 4^a k with k in the sporadic list."""
    while m % 4 == 0:
        m //= 4
    return m % 8 == 7 or m in THREE_SQUARE_SPORADIC


def three_square_sieve(limit: int) -> np.ndarray:
    """Boolean table: entry m is True iff m is a sum of three nonzero squares."""
    rep2 = np.zeros(limit + 1, dtype=bool)
    k = 1
    while k * k < limit:
        j = np.arange(1, isqrt(limit - k * k) + 1)
        rep2[k * k + j * j] = True
        k += 1
    rep3 = np.zeros(limit + 1, dtype=bool)
    idx = np.flatnonzero(rep2)
    k = 1
    while k * k < limit:
        t = idx + k * k
        rep3[t[t <= limit]] = True
        k += 1
    return rep3


def search_0mod6(n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    """First certificate for d = 6n with v = x1 s1 + x2 s2 + x3 s3, all x_i nonzero."""
    if n < 2:
        raise ValueError("n must be at least 2")
    e6 = model.e6()

    def batch(alpha: int, beta: int):
        vecs, rows = [], []
        for xs in three_square_decompositions(alpha * beta - n):
            v = model.lincomb(*zip(xs, S_ROOTS))
            if gcd(*[int(x) for x in e6.coords(v)]) != 1:
                continue
            t = classify_roots(alpha, beta, v)
            vecs.append(v)
            rows.append((t.typeI, t.typeII, t.typeIII, t.diag_extra))
        counts = np.array(rows, dtype=np.int64).reshape(-1, 4)
        return vecs, counts, tuple

    return _search(n, 0, config, batch)


# -- fixed checks --------------------------------------------------------------

def lemma68_counts() -> tuple[int, int]:
    """Roots of E8 orthogonal to <a1, a2, s1, s2, s3> and to <a1 + a2, s1, s2, s3>.

    Each count comes from the complement sublattice and is cross-checked
    against a direct scan of the 240 roots.
    """
    from .lattice import orthogonal_complement
    from .shortvec import roots as lattice_roots

    e8 = E8.lattice()
    results = []
    for gens in ((A1_ROOT, A2_ROOT) + S_ROOTS, (model.add(A1_ROOT, A2_ROOT),) + S_ROOTS):
        S = model.sublattice_in_e8(gens)
        comp = orthogonal_complement(e8, S)
        n_comp = len(lattice_roots(comp.lattice()))
        n_scan = sum(1 for r in model.e8_roots() if all(dot(r, g) == 0 for g in gens))
        if n_comp != n_scan:
            raise AssertionError(f"complement count {n_comp} != direct count {n_scan}")
        results.append(n_comp)
    return results[0], results[1]

"""Command line front end.

Exit codes: 0 success, 1 a mathematical claim failed, 2 usage error,
3 some search ran out of budget without a certificate.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import embed, model, theta
from .lattice import DegenerateFormError, Lattice, discriminant_group
from .shortvec import roots

log = logging.getLogger("cubiclat")

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3
KMAX_BUDGET = 5000
FIXTURE_ENV = "CUBICLAT_FIXTURES"


class UsageError(Exception):
    pass


def fixtures_dir() -> Path:
    """Directory of golden certificates; the environment variable overrides it."""
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("cubiclat") / "data" / "certs"))


def golden_certificates(directory: Path | None = None) -> list[Path]:
    return sorted((directory or fixtures_dir()).glob("**/*.json"))


def _fixed_lattices() -> dict:
    return {
        "U": lambda: embed.u_lattice(),
        "A1": lambda: Lattice([[2]], "A1"),
        "A2": lambda: model.A2.lattice(),
        "A5": lambda: model.sublattice_orthogonal_to(model.e6(), [model.e6_roots()[0]], "A5").lattice(),
        "D4": lambda: Lattice([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], "D4"),
        "E6": lambda: model.e6().lattice(),
        "E8": lambda: model.E8.lattice(),
        "B1": lambda: model.M1.lattice(),
        "B2": lambda: model.M2.lattice(),
        "B3": lambda: model.M3.lattice(),
    }


def standard_lattice(name: str) -> Lattice:
    """Named lattice: U, A1, A2, A5, D4, E6, E8, B1-B3, Bn:<n>:<eps> or Kperp:<n>:<d mod 6>."""
    table = _fixed_lattices()
    if name in table:
        return table[name]()
    parts = name.split(":")
    try:
        if parts[0] == "Bn" and len(parts) == 3:
            return embed.bn_lattice(int(parts[1]), int(parts[2]))
        if parts[0] == "Kperp" and len(parts) == 3:
            return embed.build_Kd_perp(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown lattice {name!r}; known: {', '.join(table)}, Bn:<n>:<eps>, Kperp:<n>:<dmod>")


# -- commands ------------------------------------------------------------------

def cmd_lattice_info(args) -> int:
    L = standard_lattice(args.name)
    p, q = L.signature
    print(f"name: {args.name}")
    print(f"rank: {L.rank}")
    print(f"det: {L.det}")
    print(f"signature: ({p},{q})")
    if L.is_integral():
        print(f"discriminant_group: {discriminant_group(L)}")
    else:
        print("discriminant_group: n/a (not integral)")
    if L.definite_sign in ("positive", "negative"):
        print(f"roots: {len(roots(L))}")
    else:
        print("roots: n/a (indefinite)")
    return EXIT_OK


def cmd_theta_table(args) -> int:
    if not 1 <= args.kmax <= KMAX_BUDGET:
        raise UsageError(f"--kmax must lie in [1, {KMAX_BUDGET}]")
    log.info("enumerating M_i ∩ T up to norm %d/3", args.kmax)
    rows = theta.theta_rows(args.kmax, args.threads)
    Path(args.out).write_text(theta.rows_to_csv(rows))
    bad = theta.nonpositive_flagged(rows)
    flagged = sum(1 for r in rows if r.flagged)
    print(f"rows: {len(rows)}")
    print(f"flagged: {flagged}")
    print(f"nonpositive_flagged: {len(bad)}")
    for r in bad:
        print(f"FAIL k={r.k} combination={r.combination}")
    return EXIT_CLAIM if bad else EXIT_OK


def _search_one(job):
    dmod, n, cfg = job
    fn = embed.search_2mod6 if dmod == 2 else embed.search_0mod6
    res = fn(n, cfg)
    verdict = embed.verify_certificate(res.certificate) if res.found else None
    return n, res, verdict


def cmd_search(args) -> int:
    if args.n_from > args.n_to:
        raise UsageError("--n-from exceeds --n-to")
    if args.n_from < (2 if args.dmod == 0 else 1):
        raise UsageError("--n-from out of range")
    if args.max_pairs < 1 or args.max_candidates < 1:
        raise UsageError("budgets must be positive")
    cfg = embed.SearchConfig(args.max_pairs, args.max_candidates, args.max_m, args.target_m)
    jobs = [(args.dmod, n, cfg) for n in range(args.n_from, args.n_to + 1)]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as ex:
            results = list(ex.map(_search_one, jobs))
    else:
        results = [_search_one(j) for j in jobs]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = EXIT_OK
    print("n\tm\talpha\tbeta\tverdict")
    for n, res, verdict in sorted(results, key=lambda r: r[0]):
        if not res.found:
            why = "budget exhausted" if res.exhausted else "none found"
            print(f"{n}\t-\t-\t-\t{why}")
            status = max(status, EXIT_EXHAUSTED) if status != EXIT_CLAIM else status
            continue
        c = res.certificate
        (out / f"d{args.dmod}_n{n:04d}.json").write_text(c.dumps())
        print(f"{n}\t{c.claimed_m}\t{c.alpha}\t{c.beta}\t{verdict}")
        if not verdict.valid:
            status = EXIT_CLAIM
    return status


def cmd_verify(args) -> int:
    files = [Path(f) for f in args.files]
    if args.golden:
        files += golden_certificates()
    if not files:
        raise UsageError("no certificate files given")
    status = EXIT_OK
    for f in files:
        try:
            text = f.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {f}: {exc}") from exc
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            verdict = embed.Verdict("invalid", "schema", f"not JSON: {exc}")
        else:
            verdict = embed.verify_certificate(obj)
        print(f"{f}\t{verdict}")
        if not verdict.valid:
            status = EXIT_CLAIM
    return status


def cmd_check_lemma68(args) -> int:
    first, second = embed.lemma68_counts()
    ok = first == 2 and second > 2
    print(f"orthogonal to <a1, a2, s1, s2, s3>: {first}")
    print(f"orthogonal to <a1 + a2, s1, s2, s3>: {second}")
    print("OK" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_CLAIM


def cmd_check_three_squares(args) -> int:
    if args.max < 1:
        raise UsageError("--max must be positive")
    table = embed.three_square_sieve(args.max)
    for m in range(1, args.max + 1):
        if bool(table[m]) == embed.is_three_square_exception(m):
            print(f"FAIL m={m} sieve={bool(table[m])} closed_form_exception={not table[m]}")
            return EXIT_CLAIM
    for m in range(1, min(args.max, 2000) + 1):
        if (embed.three_nonzero_squares(m) is not None) != bool(table[m]):
            print(f"FAIL m={m} search disagrees with sieve")
            return EXIT_CLAIM
    n_exc = int(args.max - table[1:].sum())
    print(f"checked 1..{args.max}: {n_exc} exceptions, all of the closed form")
    return EXIT_OK


# -- parser --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cubiclat", description="Lattice certificates for special cubic fourfolds.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    lat = sub.add_parser("lattice", help="standard lattice invariants").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    info = lat.add_parser("info", help="rank, det, discriminant group and root count")
    info.add_argument("name")
    info.set_defaults(func=cmd_lattice_info)

    th = sub.add_parser("theta", help="coset theta tables").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    table = th.add_parser("table", help="theta coefficients of M_i ∩ T as CSV")
    table.add_argument("--kmax", type=int, required=True)
    table.add_argument("--out", required=True)
    table.add_argument("--threads", type=int, default=1)
    table.set_defaults(func=cmd_theta_table)

    se = sub.add_parser("search", help="search certificates for a range of n")
    se.add_argument("--dmod", type=int, choices=(0, 2), required=True)
    se.add_argument("--n-from", type=int, required=True)
    se.add_argument("--n-to", type=int, required=True)
    se.add_argument("--out", required=True)
    se.add_argument("--threads", type=int, default=1)
    se.add_argument("--max-pairs", type=int, default=embed.SearchConfig.max_pairs)
    se.add_argument("--max-candidates", type=int, default=embed.SearchConfig.max_candidates)
    se.add_argument("--max-m", type=int, default=7)
    se.add_argument("--target-m", type=int, default=None, help="accept only this m")
    se.set_defaults(func=cmd_search)

    ve = sub.add_parser("verify", help="verify certificate files")
    ve.add_argument("files", nargs="*")
    ve.add_argument("--golden", action="store_true", help="also verify the shipped golden certificates")
    ve.set_defaults(func=cmd_verify)

    ch = sub.add_parser("check", help="fixed finite checks").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    l68 = ch.add_parser("lemma68", help="root counts of the two fixed complements in E8")
    l68.set_defaults(func=cmd_check_lemma68)
    ts = ch.add_parser("three-squares", help="sums of three nonzero squares vs the closed exception list")
    ts.add_argument("--max", type=int, required=True)
    ts.set_defaults(func=cmd_check_three_squares)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(levelname)s %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateFormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Coset theta counts for M_i ∩ T and the sign of 4 N1 - 10 N2 - 15 N3."""
import sys

from cubiclat import theta


def main(kmax: int = 400) -> None:
    rows = theta.theta_rows(kmax)
    flagged = [r for r in rows if r.flagged]
    for r in flagged[:8]:
        print(r.k, r.n1, r.n2, r.n3, r.combination)
    print("...")
    bad = theta.nonpositive_flagged(rows)
    print(f"{len(flagged)} flagged k up to {kmax}, {len(bad)} with a nonpositive combination")
    for t in (23, 47, 95):
        print(theta.check_key_inequality(t))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 400)

"""Local densities and representation numbers of the registered forms."""
from cubiclat.localdensity import alpha_p_direct, alpha_p_yang, stable_level
from cubiclat.repnum import REGISTRY, rep_number_even_rank, rep_number_odd_rank
from cubiclat.shortvec import norm_counts


def main() -> None:
    S1 = REGISTRY["S1"]
    for t in (2, 5, 8, 11):
        for p in (2, 3):
            a = stable_level(S1.A, t, p)
            print(f"S1 t={t} p={p}: direct {alpha_p_direct(S1.A, t, p, a)}  formula {alpha_p_yang(S1.local[p], t)}")
    for name in ("S2", "S3"):
        counts = norm_counts(REGISTRY[name].A, None, 40)
        for t in (1, 7, 20):
            r = rep_number_even_rank(name, t)
            print(f"{name} r({t}) = {r.value} (enumerated {counts.get(2 * t, 0)})")
    counts = norm_counts(S1.A, None, 40)
    for t in (2, 5, 11):
        print(f"S1 r({t}) = {rep_number_odd_rank('S1', t).value} (enumerated {counts.get(2 * t, 0)})")


if __name__ == "__main__":
    main()

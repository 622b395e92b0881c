"""Search for embedding certificates and re-check them with the complement oracle."""
import sys

from cubiclat import embed


def show(result: embed.SearchResult) -> None:
    c = result.certificate
    if c is None:
        print(f"n={result.n}: none after {result.pairs_tried} pairs, {result.candidates} candidates")
        return
    rep = embed.complement_roots(c.alpha, c.beta, embed.cert_e8_component(c))
    print(f"n={c.n} d={6 * c.n + c.d_mod_6}: (alpha, beta)=({c.alpha}, {c.beta}) m={c.claimed_m} "
          f"{c.type_breakdown} oracle roots={len(rep.roots)} -> {embed.verify_certificate(c)}")


def main(lo: int = 19, hi: int = 26) -> None:
    for n in range(lo, hi + 1):
        show(embed.search_2mod6(n))
    for n in range(lo, hi + 1):
        show(embed.search_0mod6(n))
    print("roots of E8 orthogonal to the two test spans:", embed.lemma68_counts())


if __name__ == "__main__":
    args = [int(x) for x in sys.argv[1:3]]
    main(*args)

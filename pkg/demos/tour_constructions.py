"""Prime-seeded families with engineered factorization behavior.

Two constructions: a family whose monoid has no atoms at all, and
families of proper-fraction pairs whose delta sets hit a prescribed
arithmetic pattern.  Run me with: python3 demos/tour_constructions.py
"""

from multifrac import (
    delta_realization_check,
    delta_realization_generators,
    nonatomic_family,
    nonatomic_witness,
)


def main() -> None:
    fam = nonatomic_family(2)
    print(f"Nonatomic family: {[str(b) for b in fam.bases]}")
    w = nonatomic_witness(fam, m=1, N_max=6)
    print(f"  splitting identity: {w.x} = "
          f"{w.alpha}*({w.b0})^{w.N} + {w.beta}*({w.b1})^{w.N}")
    print(f"  verified: {w.identity_holds()}")
    print()
    print("Each generator splits into strictly deeper powers, so no element")
    print("is ever an atom; the same identity then splits the pieces again,")
    print("forever.  The seed primes (2, 3, 11) are the smallest that work:")
    print("the shared denominator must exceed 2*3 + 1.")
    print()

    print("Delta realization: level-k pairs with observed gaps d, 2d, ..., (2k-1)d")
    for d in (1, 2):
        for k in (1, 2):
            rep = delta_realization_check(d, k)
            gens = delta_realization_generators(d, k)
            print(f"  d={d}, k={k}: generators {[str(b) for b in gens.bases]}")
            print(f"    witness x = {rep.x}, hub length {rep.hub.length}")
            print(f"    observed deltas {list(rep.observed)}, "
                  f"required {list(rep.required)}, realized: {rep.realized()}")
    print()
    print("Each report also carries a truncation note: the first numerator")
    print("beyond level k is compared against ceil(x) times the largest")
    print("denominator in play.  Clearing that bound would certify that")
    print("higher levels cannot touch the witness element; the stock")
    print("examples do not clear it, so the flag stays False and the")
    print("realized verdict rests on the levels actually included.")
    rep = delta_realization_check(1, 1)
    print(f"  d=1, k=1: next numerator {rep.next_numerator} "
          f"vs bound {rep.localization_bound}, localized: {rep.localized}")


if __name__ == "__main__":
    main()

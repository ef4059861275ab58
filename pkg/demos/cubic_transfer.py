"""Companion weights of the irregular cubic weight (1, 1, k2).

For each odd prime and each k2 this prints the Hasse and Theta sets and the
regular weights k' and k^mu that a form of weight (1, 1, k2) transfers to.
Note how k2 = 2 enlarges the Hasse set to every embedding.
"""
from hmfweights import PlaceStructure, compute_transfer


def show(p: int, k2: int) -> None:
    ps = PlaceStructure(p, [3])
    tr = compute_transfer(ps, (1, 1, k2))
    hasse = ", ".join(str(t) for t in tr.hasse_set)
    theta = ", ".join(str(t) for t in tr.theta_set)
    print(f"p={p} k=(1, 1, {k2})  Hasse set {{{hasse}}}  Theta set {{{theta}}}")
    print(f"    k' = {tr.hasse_lift.k}")
    for mu, w in tr.theta_lifts.items():
        print(f"    k^{mu} = {w.k}  l = {w.l}")


if __name__ == "__main__":
    for p in (3, 5, 7):
        for k2 in range(2, p + 1):
            show(p, k2)

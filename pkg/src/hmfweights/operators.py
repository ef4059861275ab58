"""Weight shifts of partial Hasse invariants and partial Theta operators.

Only the effect on weights is modelled.  Multiplying by the partial Hasse
invariant at ``tau`` adds ``p e_{Fr^-1 tau} - e_tau`` to ``k``; applying the
partial Theta operator at ``tau`` adds ``p + 1`` to the total of ``k`` and
lowers ``l_tau`` by one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .weights import Embedding, PlaceStructure, Weight, _k_of

__all__ = [
    "ShiftRecord",
    "hasse_weight",
    "apply_hasse",
    "unapply_hasse",
    "theta_shift",
    "theta_record",
    "strippable_set",
    "strict_shifted_cone",
]


@dataclass(frozen=True)
class ShiftRecord:
    operator: Literal["hasse", "theta"]
    tau: Embedding
    delta_k: tuple[int, ...]
    delta_l: tuple[int, ...]


def _add(a: Sequence[int], b: Sequence[int], sign: int = 1) -> tuple[int, ...]:
    return tuple(x + sign * y for x, y in zip(a, b))


def hasse_weight(ps: PlaceStructure, tau: Embedding) -> tuple[int, ...]:
    """Weight of the partial Hasse invariant at ``tau``: ``p e_{Fr^-1 tau} - e_tau``."""
    out = [0] * ps.n
    out[ps.index(ps.shift(tau, 1))] += ps.p
    out[ps.index(tau)] -= 1
    return tuple(out)


def apply_hasse(ps: PlaceStructure, w: Weight, tau: Embedding) -> Weight:
    return Weight(_add(ps.check_vector(w.k), hasse_weight(ps, tau)), w.l)


def unapply_hasse(ps: PlaceStructure, w: Weight, tau: Embedding) -> Weight:
    return Weight(_add(ps.check_vector(w.k), hasse_weight(ps, tau), -1), w.l)


def theta_record(ps: PlaceStructure, tau: Embedding) -> ShiftRecord:
    p = ps.p
    dk = [0] * ps.n
    dl = [0] * ps.n
    pos = ps.index(tau)
    if ps.places[tau.place] == 1:
        # Fr o tau = tau
        dk[pos] += p + 1
    else:
        dk[pos] += 1
        dk[ps.index(ps.shift(tau, 1))] += p
    dl[pos] -= 1
    return ShiftRecord("theta", ps.check(tau), tuple(dk), tuple(dl))


def theta_shift(ps: PlaceStructure, w: Weight, tau: Embedding) -> Weight:
    rec = theta_record(ps, tau)
    return Weight(_add(ps.check_vector(w.k), rec.delta_k), _add(ps.check_vector(w.l, "l"), rec.delta_l))


def strippable_set(ps: PlaceStructure, k: Weight | Sequence[int]) -> frozenset[Embedding]:
    """Embeddings where ``p k_tau < k_{Fr^-1 tau}``, i.e. division by ``Ha_tau`` is forced."""
    k = ps.check_vector(_k_of(k))
    p = ps.p
    return frozenset(t for t in ps if p * k[ps.index(t)] < k[ps.index(ps.shift(t, 1))])


def strict_shifted_cone(ps: PlaceStructure, k: Weight | Sequence[int]) -> bool:
    """True iff ``p (k_tau - 2) > k_{Fr^-1 tau} - 2`` for all ``tau``.

    Under this inequality geometric modularity of a regular weight is known
    to imply algebraic modularity.
    """
    k = ps.check_vector(_k_of(k))
    p = ps.p
    return all(p * (k[ps.index(t)] - 2) > k[ps.index(ps.shift(t, 1))] - 2 for t in ps)

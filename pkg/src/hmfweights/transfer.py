"""Regular companion weights of an irregular weight.

Given ``k`` with all entries ``>= 1``, two embedding sets are attached to it:

* the *Hasse set* (``M``): embeddings ``tau`` such that walking ``tau ->
  Fr^-1 tau -> ...`` meets a (possibly empty) run of 2's followed by a 1;
* the *Theta set* (``M~``): the members of the Hasse set at which a partial
  Theta operator is applied.

Multiplying by the Hasse invariants of the Hasse set gives the regular weight
``k'``; swapping the Hasse invariant at ``mu`` for ``Theta_mu`` gives ``k^mu``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InvariantViolation
from .operators import hasse_weight, theta_shift
from .weights import Embedding, PlaceStructure, Weight, is_regular, require_positive

__all__ = [
    "hasse_set",
    "theta_set",
    "theta_set_coincidences",
    "TransferResult",
    "compute_transfer",
    "add_hasse",
]


def _chain_hits_one(ps: PlaceStructure, k: Sequence[int], tau: Embedding) -> bool:
    # The chain can only run once around the place's Frobenius cycle.
    for s in range(1, ps.places[tau.place] + 1):
        x = k[ps.index(ps.shift(tau, s))]
        if x == 1:
            return True
        if x != 2:
            return False
    return False


def hasse_set(ps: PlaceStructure, k: Sequence[int]) -> frozenset[Embedding]:
    """Embeddings ``tau`` with ``k_{Fr^-1 tau} = ... = k_{Fr^-(s-1) tau} = 2`` and ``k_{Fr^-s tau} = 1``."""
    k = require_positive(ps, k)
    return frozenset(t for t in ps if _chain_hits_one(ps, k, t))


def theta_set(ps: PlaceStructure, k: Sequence[int]) -> frozenset[Embedding]:
    k = require_positive(ps, k)
    M = hasse_set(ps, k)
    out = set()
    for t in ps:
        kt = k[ps.index(t)]
        if kt >= 3 and t in M:
            out.add(t)
        elif kt == 2:
            t1, t2 = ps.shift(t, 1), ps.shift(t, 2)
            k1, k2 = k[ps.index(t1)], k[ps.index(t2)]
            if k1 == 1 and (k2 == 1 or (k2 == 2 and t2 in M)):
                out.add(t)
    return frozenset(out)


def theta_set_coincidences(ps: PlaceStructure, k: Sequence[int]) -> tuple[Embedding, ...]:
    """Embeddings where the ``(2, 1, *)`` test of the Theta set reads an index twice.

    This happens on places with ``f_v = 2``, where ``Fr^-2 tau = tau``.  The
    definition is applied literally with cyclic indices; these are reported so
    a reader can see where that reading mattered.
    """
    k = require_positive(ps, k)
    return tuple(
        t for t in ps
        if ps.shift(t, 2) == t and ps.shift(t, 1) != t
        and k[ps.index(t)] == 2 and k[ps.index(ps.shift(t, 1))] == 1
    )


def add_hasse(ps: PlaceStructure, w: Weight, taus: Iterable[Embedding], sign: int = 1) -> Weight:
    """Add (or with ``sign=-1`` remove) the Hasse weights of ``taus`` to ``w.k``."""
    k = list(ps.check_vector(w.k))
    for t in taus:
        for j, x in enumerate(hasse_weight(ps, t)):
            k[j] += sign * x
    return Weight(k, w.l)


@dataclass(frozen=True)
class TransferResult:
    ps: PlaceStructure
    weight: Weight
    hasse_set: tuple[Embedding, ...]
    theta_set: tuple[Embedding, ...]
    hasse_lift: Weight
    theta_lifts: Mapping[Embedding, Weight]
    joint_theta_lift: Weight
    coincidences: tuple[Embedding, ...] = field(default=())

    @property
    def residual_set(self) -> tuple[Embedding, ...]:
        """Hasse-set embeddings outside the Theta set."""
        return tuple(t for t in self.hasse_set if t not in self.theta_set)


def compute_transfer(ps: PlaceStructure, k: Sequence[int], l: Sequence[int] | None = None) -> TransferResult:
    """Compute the Hasse and Theta sets and the weights ``k'``, ``k^mu`` and ``k^theta``.

    Regular inputs are accepted: both sets are then empty and every companion
    weight equals the input.

    Raises
    ------
    DomainError
        if some ``k_tau < 1``.
    InvariantViolation
        if ``k'`` or some ``k^mu`` fails to be regular.
    """
    k = require_positive(ps, k)
    base = Weight.of(ps, k, l)
    M = sorted(hasse_set(ps, k))
    Mt = sorted(theta_set(ps, k))
    if not set(Mt) <= set(M):
        raise InvariantViolation(f"Theta set {Mt} not contained in Hasse set {M}")

    k_prime = add_hasse(ps, base, M)
    k_mu = {}
    for mu in Mt:
        w = add_hasse(ps, base, [t for t in M if t != mu])
        k_mu[mu] = theta_shift(ps, w, mu)
    k_theta = add_hasse(ps, base, [t for t in M if t not in Mt])
    for mu in Mt:
        k_theta = theta_shift(ps, k_theta, mu)

    for name, w in [("k'", k_prime), *((f"k^{mu}", w) for mu, w in k_mu.items())]:
        if not is_regular(w):
            raise InvariantViolation(f"{name} = {w.k} is not regular (input k = {k})")

    return TransferResult(
        ps=ps,
        weight=base,
        hasse_set=tuple(M),
        theta_set=tuple(Mt),
        hasse_lift=k_prime,
        theta_lifts=k_mu,
        joint_theta_lift=k_theta,
        coincidences=theta_set_coincidences(ps, k),
    )

"""Condition-by-condition hypothesis reports for the two modularity theorems.

``"transfer"`` is the theorem moving between an irregular weight and its
regular companions; ``"local_global"`` is the small-weight characterisation by
crystalline lifts.  Conditions that depend on the Galois representation are
never decided here: they are reported as ``NEEDS_RHO`` with the exact inertial
exponents a user must rule out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Literal, Sequence

from .inertial import CharacterShape, forbidden_shapes, transfer_shapes
from .operators import strippable_set
from .transfer import compute_transfer
from .weights import Embedding, PlaceStructure

__all__ = ["Status", "Condition", "HypothesisReport", "check_hypotheses", "THEOREMS"]

THEOREMS = ("transfer", "local_global")


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NEEDS_RHO = "needs_rho"


@dataclass(frozen=True)
class Condition:
    key: str
    statement: str
    status: Status
    witnesses: tuple = ()
    shapes: tuple[CharacterShape, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class HypothesisReport:
    theorem: str
    conditions: tuple[Condition, ...] = field(default=())

    def __getitem__(self, key: str) -> Condition:
        for c in self.conditions:
            if c.key == key:
                return c
        raise KeyError(key)

    @property
    def decidable_ok(self) -> bool:
        """No condition fails outright (``NEEDS_RHO`` conditions are not counted)."""
        return all(c.status is not Status.FAILS for c in self.conditions)


def _verdict(witnesses) -> Status:
    return Status.FAILS if witnesses else Status.HOLDS


def _parallel_one_places(ps: PlaceStructure, k) -> tuple[int, ...]:
    return tuple(v for v in range(len(ps.places)) if all(x == 1 for x in ps.restrict(k, v)))


def check_hypotheses(
    ps: PlaceStructure,
    k: Sequence[int],
    theorem: Literal["transfer", "local_global"],
    l: Sequence[int] | None = None,
) -> HypothesisReport:
    k = ps.check_vector(k)
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {THEOREMS}")
    nonpos = tuple(t for t in ps if k[ps.index(t)] < 1)
    irregular = Condition(
        "irregular", "k_tau = 1 for some tau",
        Status.HOLDS if 1 in k else Status.FAILS)
    parallel_one = Condition(
        "no_parallel_one_place", "no place where k_tau = 1 for every tau",
        _verdict(_parallel_one_places(ps, k)), _parallel_one_places(ps, k))

    if theorem == "transfer":
        conds = [
            Condition("positive", "k_tau >= 1 for all tau", _verdict(nonpos), nonpos),
            irregular,
            Condition("minimal_cone", "p k_tau >= k_(Fr^-1 tau) for all tau",
                      _verdict(strippable_set(ps, k)), tuple(sorted(strippable_set(ps, k)))),
        ]
        if nonpos:
            undefined = "undefined: k has entries < 1"
            conds += [
                Condition("hasse_lift_modular", "rho is modular of weight (k', l')", Status.FAILS, note=undefined),
                Condition("theta_lifts_modular", "rho is modular of every (k^mu, l^mu)", Status.FAILS, note=undefined),
                Condition("no_reducible_shape", "rho|G_v is not (chi1, *; 0, chi2) for the Theta-set shapes",
                          Status.FAILS, note=undefined),
                parallel_one,
                Condition("theta_not_one_mod_p", "k_mu != 1 mod p on the Theta set", Status.FAILS, note=undefined),
            ]
            return HypothesisReport(theorem, tuple(conds))
        tr = compute_transfer(ps, k, l)
        shapes = tuple(transfer_shapes(ps, k, l))
        bad_mu = tuple(mu for mu in tr.theta_set if k[ps.index(mu)] % ps.p == 1)
        conds += [
            Condition("hasse_lift_modular", "rho is modular of weight (k', l')", Status.NEEDS_RHO),
            Condition("theta_lifts_modular", "rho is modular of every (k^mu, l^mu)", Status.NEEDS_RHO),
            Condition("no_reducible_shape", "rho|G_v is not (chi1, *; 0, chi2) for the Theta-set shapes",
                      Status.NEEDS_RHO if shapes else Status.HOLDS, shapes=shapes,
                      note="" if shapes else "Theta set is empty"),
            parallel_one,
            Condition("theta_not_one_mod_p", "k_mu != 1 mod p on the Theta set", _verdict(bad_mu), bad_mu),
        ]
        return HypothesisReport(theorem, tuple(conds))

    small = tuple(t for t in ps if not 1 <= k[ps.index(t)] <= ps.p)
    two_one = tuple(t for t in ps if k[ps.index(t)] == 2 and k[ps.index(ps.shift(t, 1))] == 1)
    regular_places = tuple(v for v in range(len(ps.places)) if all(x >= 2 for x in ps.restrict(k, v)))
    if regular_places and not nonpos:
        shapes = tuple(s for s in forbidden_shapes(ps, k, l) if s.context == "regular_place")
        place_cond = Condition(
            "regular_place_shape", "rho|G_v is not (unramified, *; 0, prod omega^(1-k)) at regular places",
            Status.NEEDS_RHO, regular_places, shapes)
    else:
        place_cond = Condition(
            "regular_place_shape", "rho|G_v is not (unramified, *; 0, prod omega^(1-k)) at regular places",
            Status.HOLDS, note="no place where k is regular")
    conds = [
        irregular,
        Condition("small_weights", "1 <= k_tau <= p for all tau", _verdict(small), small),
        Condition("no_two_one", "no tau with (k_tau, k_(Fr^-1 tau)) = (2, 1)", _verdict(two_one), two_one),
        parallel_one,
        place_cond,
    ]
    return HypothesisReport(theorem, tuple(conds))

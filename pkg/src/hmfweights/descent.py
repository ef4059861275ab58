"""Descent from the companion weights back to the irregular weight.

After dividing ``k'`` by the Hasse invariants of the Theta set one reaches the
intermediate weight ``k'' = k + sum_{tau in M'} k_Ha_tau`` where ``M'`` is the
residual set (Hasse set minus Theta set).  Each residual embedding sits in a
predictable local configuration of ``k''``, and repeatedly dividing by forced
Hasse invariants (those with ``p k_tau < k_{Fr^-1 tau}``) strips exactly the
residual set and recovers ``k``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Literal, Sequence

from .errors import InapplicableError, InvariantViolation, StripLimitExceeded
from .operators import hasse_weight, strippable_set
from .transfer import add_hasse, compute_transfer
from .weights import Embedding, PlaceStructure, Weight, in_minimal_cone, require_positive

__all__ = [
    "Boundary",
    "ResidualCase",
    "StripTrace",
    "RoundtripReport",
    "intermediate_weight",
    "classify_residual",
    "expected_pattern",
    "segment_values",
    "pattern_mismatches",
    "greedy_strip",
    "verify_roundtrip",
    "roundtrip_applicable",
]


class Boundary(str, Enum):
    """Which configuration sits at ``Fr^-1 tau``, the entry just past the segment."""

    ONE_IN_HASSE = "one_in_hasse_set"
    ONE_OUTSIDE_HASSE = "one_outside_hasse_set"
    TWO_OUTSIDE_THETA = "two_outside_theta_set"
    TWO_IN_THETA = "two_in_theta_set"
    OTHERWISE = "otherwise"


@dataclass(frozen=True)
class ResidualCase:
    """Classification of one residual embedding.

    ``case`` is ``"i"`` (``k_tau = 1``), ``"ii"`` (``k_tau = 2`` followed by a
    1 outside the Hasse set) or ``"iii"`` (``k_tau = 2`` followed by a 2).
    Walking forward (``tau, Fr tau, Fr^2 tau, ...``) one meets ``s`` entries
    equal to 2 (or, in case i, to 1), then ``t`` entries equal to 1, and then
    the Theta-set embedding ``Fr^{s+t} tau``.
    """

    tau: Embedding
    case: Literal["i", "ii", "iii"]
    s: int
    t: int
    boundary: Boundary

    def segment(self, ps: PlaceStructure) -> tuple[Embedding, ...]:
        """``(Fr^{s+t-1} tau, ..., tau, Fr^-1 tau)``, i.e. increasing index within the place."""
        m = self.s + self.t
        return tuple(ps.shift(self.tau, j) for j in range(-(m - 1), 2))


def intermediate_weight(ps: PlaceStructure, k: Sequence[int], l: Sequence[int] | None = None) -> Weight:
    """``k'' = k' - sum over the Theta set of k_Ha``; checked against ``k + sum over M' of k_Ha``."""
    tr = compute_transfer(ps, k, l)
    kpp = add_hasse(ps, tr.hasse_lift, tr.theta_set, sign=-1)
    direct = add_hasse(ps, tr.weight, tr.residual_set)
    if kpp != direct:
        raise InvariantViolation(f"k'' mismatch: {kpp.k} != {direct.k}")
    return kpp


def classify_residual(ps: PlaceStructure, k: Sequence[int]) -> list[ResidualCase]:
    k = require_positive(ps, k)
    tr = compute_transfer(ps, k)
    M, Mt = set(tr.hasse_set), set(tr.theta_set)
    kv = lambda t: k[ps.index(t)]  # noqa: E731
    out = []
    for tau in tr.residual_set:
        f = ps.places[tau.place]
        b = ps.shift(tau, 1)
        if kv(tau) == 1:
            case = "i"
            run_value = 1
        elif kv(tau) == 2:
            b2 = ps.shift(tau, 2)
            if kv(b) == 1 and kv(b2) != 1 and not (kv(b2) == 2 and b2 in M):
                case = "ii"
            elif kv(b) == 2:
                case = "iii"
            else:
                raise InvariantViolation(f"{tau} in M' with k = 2 matches neither case ii nor iii (k = {k})")
            run_value = 2
        else:
            raise InvariantViolation(f"{tau} in M' with k_tau = {kv(tau)} >= 3 (k = {k})")

        j = 0
        while j < f and kv(ps.shift(tau, -j)) == run_value and ps.shift(tau, -j) not in Mt:
            j += 1
        s = j
        if run_value == 2:
            while j < f and kv(ps.shift(tau, -j)) == 1:
                j += 1
        t = j - s
        end = ps.shift(tau, -j)
        walked = [ps.shift(tau, -i) for i in range(j)]
        if j >= f or s < 1 or end not in Mt or any(u in Mt for u in walked):
            raise InvariantViolation(
                f"forward walk from {tau} does not end in the Theta set (s={s}, t={t}, k={k})")

        if case == "i":
            if kv(b) == 1:
                boundary = Boundary.ONE_IN_HASSE if b in M else Boundary.ONE_OUTSIDE_HASSE
            elif kv(b) == 2:
                boundary = Boundary.TWO_IN_THETA if b in Mt else Boundary.TWO_OUTSIDE_THETA
            else:
                raise InvariantViolation(f"case i at {tau} has k_(Fr^-1 tau) = {kv(b)}")
        else:
            if not ((kv(b) == 2 and b in M) or (kv(b) == 1 and b not in M)):
                raise InvariantViolation(f"unexpected configuration at Fr^-1 of {tau} (k = {k})")
            boundary = Boundary.TWO_IN_THETA if (kv(b) == 2 and b in Mt) else Boundary.OTHERWISE
        out.append(ResidualCase(tau, case, s, t, boundary))
    return out


_LAST_ENTRY = {
    Boundary.ONE_IN_HASSE: 0,
    Boundary.ONE_OUTSIDE_HASSE: 1,
    Boundary.TWO_OUTSIDE_THETA: 1,
    Boundary.TWO_IN_THETA: 2,
    Boundary.OTHERWISE: 1,
}


def expected_pattern(case: ResidualCase, p: int) -> tuple[int, ...]:
    """Predicted values of ``k''`` on ``case.segment``.

    Runs may be empty (``s = 1`` or ``t = 1``); they are emitted as zero-length
    runs rather than special-cased.
    """
    last = p + _LAST_ENTRY[case.boundary]
    if case.case == "i":
        return (0, *[p] * (case.s - 1), last)
    if case.t == 0:
        return (1, *[p + 1] * (case.s - 1), last)
    return (0, *[p] * (case.t - 1), *[p + 1] * case.s, last)


def segment_values(ps: PlaceStructure, kpp: Sequence[int], case: ResidualCase) -> tuple[int, ...]:
    return tuple(kpp[ps.index(t)] for t in case.segment(ps))


def pattern_mismatches(ps: PlaceStructure, k: Sequence[int]) -> list[tuple[ResidualCase, tuple, tuple]]:
    """Residual embeddings whose ``k''`` segment differs from :func:`expected_pattern`."""
    kpp = intermediate_weight(ps, k).k
    bad = []
    for c in classify_residual(ps, k):
        got, want = segment_values(ps, kpp, c), expected_pattern(c, ps.p)
        if got != want:
            bad.append((c, got, want))
    return bad


@dataclass(frozen=True)
class StripTrace:
    start: Weight
    steps: tuple[tuple[Embedding, Weight], ...]
    final: Weight

    @property
    def stripped(self) -> tuple[Embedding, ...]:
        return tuple(t for t, _ in self.steps)

    @property
    def stripped_multiset(self) -> Counter:
        return Counter(self.stripped)


def lowest_first(candidates: frozenset[Embedding]) -> Embedding:
    return min(candidates)


def greedy_strip(
    ps: PlaceStructure,
    w: Weight | Sequence[int],
    choose: Callable[[frozenset[Embedding]], Embedding] = lowest_first,
) -> StripTrace:
    """Divide by forced Hasse invariants until the weight lies in the minimal cone.

    By default the lowest-indexed strippable embedding is taken at each step.
    Every strip lowers the sum of ``k`` by ``p - 1``; more than ``sum(k)``
    steps means the process is diverging (possible only for weights with
    non-positive entries) and raises :class:`StripLimitExceeded`.
    """
    w = w if isinstance(w, Weight) else Weight(w)
    ps.check_vector(w.k)
    cap = max(sum(w.k), 1)
    steps = []
    cur = w
    while True:
        cands = strippable_set(ps, cur)
        if not cands:
            break
        if len(steps) >= cap:
            raise StripLimitExceeded(f"no fixed point after {cap} strips starting from {w.k}")
        tau = choose(cands)
        if tau not in cands:
            raise ValueError(f"chooser returned {tau}, not strippable")
        cur = Weight([a - b for a, b in zip(cur.k, hasse_weight(ps, tau))], cur.l)
        steps.append((tau, cur))
    return StripTrace(w, tuple(steps), cur)


def roundtrip_applicable(ps: PlaceStructure, k: Sequence[int]) -> str | None:
    """Reason the descent hypotheses fail for ``k``, or ``None`` if they hold."""
    k = ps.check_vector(k)
    if any(x < 1 for x in k):
        return "k has entries < 1"
    if not in_minimal_cone(ps, k):
        return "k is not in the minimal cone"
    for v in range(len(ps.places)):
        if all(x == 1 for x in ps.restrict(k, v)):
            return f"k is parallel weight one at place {v}"
    tr = compute_transfer(ps, k)
    for mu in tr.theta_set:
        if k[ps.index(mu)] % ps.p == 1:
            return f"k_{mu} = {k[ps.index(mu)]} is 1 mod p at a Theta-set embedding"
    return None


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    intermediate: Weight
    trace: StripTrace
    residual_set: tuple[Embedding, ...]
    problems: tuple[str, ...]


def verify_roundtrip(ps: PlaceStructure, k: Sequence[int]) -> RoundtripReport:
    """Strip ``k''`` back down and compare with ``k`` and the residual set.

    Raises :class:`InapplicableError` when ``k`` is outside the minimal cone,
    parallel weight one at some place, or ``1 mod p`` on the Theta set.
    """
    k = ps.check_vector(k)
    reason = roundtrip_applicable(ps, k)
    if reason is not None:
        raise InapplicableError(reason)
    residual = compute_transfer(ps, k).residual_set
    kpp = intermediate_weight(ps, k)
    trace = greedy_strip(ps, kpp)
    problems = []
    if trace.final.k != k:
        problems.append(f"descent ends at {trace.final.k}, expected {k}")
    if trace.stripped_multiset != Counter(residual):
        problems.append(
            f"stripped {sorted(trace.stripped)} but residual set is {list(residual)}")
    return RoundtripReport(not problems, kpp, trace, residual, tuple(problems))

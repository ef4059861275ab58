"""Exponent arithmetic for tame fundamental characters over one place.

A product ``prod_i omega_{tau_i}^{a_i}`` of fundamental characters of an
unramified extension of degree ``f`` is determined on inertia by the residue
``sum_i a_i p^{f-1-i} mod p^f - 1``.  Python integers are unbounded, so the
residues are exact for any ``f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal, NamedTuple, Sequence

from .errors import DomainError, InapplicableError
from .transfer import compute_transfer
from .weights import Embedding, PlaceStructure, require_positive

__all__ = [
    "ExponentVector",
    "Block",
    "CharacterShape",
    "residue",
    "string_decompose",
    "is_all_p_minus_one",
    "lift_exponents_regular",
    "mu_exponents",
    "shape_exclusion_violations",
    "local_global_applicable",
    "forbidden_shapes",
    "transfer_shapes",
]


@dataclass(frozen=True)
class ExponentVector:
    p: int
    a: tuple[int, ...]

    def __init__(self, p: int, a: Iterable[int]):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "a", tuple(int(x) for x in a))
        if not self.a:
            raise DomainError("exponent vector must have length >= 1")

    @property
    def f(self) -> int:
        return len(self.a)

    def __sub__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(self.p, (x - y for x, y in zip(self.a, other.a)))

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(self.p, (x + y for x, y in zip(self.a, other.a)))

    def rotate(self, r: int) -> "ExponentVector":
        """Relabel so that old index ``r`` becomes index 0."""
        r %= self.f
        return ExponentVector(self.p, self.a[r:] + self.a[:r])


def residue(v: ExponentVector) -> int:
    p, f = v.p, v.f
    modulus = p**f - 1
    return sum(x * p ** (f - 1 - i) for i, x in enumerate(v.a)) % modulus


class Block(NamedTuple):
    """A cyclic run of indices ``start, start+1, ..., start+length-1`` (mod ``f``).

    ``kind`` is ``"0"`` for a run of zeros, ``"+"`` for ``(-1, p-1, ..., p-1, p)``
    and ``"-"`` for its negative.
    """

    kind: Literal["0", "+", "-"]
    start: int
    length: int


def is_all_p_minus_one(v: ExponentVector) -> bool:
    return set(v.a) in ({v.p - 1}, {1 - v.p})


def string_decompose(d: ExponentVector) -> tuple[Block, ...] | None:
    """Split ``d`` cyclically into zero runs and blocks ``+-(-1, p-1, ..., p-1, p)``.

    Returns the blocks ordered by starting index, or ``None`` when no such
    decomposition exists.  Each block ends at its unique entry ``+-p``, so the
    decomposition, when it exists, is unique.
    """
    p, f, a = d.p, d.f, d.a
    if any(abs(x) > p for x in a):
        raise DomainError(f"entries must lie in [-{p}, {p}], got {a}")
    owner = [None] * f
    blocks = []
    for end in range(f):
        if abs(a[end]) != p:
            continue
        sign = 1 if a[end] > 0 else -1
        j, length = (end - 1) % f, 1
        while a[j] == sign * (p - 1) and owner[j] is None and j != end:
            j, length = (j - 1) % f, length + 1
        if j == end or owner[j] is not None or a[j] != -sign:
            return None
        length += 1
        start = j
        for i in range(length):
            owner[(start + i) % f] = len(blocks)
        blocks.append(Block("+" if sign > 0 else "-", start, length))
    for i in range(f):
        if owner[i] is None and a[i] != 0:
            return None
    free = [i for i in range(f) if owner[i] is None]
    if len(free) == f:
        return (Block("0", 0, f),)
    for i in free:
        if owner[(i - 1) % f] is None:
            continue
        length = 0
        while owner[(i + length) % f] is None and length < f:
            length += 1
        blocks.append(Block("0", i, length))
    return tuple(sorted(blocks, key=lambda b: b.start))


def lift_exponents_regular(
    p: int, k_prime: Sequence[int], J: Iterable[int]
) -> tuple[ExponentVector, ExponentVector]:
    """Exponents ``(s', t')`` attached to ``k'`` on one place and a subset ``J`` of its indices."""
    J = set(J)
    s = [1 - x if i in J else 0 for i, x in enumerate(k_prime)]
    t = [0 if i in J else 1 - x for i, x in enumerate(k_prime)]
    return ExponentVector(p, s), ExponentVector(p, t)


def mu_exponents(
    p: int, k_mu: Sequence[int], l_mu: Sequence[int], mu: int
) -> tuple[ExponentVector, ExponentVector]:
    """Exponents ``s = -l^mu`` and ``t = 1 - k^mu - l^mu`` on one place.

    ``l_mu`` must be ``-e_mu``, the shape every ``l^mu`` has when ``l = 0``.
    """
    expected = tuple(-1 if i == mu else 0 for i in range(len(k_mu)))
    if tuple(l_mu) != expected:
        raise DomainError(f"l^mu must equal -e_mu = {expected}, got {tuple(l_mu)}")
    s = [-x for x in l_mu]
    t = [1 - x - y for x, y in zip(k_mu, l_mu)]
    return ExponentVector(p, s), ExponentVector(p, t)


def local_global_applicable(ps: PlaceStructure, k: Sequence[int]) -> str | None:
    """Reason the small-weight hypotheses fail, or ``None`` if they hold.

    These are: ``1 <= k_tau <= p``; no ``tau`` with ``(k_tau, k_{Fr^-1 tau}) =
    (2, 1)``; no place where ``k`` is identically 1.
    """
    k = ps.check_vector(k)
    p = ps.p
    for t in ps:
        x = k[ps.index(t)]
        if not 1 <= x <= p:
            return f"k_{t} = {x} is outside [1, {p}]"
    for t in ps:
        if k[ps.index(t)] == 2 and k[ps.index(ps.shift(t, 1))] == 1:
            return f"(k_{t}, k_(Fr^-1 {t})) = (2, 1)"
    for v in range(len(ps.places)):
        if all(x == 1 for x in ps.restrict(k, v)):
            return f"k is parallel weight one at place {v}"
    return None


def shape_exclusion_violations(
    ps: PlaceStructure, k: Sequence[int], v: int, mu: Embedding
) -> list[frozenset[int]]:
    """Subsets ``J`` of the indices of place ``v`` solving the ``s``-congruence.

    For every ``J`` the congruence ``sum s'_i p^{f-1-i} = sum s^mu_i p^{f-1-i}
    mod p^f - 1`` is tested exactly after relabelling the place so that ``mu``
    is index 0.  Returned subsets use the caller's labelling.  Under the
    small-weight hypotheses the list should be empty; anything returned is a
    finding.

    Raises
    ------
    InapplicableError
        if the small-weight hypotheses fail or ``mu`` is not a Theta-set
        embedding of place ``v``.
    """
    k = require_positive(ps, k)
    reason = local_global_applicable(ps, k)
    if reason is not None:
        raise InapplicableError(reason)
    mu = ps.check(mu)
    tr = compute_transfer(ps, k)
    if mu.place != v or mu not in tr.theta_set:
        raise InapplicableError(f"{mu} is not in the Theta set at place {v}")

    p, f, r = ps.p, ps.places[v], mu.i
    k_prime = ps.restrict(tr.hasse_lift.k, v)
    w_mu = tr.theta_lifts[mu]
    s_mu, _ = mu_exponents(p, ps.restrict(w_mu.k, v), ps.restrict(w_mu.l, v), r)
    s_mu = s_mu.rotate(r)

    found = []
    for size in range(f + 1):
        for J in combinations(range(f), size):
            s_prime, _ = lift_exponents_regular(p, k_prime, J)
            if residue(s_mu - s_prime.rotate(r)) == 0:
                found.append(frozenset(J))
    return found


@dataclass(frozen=True)
class CharacterShape:
    """Inertial exponents of a reducible shape ``(chi1, *; 0, chi2)`` that must be excluded.

    ``context`` is ``"theta"`` for the shape attached to a Theta-set embedding
    ``mu`` or ``"regular_place"`` for a place where ``k`` is regular.
    """

    place: int
    context: Literal["theta", "regular_place"]
    mu: Embedding | None
    chi1: ExponentVector
    chi2: ExponentVector


def transfer_shapes(
    ps: PlaceStructure, k: Sequence[int], l: Sequence[int] | None = None, *, same_place_only: bool = False
) -> list[CharacterShape]:
    """Shapes ``chi1 = prod omega^{-l^mu}``, ``chi2 = prod omega^{1-k^mu-l^mu}`` per ``(mu, v)``."""
    tr = compute_transfer(ps, k, l)
    out = []
    for mu in tr.theta_set:
        w = tr.theta_lifts[mu]
        for v in range(len(ps.places)):
            if same_place_only and mu.place != v:
                continue
            kv, lv = ps.restrict(w.k, v), ps.restrict(w.l, v)
            out.append(CharacterShape(
                v, "theta", mu,
                ExponentVector(ps.p, (-x for x in lv)),
                ExponentVector(ps.p, (1 - a - b for a, b in zip(kv, lv))),
            ))
    return out


def forbidden_shapes(ps: PlaceStructure, k: Sequence[int], l: Sequence[int] | None = None) -> list[CharacterShape]:
    """Theta-set shapes at their own place, plus the shape for every place where ``k`` is regular."""
    k = require_positive(ps, k)
    out = transfer_shapes(ps, k, l, same_place_only=True)
    for v in range(len(ps.places)):
        kv = ps.restrict(k, v)
        if all(x >= 2 for x in kv):
            out.append(CharacterShape(
                v, "regular_place", None,
                ExponentVector(ps.p, [0] * len(kv)),
                ExponentVector(ps.p, (1 - x for x in kv)),
            ))
    return sorted(out, key=lambda s: (s.place, s.context != "theta", s.mu or ()))

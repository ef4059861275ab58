"""Per-weight property checks shared by ``enumerate`` and the test suite.

Each check returns a list of human-readable findings; an empty list means every
property held.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .descent import greedy_strip, intermediate_weight, pattern_mismatches, roundtrip_applicable, verify_roundtrip
from .errors import InvariantViolation
from .inertial import (
    ExponentVector,
    is_all_p_minus_one,
    local_global_applicable,
    residue,
    shape_exclusion_violations,
    string_decompose,
)
from .transfer import compute_transfer
from .weights import PlaceStructure, basis_vector, is_regular


def highest_first(cands):
    return max(cands)


def transfer_findings(ps: PlaceStructure, k: Sequence[int]) -> list[str]:
    try:
        tr = compute_transfer(ps, k)
    except InvariantViolation as exc:
        return [f"k={tuple(k)}: {exc}"]
    out = []
    if not set(tr.theta_set) <= set(tr.hasse_set):
        out.append(f"k={tuple(k)}: Theta set not inside Hasse set")
    if not is_regular(tr.hasse_lift):
        out.append(f"k={tuple(k)}: k' = {tr.hasse_lift.k} irregular")
    # The p+1 bound needs 1 <= k <= p and no (k_tau, k_{Fr^-1 tau}) = (2, 1).
    small = all(1 <= x <= ps.p for x in k) and not any(
        k[ps.index(t)] == 2 and k[ps.index(ps.shift(t, 1))] == 1 for t in ps)
    if small and max(tr.hasse_lift.k) > ps.p + 1:
        out.append(f"k={tuple(k)}: k' = {tr.hasse_lift.k} exceeds p+1")
    for mu, w in tr.theta_lifts.items():
        e = basis_vector(ps, mu)
        if w.k != tuple(a + 2 * b for a, b in zip(tr.hasse_lift.k, e)):
            out.append(f"k={tuple(k)}: k^{mu} = {w.k} != k' + 2 e_mu")
        if not is_regular(w):
            out.append(f"k={tuple(k)}: k^{mu} = {w.k} irregular")
        if small and max(w.k) > ps.p + 1:
            out.append(f"k={tuple(k)}: k^{mu} = {w.k} exceeds p+1")
    return out


def descent_findings(ps: PlaceStructure, k: Sequence[int], rng: random.Random | None = None) -> list[str]:
    """Roundtrip, residual patterns and strip confluence; empty if ``k`` is not admissible."""
    if roundtrip_applicable(ps, k) is not None:
        return []
    out = []
    rep = verify_roundtrip(ps, k)
    out += [f"k={tuple(k)}: {msg}" for msg in rep.problems]
    for case, got, want in pattern_mismatches(ps, k):
        out.append(f"k={tuple(k)}: segment at {case.tau} is {got}, predicted {want}")
    kpp = intermediate_weight(ps, k)
    choosers = [highest_first]
    if rng is not None:
        choosers.append(lambda c: rng.choice(sorted(c)))
    for choose in choosers:
        tr = greedy_strip(ps, kpp, choose)
        if tr.final != rep.trace.final or tr.stripped_multiset != rep.trace.stripped_multiset:
            out.append(f"k={tuple(k)}: strip order changes the result")
    return out


def shape_findings(ps: PlaceStructure, k: Sequence[int]) -> tuple[int, list[str]]:
    """Number of ``(v, mu)`` pairs checked and any congruence solutions found."""
    if local_global_applicable(ps, k) is not None:
        return 0, []
    out, checked = [], 0
    for mu in compute_transfer(ps, k).theta_set:
        checked += 1
        for J in shape_exclusion_violations(ps, k, mu.place, mu):
            out.append(f"k={tuple(k)}: J={sorted(J)} solves the congruence at {mu}")
    return checked, out


def iter_vectors(p: int, f: int) -> Iterator[ExponentVector]:
    for d in itertools.product(range(-p, p + 1), repeat=f):
        yield ExponentVector(p, d)


def oracle_findings(p: int, f: int) -> tuple[int, list[str]]:
    """Compare exact residues with string decompositions over ``[-p, p]^f``."""
    n, out = 0, []
    for d in iter_vectors(p, f):
        if is_all_p_minus_one(d):
            continue
        n += 1
        if (residue(d) == 0) != (string_decompose(d) is not None):
            out.append(f"p={p} d={d.a}: residue {residue(d)} but decomposition {string_decompose(d)}")
    return n, out

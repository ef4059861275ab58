"""Embeddings, the Frobenius action on them, and integer weight vectors.

The embeddings of a totally real field with ``p`` unramified are grouped by
the places above ``p``; each place contributes one Frobenius orbit of length
``f_v``.  Within a place the embeddings are labelled ``tau_0, ..., tau_{f-1}``
with ``tau_i = Fr o tau_{i+1}``, so the inverse Frobenius *advances* the index.

All embeddings are stored place-major: the global position of ``(v, i)`` is the
sum of the residue degrees of the places listed before ``v``, plus ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from sympy import isprime

from .errors import DomainError, StructureError

__all__ = [
    "Embedding",
    "PlaceStructure",
    "Weight",
    "frobenius",
    "frobenius_inverse",
    "basis_vector",
    "is_regular",
    "in_minimal_cone",
]


class Embedding(NamedTuple):
    """Embedding ``tau_i`` of the place with index ``place``."""

    place: int
    i: int

    def __str__(self) -> str:
        return f"tau{self.i}" if self.place == 0 else f"v{self.place}.tau{self.i}"


@dataclass(frozen=True)
class PlaceStructure:
    """An odd prime ``p`` together with the residue degrees of the places above it."""

    p: int
    places: tuple[int, ...]
    offsets: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, p: int, places: Iterable[int]):
        places = tuple(int(f) for f in places)
        if not isinstance(p, int) or p < 3 or not isprime(p):
            raise StructureError(f"p must be an odd prime, got {p!r}")
        if not places:
            raise StructureError("at least one place is required")
        if any(f < 1 for f in places):
            raise StructureError(f"residue degrees must be >= 1, got {places}")
        offsets, acc = [], 0
        for f in places:
            offsets.append(acc)
            acc += f
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "places", places)
        object.__setattr__(self, "offsets", tuple(offsets))

    @property
    def n(self) -> int:
        return sum(self.places)

    @cached_property
    def embeddings(self) -> tuple[Embedding, ...]:
        return tuple(Embedding(v, i) for v, f in enumerate(self.places) for i in range(f))

    def place_embeddings(self, v: int) -> tuple[Embedding, ...]:
        return tuple(Embedding(v, i) for i in range(self.places[v]))

    def check(self, tau: Embedding) -> Embedding:
        v, i = tau
        if not (0 <= v < len(self.places)) or not (0 <= i < self.places[v]):
            raise StructureError(f"{tau!r} is not an embedding of places={self.places}")
        return Embedding(v, i)

    def index(self, tau: Embedding) -> int:
        v, i = self.check(tau)
        return self.offsets[v] + i

    def embedding_at(self, pos: int) -> Embedding:
        if not 0 <= pos < self.n:
            raise StructureError(f"global index {pos} out of range for n={self.n}")
        for v in reversed(range(len(self.places))):
            if pos >= self.offsets[v]:
                return Embedding(v, pos - self.offsets[v])
        raise AssertionError("unreachable")

    def shift(self, tau: Embedding, steps: int) -> Embedding:
        """``Fr^{-steps} o tau``: move ``steps`` positions forward along the place's cycle."""
        v, i = self.check(tau)
        return Embedding(v, (i + steps) % self.places[v])

    def check_vector(self, vec: Sequence[int], name: str = "k") -> tuple[int, ...]:
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.n:
            raise StructureError(f"{name} has length {len(vec)}, expected {self.n}")
        return vec

    def restrict(self, vec: Sequence[int], v: int) -> tuple[int, ...]:
        """Entries of ``vec`` on the embeddings of place ``v``."""
        start = self.offsets[v]
        return tuple(vec[start:start + self.places[v]])

    def __iter__(self) -> Iterator[Embedding]:
        return iter(self.embeddings)


def frobenius_inverse(ps: PlaceStructure, tau: Embedding) -> Embedding:
    return ps.shift(tau, 1)


def frobenius(ps: PlaceStructure, tau: Embedding) -> Embedding:
    return ps.shift(tau, -1)


def basis_vector(ps: PlaceStructure, tau: Embedding) -> tuple[int, ...]:
    pos = ps.index(tau)
    return tuple(1 if j == pos else 0 for j in range(ps.n))


@dataclass(frozen=True)
class Weight:
    """A weight ``(k, l)``; entries are unrestricted integers."""

    k: tuple[int, ...]
    l: tuple[int, ...]

    def __init__(self, k: Sequence[int], l: Sequence[int] | None = None):
        k = tuple(int(x) for x in k)
        l = (0,) * len(k) if l is None else tuple(int(x) for x in l)
        if len(l) != len(k):
            raise StructureError(f"k and l have different lengths ({len(k)} != {len(l)})")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @classmethod
    def of(cls, ps: PlaceStructure, k: Sequence[int], l: Sequence[int] | None = None) -> "Weight":
        k = ps.check_vector(k, "k")
        l = None if l is None else ps.check_vector(l, "l")
        return cls(k, l)

    def __len__(self) -> int:
        return len(self.k)


def _k_of(w) -> tuple[int, ...]:
    return w.k if isinstance(w, Weight) else tuple(w)


def is_regular(w: Weight | Sequence[int]) -> bool:
    return all(x >= 2 for x in _k_of(w))


def in_minimal_cone(ps: PlaceStructure, k: Weight | Sequence[int]) -> bool:
    """True iff ``p * k_tau >= k_{Fr^-1 o tau}`` for every embedding."""
    k = ps.check_vector(_k_of(k))
    p = ps.p
    return all(p * k[ps.index(t)] >= k[ps.index(ps.shift(t, 1))] for t in ps)


def require_positive(ps: PlaceStructure, k: Sequence[int]) -> tuple[int, ...]:
    k = ps.check_vector(k)
    bad = [str(ps.embedding_at(j)) for j, x in enumerate(k) if x < 1]
    if bad:
        raise DomainError(f"k must be >= 1 at every embedding; fails at {', '.join(bad)}")
    return k

"""Prime spectra of finite rings as finite posets with Zariski and flat topologies.

A finite spectral space is Alexandrov: Zariski-closed sets are exactly the
up-sets of the containment order and flat-closed sets exactly the down-sets.
Only the order is stored; closed-set families are generated on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotPrime, RingMismatch, ZeroHit
from .ring import (
    ENUM_CAP,
    FinIdeal,
    FinRing,
    complement,
    enumerate_ideals,
    localize,
    mask_from_bool,
    bool_from_mask,
)

TOPOLOGIES = ("zariski", "flat")


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True, eq=False)
class SpectrumPoset:
    """Points with a partial order; ``leq[i, j]`` means point i is contained in point j."""

    labels: tuple[str, ...]
    leq: np.ndarray
    primes: tuple[FinIdeal, ...] | None = None
    origin: str = "bare-poset"

    def __post_init__(self):
        leq = np.asarray(self.leq, dtype=bool)
        n = len(self.labels)
        if leq.shape != (n, n):
            raise ValueError("order matrix does not match the number of points")
        if len(set(self.labels)) != n:
            raise ValueError("point labels must be distinct")
        if not leq.diagonal().all():
            raise ValueError("order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("order is not antisymmetric")
        if n and ((leq.astype(np.int32) @ leq.astype(np.int32) > 0) & ~leq).any():
            raise ValueError("order is not transitive")
        leq = leq.copy()
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        if self.primes is not None:
            for i, P in enumerate(self.primes):
                for j, Q in enumerate(self.primes):
                    if leq[i, j] != (P.mask & ~Q.mask == 0):
                        raise ValueError("order disagrees with containment of the prime ideals")

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, SpectrumPoset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    @property
    def ring(self) -> FinRing | None:
        return self.primes[0].ring if self.primes else None

    @cached_property
    def full(self) -> int:
        return (1 << len(self)) - 1

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """up_masks[i]: points above i (including i)."""
        return tuple(mask_from_bool(row) for row in self.leq)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(mask_from_bool(col) for col in self.leq.T)

    @cached_property
    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if self.leq[:, i].sum() == 1]

    @cached_property
    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if self.leq[i, :].sum() == 1]

    def index(self, label) -> int:
        if isinstance(label, FinIdeal):
            if self.primes is None or label not in self.primes:
                raise NotPrime(f"{label} is not a point of this spectrum")
            return self.primes.index(label)
        return self.labels.index(str(label))

    def pset(self, members: Iterable) -> "PrimeSet":
        m = 0
        for x in members:
            m |= 1 << (x if isinstance(x, int) else self.index(x))
        return PrimeSet(self, m)

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.up_masks[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.down_masks[i]
        return out

    def is_closed(self, mask: int, topology: str) -> bool:
        if topology == "zariski":
            return self.up_closure(mask) == mask
        if topology == "flat":
            return self.down_closure(mask) == mask
        raise ValueError(f"unknown topology {topology!r}")

    def closed_sets(self, topology: str) -> list[int]:
        """All closed sets as masks, ascending; exhaustive over 2**n subsets."""
        return [m for m in range(self.full + 1) if self.is_closed(m, topology)]


@dataclass(frozen=True)
class PrimeSet:
    poset: SpectrumPoset
    members: int

    def __post_init__(self):
        if self.members < 0 or self.members > self.poset.full:
            raise ValueError("prime set refers to points outside the poset")

    def __iter__(self):
        return iter(_bits(self.members))

    def __len__(self):
        return bin(self.members).count("1")

    def __contains__(self, item):
        i = item if isinstance(item, int) else self.poset.index(item)
        return bool(self.members >> i & 1)

    def __eq__(self, other):
        if not isinstance(other, PrimeSet):
            return NotImplemented
        return self.poset is other.poset and self.members == other.members

    def __hash__(self):
        return hash((id(self.poset), self.members))

    def __or__(self, other):
        return PrimeSet(self.poset, self.members | other.members)

    def __and__(self, other):
        return PrimeSet(self.poset, self.members & other.members)

    @property
    def labels(self) -> list[str]:
        return [self.poset.labels[i] for i in self]

    def __repr__(self):
        return "{" + ", ".join(self.labels) + "}"


def spec(R: FinRing, cap: int = ENUM_CAP) -> SpectrumPoset:
    cached = R.__dict__.get("_spec_cache")
    if cached is not None:
        return cached
    primes = tuple(I for I in enumerate_ideals(R, cap) if I.is_prime)
    n = len(primes)
    leq = np.zeros((n, n), dtype=bool)
    for i, P in enumerate(primes):
        for j, Q in enumerate(primes):
            leq[i, j] = P.mask & ~Q.mask == 0
    S = SpectrumPoset(tuple(P.label for P in primes), leq, primes, "from-ring")
    R.__dict__["_spec_cache"] = S
    return S


def bare_poset(labels: Sequence[str], relations: Iterable[tuple[str, str]]) -> SpectrumPoset:
    """Poset generated by ``a <= b`` relations (reflexive-transitive closure taken)."""
    labels = tuple(str(s) for s in labels)
    n = len(labels)
    leq = np.eye(n, dtype=bool)
    for a, b in relations:
        leq[labels.index(str(a)), labels.index(str(b))] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return SpectrumPoset(labels, leq, None, "bare-poset")


def vset(I: FinIdeal) -> PrimeSet:
    """V(I): primes containing I."""
    P = spec(I.ring)
    return PrimeSet(P, sum(1 << i for i, Q in enumerate(P.primes) if I.mask & ~Q.mask == 0))


def dset(R: FinRing, f) -> PrimeSet:
    """D(f): primes not containing f."""
    f = R.element(f)
    P = spec(R)
    return PrimeSet(P, sum(1 << i for i, Q in enumerate(P.primes) if not Q.mask >> f & 1))


def lambda_set(p: FinIdeal) -> PrimeSet:
    """Primes contained in p (the flat closure of the point p)."""
    if not p.is_prime:
        raise NotPrime(f"{p} is not prime")
    P = spec(p.ring)
    return PrimeSet(P, sum(1 << i for i, Q in enumerate(P.primes) if Q.mask & ~p.mask == 0))


def closure(X: PrimeSet, topology: str) -> PrimeSet:
    if topology == "zariski":
        return PrimeSet(X.poset, X.poset.up_closure(X.members))
    if topology == "flat":
        return PrimeSet(X.poset, X.poset.down_closure(X.members))
    raise ValueError(f"unknown topology {topology!r}")


@dataclass(frozen=True)
class ChainReport:
    noetherian: bool
    longest_chain: int
    chain: tuple[PrimeSet, ...]


def is_noetherian(P: SpectrumPoset, topology: str) -> ChainReport:
    """Finite spaces are Noetherian; also report a longest strict chain of closed sets.

    Chain length counts the closed sets in the chain, from the empty set to
    the whole space. Any strict chain refines to one that adds a single point
    per step, so the search only removes one point at a time.
    """
    memo: dict[int, tuple[int, int | None]] = {0: (1, None)}

    def longest(mask: int) -> int:
        if mask in memo:
            return memo[mask][0]
        best, arg = 0, None
        for i in _bits(mask):
            sub = mask & ~(1 << i)
            if P.is_closed(sub, topology):
                length = longest(sub)
                if length > best:
                    best, arg = length, sub
        memo[mask] = (best + 1, arg)
        return best + 1

    total = longest(P.full)
    chain = []
    m: int | None = P.full
    while m is not None:
        chain.append(PrimeSet(P, m))
        m = memo[m][1]
    return ChainReport(True, total, tuple(reversed(chain)))


def hochster_dual(P: SpectrumPoset) -> SpectrumPoset:
    """Same points with the order reversed; flat topology of P is Zariski topology of the dual."""
    return SpectrumPoset(P.labels, P.leq.T, None, "bare-poset")


@dataclass(frozen=True)
class FlatClosedVerdict:
    flat_closed: bool
    image: PrimeSet
    multiplicative_set: tuple[int, ...]
    agrees: bool


def localization_image(R: FinRing, S: Sequence[int]) -> int:
    """Mask (over Spec R) of the image of Spec(S^-1 R) -> Spec R."""
    P = spec(R)
    try:
        L, to_local = localize(R, S)
    except ZeroHit:
        return 0
    image = 0
    for Q in spec(L).primes:
        inside = bool_from_mask(Q.mask, L.size)
        pulled = mask_from_bool(inside[to_local])
        image |= 1 << next(i for i, p in enumerate(P.primes) if p.mask == pulled)
    return image


def flat_closed_via_localization(R: FinRing, E: PrimeSet) -> FlatClosedVerdict:
    """Compare flat-closedness of E with E == image of Spec of the localization at R minus the union of E."""
    P = spec(R)
    if E.poset is not P:
        raise RingMismatch("prime set does not belong to this ring's spectrum")
    union = 0
    for i in E:
        union |= P.primes[i].mask
    S = tuple(complement(R, union))
    image = localization_image(R, S)
    closed = P.is_closed(E.members, "flat")
    return FlatClosedVerdict(closed, PrimeSet(P, image), S, closed == (image == E.members))


def flat_open_as_vset(R: FinRing, U: PrimeSet) -> FinIdeal | None:
    """The radical ideal I with V(I) = U (unique when it exists), or None."""
    for I in enumerate_ideals(R):
        if I.is_radical and vset(I).members == U.members:
            return I
    return None

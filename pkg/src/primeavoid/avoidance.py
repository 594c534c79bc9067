"""Avoidance and absorbance for families of ideals of a finite ring.

Quantifiers over "any ideal J" and "any prime" are exhaustive loops over the
enumerated ideals. All witness-returning functions return the smallest valid
witness in element/index order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    HypothesisFails,
    NotContained,
    PremiseFails,
    RingMismatch,
    TooManyNonRadical,
)
from .ring import (
    ENUM_CAP,
    FinIdeal,
    FinRing,
    enumerate_ideals,
    ideal_sum_masks,
    indices_from_mask,
    lookup_ideal,
)


@dataclass(frozen=True)
class IdealFamily:
    ring: FinRing
    members: tuple[FinIdeal, ...]

    def __init__(self, ring: FinRing, members: Sequence[FinIdeal]):
        members = tuple(members)
        masks = set()
        for I in members:
            if I.ring is not ring:
                raise RingMismatch(f"{I} is not an ideal of {ring.name}")
            if I.mask in masks:
                raise ValueError(f"duplicate member {I.label}")
            masks.add(I.mask)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]

    @property
    def radical_flags(self) -> tuple[bool, ...]:
        return tuple(I.is_radical for I in self.members)

    @property
    def union_mask(self) -> int:
        m = 0
        for I in self.members:
            m |= I.mask
        return m

    @property
    def intersection_mask(self) -> int:
        m = self.ring.full_mask
        for I in self.members:
            m &= I.mask
        return m

    def labels(self) -> list[str]:
        return [I.label for I in self.members]


@dataclass(frozen=True)
class UnionCover:
    contained: bool
    witness: int | None = None
    cover: dict = field(default_factory=dict)


@dataclass(frozen=True)
class AvoidanceVerdict:
    holds: bool
    ideal: FinIdeal | None = None
    witnesses: tuple[int, ...] = ()


@dataclass(frozen=True)
class AbsorbanceVerdict:
    holds: bool
    prime: FinIdeal | None = None


def _check_ring(J: FinIdeal, F: IdealFamily) -> None:
    if J.ring is not F.ring:
        raise RingMismatch(f"{J} is not an ideal of {F.ring.name}")


def contained_in_union(J: FinIdeal, F: IdealFamily) -> UnionCover:
    """Is J a subset of the union of F? If not, the first element of J outside every member."""
    _check_ring(J, F)
    outside = J.mask & ~F.union_mask
    if outside:
        return UnionCover(False, indices_from_mask(outside)[0])
    cover = {}
    for x in J.elements:
        cover[x] = next(k for k, I in enumerate(F.members) if I.mask >> x & 1)
    return UnionCover(True, None, cover)


def _first_uncontained(J: int, F: IdealFamily) -> bool:
    return all(J & ~I.mask for I in F.members)


def satisfies_avoidance(F: IdealFamily, cap: int = ENUM_CAP) -> AvoidanceVerdict:
    union = F.union_mask
    for J in enumerate_ideals(F.ring, cap):
        if J.mask & ~union:
            continue
        if _first_uncontained(J.mask, F):
            wit = tuple(indices_from_mask(J.mask & ~I.mask)[0] for I in F.members)
            return AvoidanceVerdict(False, J, wit)
    return AvoidanceVerdict(True)


def satisfies_absorbance(F: IdealFamily, cap: int = ENUM_CAP) -> AbsorbanceVerdict:
    """Every prime containing the intersection of F contains some member."""
    meet = F.intersection_mask
    for p in enumerate_ideals(F.ring, cap):
        if not p.is_prime or meet & ~p.mask:
            continue
        if not any(I.mask & ~p.mask == 0 for I in F.members):
            return AbsorbanceVerdict(False, p)
    return AbsorbanceVerdict(True)


def every_subfamily_avoids(members: Sequence[FinIdeal], cap: int = ENUM_CAP) -> AvoidanceVerdict:
    """Does every subfamily satisfy avoidance?

    Some subfamily fails for J exactly when J lies in the union of the members
    that do not contain J (that subfamily is the largest candidate), so one
    pass over the ideals decides all 2**n subfamilies.
    """
    if not members:
        return AvoidanceVerdict(True)
    R = members[0].ring
    for J in enumerate_ideals(R, cap):
        union = 0
        for I in members:
            if J.mask & ~I.mask:
                union |= I.mask
        if J.mask & ~union == 0:
            return AvoidanceVerdict(False, J)
    return AvoidanceVerdict(True)


def _prime_lift(I: FinIdeal, f: int) -> FinIdeal:
    """A prime containing the radical ideal I but not f (exists since f is not in I)."""
    for p in enumerate_ideals(I.ring):
        if p.is_prime and I.mask & ~p.mask == 0 and not p.mask >> f & 1:
            return p
    raise AssertionError(f"no prime over {I.label} avoids {I.ring.labels[f]}")


def radical_avoidance_locate(I: FinIdeal, F: IdealFamily) -> int:
    """Index of the first member containing I, given I lies in the union of F.

    At most two members may be non-radical. For each radical member not
    containing I the proof's prime lift is computed; if no member contains I
    those primes would cover I and contradict prime avoidance, which is
    asserted rather than assumed.
    """
    _check_ring(I, F)
    if I.mask & ~F.union_mask:
        raise NotContained(f"{I.label} is not contained in the union of the family")
    nonradical = [k for k, flag in enumerate(F.radical_flags) if not flag]
    if len(nonradical) > 2:
        raise TooManyNonRadical(
            f"{len(nonradical)} non-radical members: {[F.members[k].label for k in nonradical]}"
        )
    for k, member in enumerate(F.members):
        if I.mask & ~member.mask == 0:
            return k
    lifts = [_prime_lift(m, indices_from_mask(I.mask & ~m.mask)[0]) for m in F.members if m.is_radical]
    raise AssertionError(f"radical avoidance violated; prime lifts {[p.label for p in lifts]}")


def davis_witness(f, I: FinIdeal, F: IdealFamily) -> int:
    """First g in I (element order) with f + g outside every member of F."""
    _check_ring(I, F)
    R = I.ring
    f = R.element(f)
    if not all(F.radical_flags):
        raise HypothesisFails("every member must be a radical ideal")
    union = F.union_mask
    rf_plus_i = ideal_sum_masks(R, R.principal_masks[f], I.mask)
    if rf_plus_i & ~union == 0:
        raise HypothesisFails("Rf + I is contained in the union of the family")
    for g in I.elements:
        if not union >> R.add(f, g) & 1:
            return g
    raise AssertionError("Davis radical avoidance violated")


@dataclass(frozen=True)
class IntersectionClosureReport:
    generated: tuple[FinIdeal, ...]
    all_subfamilies_avoid: bool
    failure: FinIdeal | None = None
    lifts: tuple = ()


def intersection_closure_check(S: IdealFamily, cap: int = ENUM_CAP) -> IntersectionClosureReport:
    """Form every intersection of members of S (the empty one is R) and test all subfamilies for avoidance.

    Raises PremiseFails when some subfamily of S already violates avoidance.
    For a failing subfamily of the intersections, each intersection I_t not
    containing J is lifted to a member K_t of S with I_t in K_t and f_t not in
    K_t; those lifts are reported (a correct run has none).
    """
    premise = every_subfamily_avoids(S.members, cap)
    if not premise.holds:
        raise PremiseFails(f"a subfamily of S fails avoidance at J={premise.ideal.label}", premise.ideal)
    R = S.ring
    masks = {R.full_mask}
    frontier = {R.full_mask}
    while frontier:
        new = set()
        for m in frontier:
            for K in S.members:
                x = m & K.mask
                if x not in masks:
                    new.add(x)
        masks |= new
        frontier = new
    T = tuple(sorted((lookup_ideal(R, m, cap) for m in masks), key=lambda I: I.sort_key))
    verdict = every_subfamily_avoids(T, cap)
    if verdict.holds:
        return IntersectionClosureReport(T, True)
    J = verdict.ideal
    lifts = []
    for It in T:
        if J.mask & ~It.mask:
            ft = indices_from_mask(J.mask & ~It.mask)[0]
            Kt = next(K for K in S.members if It.mask & ~K.mask == 0 and not K.mask >> ft & 1)
            lifts.append((It, ft, Kt))
    return IntersectionClosureReport(T, False, J, tuple(lifts))


def radical_families(R: FinRing, cap: int = ENUM_CAP):
    """All non-empty families of radical ideals, as IdealFamily objects."""
    rad = [I for I in enumerate_ideals(R, cap) if I.is_radical]
    for n in range(1, len(rad) + 1):
        for combo in itertools.combinations(rad, n):
            yield IdealFamily(R, combo)

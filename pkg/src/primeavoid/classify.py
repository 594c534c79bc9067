"""C.P. and P.Z. classification of finite rings, one code path per equivalent condition.

C.P. (compactly packed): every set of primes satisfies avoidance.
P.Z. (properly zipped): every set of primes satisfies absorbance.

Each condition tag below is computed independently from the ring primitives;
no tag calls another, so agreement between tags is a genuine cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .avoidance import IdealFamily, every_subfamily_avoids, satisfies_avoidance
from .errors import ZeroHit
from .ring import (
    ENUM_CAP,
    FinRing,
    bool_from_mask,
    complement,
    enumerate_ideals,
    localize,
    mask_from_bool,
    nilradical,
    product,
    quotient,
    zmod,
)
from .spectrum import PrimeSet, is_noetherian, lambda_set, spec

SCHEMA_VERSION = 1
BRUTE_FORCE_SPEC_LIMIT = 16

CP_TAGS = (
    "cp-def",
    "cp-prime-union",
    "cp-radical-principal",
    "cp-prime-principal",
    "cp-vfg",
    "cp-radical-family",
)
PZ_TAGS = (
    "pz-def",
    "pz-lambda-df",
    "pz-localization-iso",
    "pz-finite-presentation",
    "pz-open-intersections",
    "pz-flat-noetherian",
    "pz-radical-family",
    "pz-min-isolated",
)


@dataclass(frozen=True)
class ConditionVerdict:
    tag: str
    value: bool | None
    witness: dict = field(default_factory=dict)
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.value is None


def _lab(R: FinRing, x: int) -> str:
    return R.labels[x]


def _bits(mask: int):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _radical_mask(R: FinRing, mask: int) -> int:
    return mask_from_bool(bool_from_mask(mask, R.size)[R.high_powers])


def _prime_vset_masks(R: FinRing) -> list[int]:
    """For each element f, the set of primes (bitmask over Spec order) containing f."""
    primes = spec(R).primes
    out = []
    for f in range(R.size):
        out.append(sum(1 << i for i, p in enumerate(primes) if p.mask >> f & 1))
    return out


# C.P. conditions

def _cp_def(R: FinRing, cap: int) -> ConditionVerdict:
    primes = spec(R, cap).primes
    if len(primes) > BRUTE_FORCE_SPEC_LIMIT:
        v = every_subfamily_avoids(primes, cap)
        if v.holds:
            return ConditionVerdict("cp-def", True, note="all subfamilies via maximal-candidate reduction")
        return ConditionVerdict("cp-def", False, {"ideal": v.ideal.label})
    for n in range(1, len(primes) + 1):
        for fam in itertools.combinations(primes, n):
            v = satisfies_avoidance(IdealFamily(R, fam), cap)
            if not v.holds:
                return ConditionVerdict(
                    "cp-def", False, {"family": [p.label for p in fam], "ideal": v.ideal.label}
                )
    return ConditionVerdict("cp-def", True, {"families_checked": 2 ** len(primes) - 1})


def _cp_prime_union(R: FinRing, cap: int) -> ConditionVerdict:
    primes = spec(R, cap).primes
    for p in primes:
        union = 0
        for q in primes:
            if p.mask & ~q.mask:
                union |= q.mask
        if p.mask & ~union == 0:
            return ConditionVerdict("cp-prime-union", False, {"prime": p.label})
    return ConditionVerdict("cp-prime-union", True)


def _cp_radical_principal(R: FinRing, cap: int) -> ConditionVerdict:
    rads = [_radical_mask(R, m) for m in R.principal_masks]
    witness = {}
    for I in enumerate_ideals(R, cap):
        if not I.is_radical:
            continue
        f = next((a for a in range(R.size) if rads[a] == I.mask), None)
        if f is None:
            return ConditionVerdict("cp-radical-principal", False, {"ideal": I.label})
        witness[I.label] = _lab(R, f)
    return ConditionVerdict("cp-radical-principal", True, witness)


def _cp_prime_principal(R: FinRing, cap: int) -> ConditionVerdict:
    witness = {}
    for p in spec(R, cap).primes:
        found = None
        for a in range(R.size):
            if not p.mask >> a & 1:
                continue
            if _radical_mask(R, R.principal_masks[a]) == p.mask:
                found = a
                break
        if found is None:
            return ConditionVerdict("cp-prime-principal", False, {"prime": p.label})
        witness[p.label] = _lab(R, found)
    return ConditionVerdict("cp-prime-principal", True, witness)


def _cp_vfg(R: FinRing, cap: int) -> ConditionVerdict:
    P = spec(R, cap)
    chain = is_noetherian(P, "zariski")
    V = _prime_vset_masks(R)
    first = {}
    for h, m in enumerate(V):
        first.setdefault(m, h)
    for f in range(R.size):
        for g in range(f, R.size):
            if V[f] & V[g] not in first:
                return ConditionVerdict("cp-vfg", False, {"f": _lab(R, f), "g": _lab(R, g)})
    return ConditionVerdict(
        "cp-vfg",
        chain.noetherian,
        {"zariski_chain_length": chain.longest_chain, "distinct_V(h)": len(first)},
    )


def _cp_radical_family(R: FinRing, cap: int) -> ConditionVerdict:
    rad = [I for I in enumerate_ideals(R, cap) if I.is_radical]
    v = every_subfamily_avoids(rad, cap)
    if not v.holds:
        return ConditionVerdict("cp-radical-family", False, {"ideal": v.ideal.label})
    return ConditionVerdict("cp-radical-family", True, {"radical_ideals": len(rad)})


# P.Z. conditions

def _pz_def(R: FinRing, cap: int) -> ConditionVerdict:
    primes = spec(R, cap).primes
    n = len(primes)
    if n > BRUTE_FORCE_SPEC_LIMIT:
        return ConditionVerdict("pz-def", None, note=f"|Spec|={n} exceeds brute-force limit")
    for p in primes:
        for k in range(1, n + 1):
            for fam in itertools.combinations(primes, k):
                meet = R.full_mask
                for q in fam:
                    meet &= q.mask
                if meet & ~p.mask:
                    continue
                if not any(q.mask & ~p.mask == 0 for q in fam):
                    return ConditionVerdict(
                        "pz-def", False, {"prime": p.label, "family": [q.label for q in fam]}
                    )
    return ConditionVerdict("pz-def", True, {"families_checked": 2 ** n - 1})


def _pz_lambda_df(R: FinRing, cap: int) -> ConditionVerdict:
    primes = spec(R, cap).primes
    D = [sum(1 << i for i, q in enumerate(primes) if not q.mask >> f & 1) for f in range(R.size)]
    witness = {}
    for p in primes:
        lam = lambda_set(p).members
        f = next((a for a in range(R.size) if D[a] == lam), None)
        if f is None:
            return ConditionVerdict("pz-lambda-df", False, {"prime": p.label})
        witness[p.label] = _lab(R, f)
    return ConditionVerdict("pz-lambda-df", True, witness)


def canonical_map_bijective(R: FinRing, f: int, p) -> bool:
    """Is R_f -> R_p (both realised as direct factors eR) a bijective ring map?"""
    try:
        Lf, to_f = localize(R, [f])
    except ZeroHit:
        return False
    Lp, to_p = localize(R, complement(R, p.mask))
    e_p = Lp.construction["idempotent"]
    amb_f = Lf.construction["ambient"]
    pos_p = {a: i for i, a in enumerate(Lp.construction["ambient"])}
    # x in e_f R maps to e_p x; well defined because f is a unit in R_p
    phi = np.array([pos_p[R.mul(e_p, a)] for a in amb_f])
    if len(set(phi.tolist())) != Lp.size or Lf.size != Lp.size:
        return False
    if not np.array_equal(phi[Lf.add_table], Lp.add_table[phi[:, None], phi[None, :]]):
        return False
    if not np.array_equal(phi[Lf.mul_table], Lp.mul_table[phi[:, None], phi[None, :]]):
        return False
    if phi[Lf.one] != Lp.one:
        return False
    return bool(np.array_equal(phi[to_f], to_p))


def _pz_localization_iso(R: FinRing, cap: int) -> ConditionVerdict:
    witness = {}
    for p in spec(R, cap).primes:
        found = None
        for f in range(R.size):
            if p.mask >> f & 1:
                continue
            if canonical_map_bijective(R, f, p):
                found = f
                break
        if found is None:
            return ConditionVerdict("pz-localization-iso", False, {"prime": p.label})
        witness[p.label] = _lab(R, found)
    return ConditionVerdict("pz-localization-iso", True, witness)


def _pz_finite_presentation(R: FinRing, cap: int) -> ConditionVerdict:
    return ConditionVerdict(
        "pz-finite-presentation",
        None,
        note="no independent finite-scale test; the pz-localization-iso witness subsumes it",
    )


def _pz_open_intersections(R: FinRing, cap: int) -> ConditionVerdict:
    primes = spec(R, cap).primes
    full = (1 << len(primes)) - 1
    basic = {sum(1 << i for i, q in enumerate(primes) if not q.mask >> f & 1) for f in range(R.size)}
    family = set(basic) | {full}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(family):
                c = a & b
                if c not in family:
                    new.add(c)
        family |= new
        frontier = new
    for U in sorted(family):
        cover = 0
        for B in basic:
            if B & ~U == 0:
                cover |= B
        if cover != U:
            return ConditionVerdict(
                "pz-open-intersections", False, {"set": [primes[i].label for i in _bits(U)]}
            )
    return ConditionVerdict("pz-open-intersections", True, {"intersections_checked": len(family)})


def _pz_flat_noetherian(R: FinRing, cap: int) -> ConditionVerdict:
    chain = is_noetherian(spec(R, cap), "flat")
    return ConditionVerdict("pz-flat-noetherian", chain.noetherian, {"flat_chain_length": chain.longest_chain})


def _pz_radical_family(R: FinRing, cap: int) -> ConditionVerdict:
    rad = [I for I in enumerate_ideals(R, cap) if I.is_radical]
    for p in spec(R, cap).primes:
        meet = R.full_mask
        for I in rad:
            if I.mask & ~p.mask:
                meet &= I.mask
        if meet & ~p.mask == 0:
            return ConditionVerdict("pz-radical-family", False, {"prime": p.label})
    return ConditionVerdict("pz-radical-family", True, {"radical_ideals": len(rad)})


def _pz_min_isolated(R: FinRing, cap: int) -> ConditionVerdict:
    P = spec(R, cap)
    primes = P.primes
    witness = {}
    for i in P.minimal:
        target = 1 << i
        f = None
        for a in range(R.size):
            D = sum(1 << j for j, q in enumerate(primes) if not q.mask >> a & 1)
            if D == target:
                f = a
                break
        if f is None:
            return ConditionVerdict("pz-min-isolated", False, {"prime": primes[i].label})
        witness[primes[i].label] = _lab(R, f)
    return ConditionVerdict("pz-min-isolated", True, witness)


CONDITIONS = {
    "cp-def": _cp_def,
    "cp-prime-union": _cp_prime_union,
    "cp-radical-principal": _cp_radical_principal,
    "cp-prime-principal": _cp_prime_principal,
    "cp-vfg": _cp_vfg,
    "cp-radical-family": _cp_radical_family,
    "pz-def": _pz_def,
    "pz-lambda-df": _pz_lambda_df,
    "pz-localization-iso": _pz_localization_iso,
    "pz-finite-presentation": _pz_finite_presentation,
    "pz-open-intersections": _pz_open_intersections,
    "pz-flat-noetherian": _pz_flat_noetherian,
    "pz-radical-family": _pz_radical_family,
    "pz-min-isolated": _pz_min_isolated,
}


def is_cp(R: FinRing, method: str = "cp-def", cap: int = ENUM_CAP) -> ConditionVerdict:
    if method not in CP_TAGS:
        raise ValueError(f"unknown C.P. condition {method!r}")
    return CONDITIONS[method](R, cap)


def is_pz(R: FinRing, method: str = "pz-def", cap: int = ENUM_CAP) -> ConditionVerdict:
    if method not in PZ_TAGS:
        raise ValueError(f"unknown P.Z. condition {method!r}")
    return CONDITIONS[method](R, cap)


# derived data

@dataclass(frozen=True)
class ChainSummary:
    prime_chain: int
    radical_descending: int
    radical_ascending: int
    max_count: int
    min_count: int
    dim: int


def _longest_chain(masks: list[int]) -> list[int]:
    """A longest strictly increasing chain (by inclusion) among the given sets."""
    order = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    best: dict[int, list[int]] = {}
    for m in order:
        prev = [best[k] for k in best if k != m and k & ~m == 0]
        chain = max(prev, key=len, default=[])
        best[m] = chain + [m]
    return max(best.values(), key=len, default=[])


def chain_reports(R: FinRing, cap: int = ENUM_CAP) -> ChainSummary:
    """Exact chain data: primes, radical ideals both directions, Max and Min counts.

    Chain lengths count the members of the chain.
    """
    P = spec(R, cap)
    prime_masks = [p.mask for p in P.primes]
    rad = [I.mask for I in enumerate_ideals(R, cap) if I.is_radical]
    prime_chain = len(_longest_chain(prime_masks))
    ascending = _longest_chain(rad)
    descending = _longest_chain([R.full_mask & ~m for m in rad])
    return ChainSummary(
        prime_chain=prime_chain,
        radical_descending=len(descending),
        radical_ascending=len(ascending),
        max_count=len(P.maximal),
        min_count=len(P.minimal),
        dim=prime_chain - 1,
    )


def goldman_set(R: FinRing, cap: int = ENUM_CAP) -> PrimeSet:
    """Primes p whose strict over-primes meet in something strictly larger than p (empty meet: R)."""
    P = spec(R, cap)
    members = 0
    for i, p in enumerate(P.primes):
        meet = R.full_mask
        for q in P.primes:
            if q.mask != p.mask and p.mask & ~q.mask == 0:
                meet &= q.mask
        if meet != p.mask:
            members |= 1 << i
    return PrimeSet(P, members)


@dataclass
class ClassificationReport:
    ring: str
    conditions: dict[str, ConditionVerdict]
    derived: dict

    def values(self, prefix: str) -> set:
        return {v.value for t, v in self.conditions.items() if t.startswith(prefix) and not v.skipped}

    @property
    def cp_agree(self) -> bool:
        return len(self.values("cp-")) == 1

    @property
    def pz_agree(self) -> bool:
        return len(self.values("pz-")) == 1

    @property
    def cp(self) -> bool:
        vals = self.values("cp-")
        if len(vals) != 1:
            raise AssertionError(f"C.P. conditions disagree on {self.ring}")
        return vals.pop()

    @property
    def pz(self) -> bool:
        vals = self.values("pz-")
        if len(vals) != 1:
            raise AssertionError(f"P.Z. conditions disagree on {self.ring}")
        return vals.pop()

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "ring": self.ring,
            "conditions": [
                {"tag": t, "value": v.value, "note": v.note} for t, v in self.conditions.items()
            ],
            "witnesses": [{"tag": t, "data": v.witness} for t, v in self.conditions.items() if v.witness],
            "derived": self.derived,
        }


def classify(R: FinRing, tags=None, cap: int = ENUM_CAP) -> ClassificationReport:
    tags = tuple(tags) if tags is not None else CP_TAGS + PZ_TAGS
    conditions = {t: CONDITIONS[t](R, cap) for t in tags}
    P = spec(R, cap)
    chains = chain_reports(R, cap)
    derived = {
        "size": R.size,
        "spectrum_size": len(P),
        "spectrum": list(P.labels),
        "dim": chains.dim,
        "max_count": chains.max_count,
        "min_count": chains.min_count,
        "gold": goldman_set(R, cap).labels,
        "prime_chain": chains.prime_chain,
        "radical_chain_descending": chains.radical_descending,
        "radical_chain_ascending": chains.radical_ascending,
        "nilradical": nilradical(R).label,
    }
    return ClassificationReport(R.name, conditions, derived)


@dataclass(frozen=True)
class FiniteSpectrumReport:
    cp: bool
    pz: bool
    spectrum_size: int
    noetherian_zariski: bool
    noetherian_flat: bool

    @property
    def holds(self) -> bool:
        """Both C.P. and P.Z., Noetherian in both topologies, finite spectrum: all three agree."""
        return self.cp and self.pz and self.noetherian_zariski and self.noetherian_flat and self.spectrum_size > 0


def finite_spectrum_equiv(R: FinRing, cap: int = ENUM_CAP) -> FiniteSpectrumReport:
    report = classify(R, cap=cap)
    P = spec(R, cap)
    return FiniteSpectrumReport(
        cp=report.cp,
        pz=report.pz,
        spectrum_size=len(P),
        noetherian_zariski=is_noetherian(P, "zariski").noetherian,
        noetherian_flat=is_noetherian(P, "flat").noetherian,
    )


@dataclass(frozen=True)
class ZeroDimReport:
    factor_sizes: tuple[int, ...]
    all_fields: bool
    isomorphism: bool


def zero_dim_classify(R: FinRing, cap: int = ENUM_CAP) -> ZeroDimReport:
    """Build R/N -> prod R/p_i and check it is a bijective ring map onto a product of fields."""
    N = nilradical(R)
    Rred, to_red = quotient(R, N) if N.mask != 1 << R.zero else (R, np.arange(R.size))
    factors = []
    for p in spec(R, cap).primes:
        F, to_F = quotient(R, p)
        factors.append((F, to_F))
    reps = {}
    for r in range(R.size):
        reps.setdefault(int(to_red[r]), r)
    reps = np.array(sorted(reps.values()))
    images = {tuple(int(to_F[r]) for _, to_F in factors) for r in reps}
    sizes = tuple(F.size for F, _ in factors)
    bijective = len(images) == Rred.size == int(np.prod(sizes))
    hom = True
    for F, to_F in factors:
        img = to_F[reps]
        hom &= bool(np.array_equal(to_F[R.add_table[np.ix_(reps, reps)]], F.add_table[img[:, None], img[None, :]]))
        hom &= bool(np.array_equal(to_F[R.mul_table[np.ix_(reps, reps)]], F.mul_table[img[:, None], img[None, :]]))
    return ZeroDimReport(sizes, all(F.is_field() for F, _ in factors), bijective and hom)


@dataclass
class InvarianceReport:
    ring: str
    reduced_agrees: bool
    quotients: dict = field(default_factory=dict)
    localizations: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        checks = [self.reduced_agrees]
        checks += [v == (True, True) for v in self.quotients.values()]
        checks += [v == (True, True) for v in self.localizations.values()]
        checks += [v == (True, True) for v in self.products.values()]
        return all(checks)


def _both(R: FinRing, cap: int, tags) -> tuple[bool, bool]:
    rep = classify(R, tags, cap)
    return rep.cp, rep.pz


INVARIANCE_TAGS = CP_TAGS + PZ_TAGS


def construction_invariance_suite(
    R: FinRing, partners=None, cap: int = ENUM_CAP, tags=INVARIANCE_TAGS
) -> InvarianceReport:
    """Classification of R against R/N, every quotient, every localization and binary products."""
    base = _both(R, cap, tags)
    N = nilradical(R)
    red = R if N.mask == 1 << R.zero else quotient(R, N)[0]
    report = InvarianceReport(R.name, _both(red, cap, tags) == base)
    for I in enumerate_ideals(R, cap):
        if I.is_proper and I.mask != 1 << R.zero:
            report.quotients[I.label] = _both(quotient(R, I)[0], cap, tags)
    seen = set()
    for f in range(R.size):
        try:
            L, _ = localize(R, [f])
        except ZeroHit:
            continue
        e = L.construction["idempotent"]
        if e in seen:
            continue
        seen.add(e)
        report.localizations[R.labels[f]] = _both(L, cap, tags)
    partners = partners if partners is not None else [zmod(2), zmod(3)]
    for S in partners:
        if R.size * S.size <= cap:
            report.products[S.name] = _both(product(R, S), cap, tags)
    return report

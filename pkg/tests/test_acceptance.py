"""Acceptance gate: one check per primary criterion.

Each criterion is a plain function returning (ok, detail) so the file also
runs as a script; under pytest the pass/fail lines are printed in the
terminal summary (see conftest.py).
"""

from __future__ import annotations

import itertools
import random
import sys
import time

import pytest

from primeavoid.avoidance import (
    IdealFamily,
    contained_in_union,
    davis_witness,
    intersection_closure_check,
    radical_avoidance_locate,
    satisfies_avoidance,
)
from primeavoid.certificates import check_item, corpus
from primeavoid.classify import (
    CP_TAGS,
    PZ_TAGS,
    canonical_map_bijective,
    classify,
    construction_invariance_suite,
    finite_spectrum_equiv,
)
from primeavoid.corpus import counterexample_ring, finite_rings
from primeavoid.errors import HypothesisFails, TooManyNonRadical
from primeavoid.poly import PolyIdeal, PolyRing, intersect, membership, radical_membership
from primeavoid.ring import enumerate_ideals, principal
from primeavoid.spectrum import closure, dset, hochster_dual, lambda_set, spec, vset

RESULTS: dict[int, tuple[bool, str]] = {}


def _bits(mask: int):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def criterion_1():
    t = time.perf_counter()
    rings = finite_rings()
    bad = []
    for R in rings:
        rep = classify(R)
        values = [rep.conditions[tag].value for tag in CP_TAGS + PZ_TAGS]
        values = [v for v in values if v is not None]
        if not all(values) or not finite_spectrum_equiv(R).holds:
            bad.append(R.name)
    dt = time.perf_counter() - t
    ok = not bad and len(rings) >= 25 and dt < 60
    return ok, f"{len(rings)} rings, failures={bad}, {dt:.1f}s"


def criterion_2():
    t = time.perf_counter()
    rings = finite_rings(64)
    checked = 0
    failures = []
    for R in rings:
        ideals = enumerate_ideals(R)
        rad = [I for I in ideals if I.is_radical]
        for n in range(1, len(rad) + 1):
            for combo in itertools.combinations(rad, n):
                F = IdealFamily(R, combo)
                if not satisfies_avoidance(F).holds:
                    failures.append((R.name, F.labels()))
                union = F.union_mask
                for I in ideals:
                    if I.mask & ~union:
                        continue
                    k = radical_avoidance_locate(I, F)
                    checked += 1
                    if I.mask & ~F[k].mask:
                        failures.append((R.name, I.label, F.labels()))
    dt = time.perf_counter() - t
    return not failures and dt < 120, f"{len(rings)} rings, {checked} locate calls, failures={failures[:3]}, {dt:.1f}s"


def criterion_3():
    R = counterexample_ring()
    m = next(I for I in enumerate_ideals(R) if I.is_maximal)
    F = IdealFamily(R, [principal(R, "x"), principal(R, "y"), principal(R, "x + y")])
    covered = contained_in_union(m, F).contained
    no_member = all(m.mask & ~I.mask for I in F)
    fails = satisfies_avoidance(F)
    try:
        radical_avoidance_locate(m, F)
        rejected = False
    except TooManyNonRadical:
        rejected = True
    ok = covered and no_member and not fails.holds and fails.ideal == m and rejected
    return ok, f"m={m.label} covered={covered} no_member={no_member} rejected={rejected}"


def _verify_davis(R, f, I, F, g) -> bool:
    """Independent check straight from the tables: g in I and f+g in no member."""
    if not I.mask >> g & 1:
        return False
    s = int(R.add_table[f, g])
    return all(not I_k.mask >> s & 1 for I_k in F)


def criterion_4():
    t = time.perf_counter()
    rings = finite_rings(32)
    runs = failures = 0
    for R in rings:
        ideals = enumerate_ideals(R)
        rad = [I for I in ideals if I.is_radical and I.is_proper]
        # the witness depends on the family only through its union
        families = {}
        for n in range(1, len(rad) + 1):
            for combo in itertools.combinations(rad, n):
                families.setdefault(IdealFamily(R, combo).union_mask, combo)
        for combo in families.values():
            F = IdealFamily(R, combo)
            for I in ideals:
                for f in range(R.size):
                    try:
                        g = davis_witness(f, I, F)
                    except HypothesisFails:
                        continue
                    runs += 1
                    failures += not _verify_davis(R, f, I, F, g)
    dt = time.perf_counter() - t
    return failures == 0 and runs > 0 and dt < 60, f"{len(rings)} rings, {runs} witnesses, failures={failures}, {dt:.1f}s"


def criterion_5():
    bad = []
    rings = finite_rings(32)
    for R in rings:
        S = IdealFamily(R, spec(R).primes)
        rep = intersection_closure_check(S)
        radicals = {I.mask for I in enumerate_ideals(R) if I.is_radical}
        if {I.mask for I in rep.generated} != radicals or not rep.all_subfamilies_avoid:
            bad.append(R.name)
    return not bad, f"{len(rings)} rings, failures={bad}"


def criterion_6():
    bad = []
    count = 0
    for R in finite_rings():
        P = spec(R)
        if len(P) > 12:
            continue
        count += 1
        # flat opens are unions of the basic sets V(I), computed from the ring
        basics = {vset(I).members for I in enumerate_ideals(R)}
        opens = set()
        for U in range(P.full + 1):
            union = 0
            for B in basics:
                if B & ~U == 0:
                    union |= B
            if union == U:
                opens.add(U)
        flat_closed = {P.full & ~U for U in opens}
        dual_zariski = set(hochster_dual(P).closed_sets("zariski"))
        if flat_closed != dual_zariski:
            bad.append(R.name)
        for i, p in enumerate(P.primes):
            if lambda_set(p).members != closure(P.pset([i]), "flat").members:
                bad.append((R.name, p.label))
    return not bad, f"{count} rings, failures={bad}"


def criterion_7():
    bad = []
    pairs = 0
    for R in finite_rings():
        for p in spec(R).primes:
            lam = lambda_set(p).members
            f = next((a for a in range(R.size) if dset(R, a).members == lam), None)
            if f is None or not canonical_map_bijective(R, f, p):
                bad.append((R.name, p.label))
            pairs += 1
    return not bad, f"{pairs} (ring, prime) pairs, failures={bad}"


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(_trim(a)) >= len(b):
        c = a[-1] * inv % p
        s = len(a) - len(b)
        for i, bi in enumerate(b):
            a[s + i] = (a[s + i] - c * bi) % p
    return a


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_rem(a, b, p))
    return a


def _to_poly(R, coeffs):
    f = R.zero
    for k, c in enumerate(coeffs):
        if c:
            f = f + R.const(c) * R.gen("x") ** k
    return f


def criterion_8():
    t = time.perf_counter()
    ok = True
    R2 = PolyRing(2, ["x", "y"])
    x, y = R2.gens
    ok &= intersect(PolyIdeal(R2, [x]), PolyIdeal(R2, [y])) == PolyIdeal(R2, [x * y])
    for p in (2, 3, 5):
        R3 = PolyRing(p, ["x", "y", "z"])
        x, y, z = R3.gens
        got = intersect(PolyIdeal(R3, [x]), PolyIdeal(R3, [y, z]))
        ok &= got == PolyIdeal(R3, [x * y, x * z])
        ok &= not radical_membership(x, PolyIdeal(R3, [x * y, x * z]))
    rng = random.Random(0)
    mismatches = 0
    for _ in range(500):
        p = rng.choice([2, 3, 5, 7])
        R = PolyRing(p, ["x"])
        gens = [[rng.randrange(p) for _ in range(rng.randint(1, 5))] for _ in range(rng.randint(1, 3))]
        f = [rng.randrange(p) for _ in range(rng.randint(1, 7))]
        if rng.random() < 0.5:
            # bias half the cases towards members
            g0 = _trim(list(gens[0]))
            if g0:
                k = [rng.randrange(p) for _ in range(3)]
                f = [0] * (len(g0) + len(k))
                for i, a in enumerate(g0):
                    for j, b in enumerate(k):
                        f[i + j] = (f[i + j] + a * b) % p
        d = []
        for g in gens:
            d = _gcd(d, g, p) if d else _trim(list(g))
        expected = True if not _trim(list(f)) else (bool(d) and not _trim(_rem(f, d, p)))
        got = membership(_to_poly(R, f), PolyIdeal(R, [_to_poly(R, g) for g in gens]))
        mismatches += got != expected
    dt = time.perf_counter() - t
    return ok and mismatches == 0 and dt < 30, f"identities={ok}, fuzz mismatches={mismatches}/500, {dt:.1f}s"


def criterion_9():
    t = time.perf_counter()
    results = [check_item(item) for item in corpus()]
    dt = time.perf_counter() - t
    pz = results[-1]
    witnesses = pz.detail["witnesses"]
    ok = all(r.ok for r in results) and bool(witnesses) and dt < 30
    return ok, f"{sum(r.ok for r in results)}/{len(results)} items as expected, witnesses={witnesses}, {dt:.1f}s"


def criterion_10():
    bad = []
    rings = finite_rings()
    for R in rings:
        if not construction_invariance_suite(R).holds:
            bad.append(R.name)
    return not bad, f"{len(rings)} rings, failures={bad}"


CRITERIA = {
    1: ("equivalence suite", criterion_1),
    2: ("radical avoidance, exhaustive", criterion_2),
    3: ("necessity of the radical hypothesis", criterion_3),
    4: ("Davis suite", criterion_4),
    5: ("intersection closure", criterion_5),
    6: ("topology duality", criterion_6),
    7: ("P.Z. witness pipeline", criterion_7),
    8: ("Groebner kernel", criterion_8),
    9: ("certificate corpus", criterion_9),
    10: ("construction invariance", criterion_10),
}


def report_line(n: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n} ({CRITERIA[n][0]}): {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n][1]()
    RESULTS[n] = (ok, detail)
    print(report_line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n][1]()
        print(report_line(n, ok, detail), flush=True)
        status |= not ok
    sys.exit(status)

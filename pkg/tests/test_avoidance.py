from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeavoid.avoidance import (
    IdealFamily,
    contained_in_union,
    davis_witness,
    every_subfamily_avoids,
    intersection_closure_check,
    radical_avoidance_locate,
    satisfies_absorbance,
    satisfies_avoidance,
)
from primeavoid.corpus import counterexample_ring, finite_rings
from primeavoid.errors import HypothesisFails, NotContained, PremiseFails, RingMismatch, TooManyNonRadical
from primeavoid.ring import enumerate_ideals, principal, zmod
from primeavoid.spectrum import spec

SMALL = finite_rings(32)


def square():
    R = counterexample_ring()
    F = IdealFamily(R, [principal(R, "x"), principal(R, "y"), principal(R, "x + y")])
    m = next(I for I in enumerate_ideals(R) if I.is_maximal)
    return R, F, m


def test_family_validation():
    R = zmod(12)
    with pytest.raises(ValueError):
        IdealFamily(R, [principal(R, 2), principal(R, 2)])
    with pytest.raises(RingMismatch):
        IdealFamily(R, [principal(zmod(6), 2)])


def test_contained_in_union_examples():
    R, F, m = square()
    cover = contained_in_union(m, F)
    assert cover.contained and set(cover.cover) == set(m.elements)
    Z = zmod(12)
    assert contained_in_union(principal(Z, 6), IdealFamily(Z, [principal(Z, 2)])).contained
    no = contained_in_union(principal(Z, 2), IdealFamily(Z, [principal(Z, 3)]))
    assert not no.contained and no.witness == 2


def test_avoidance_examples():
    R, F, m = square()
    v = satisfies_avoidance(F)
    assert not v.holds and v.ideal == m
    assert satisfies_avoidance(IdealFamily(R, F.members[:2])).holds


def test_absorbance_examples():
    Z = zmod(12)
    assert satisfies_absorbance(IdealFamily(Z, [principal(Z, 2), principal(Z, 3)])).holds
    assert satisfies_absorbance(IdealFamily(Z, [principal(Z, 4)])).holds


def test_monotonicity_fails():
    # {(x),(y)} satisfies avoidance but adding (x+y) breaks it
    R, F, _ = square()
    assert satisfies_avoidance(IdealFamily(R, F.members[:2])).holds
    assert not satisfies_avoidance(F).holds


def test_locate_examples():
    Z = zmod(30)
    F = IdealFamily(Z, [principal(Z, 2), principal(Z, 3), principal(Z, 5)])
    assert radical_avoidance_locate(principal(Z, 6), F) == 0
    assert radical_avoidance_locate(principal(Z, 15), F) == 1
    with pytest.raises(NotContained):
        radical_avoidance_locate(Z.unit_ideal, F)
    R, F2, m = square()
    with pytest.raises(TooManyNonRadical):
        radical_avoidance_locate(m, F2)


def test_locate_allows_two_non_radical():
    Z = zmod(8)
    F = IdealFamily(Z, [principal(Z, 4), principal(Z, 2), Z.zero_ideal])
    assert radical_avoidance_locate(principal(Z, 4), F) == 0


def test_davis_examples():
    Z = zmod(30)
    three = IdealFamily(Z, [principal(Z, 3)])
    # first g in element order: 2 itself is already outside (3)
    assert davis_witness(2, principal(Z, 15), three) == 0
    assert davis_witness(3, principal(Z, 2), three) == 2
    with pytest.raises(HypothesisFails):
        davis_witness(3, Z.zero_ideal, three)
    Z12 = zmod(12)
    with pytest.raises(HypothesisFails):
        davis_witness(1, Z12.zero_ideal, IdealFamily(Z12, [principal(Z12, 4)]))


def test_intersection_closure_examples():
    Z = zmod(30)
    rep = intersection_closure_check(IdealFamily(Z, spec(Z).primes))
    assert len(rep.generated) == 8 and rep.all_subfamilies_avoid
    single = intersection_closure_check(IdealFamily(Z, [principal(Z, 2)]))
    assert {I.label for I in single.generated} == {"(2)", "(1)"}
    R, F, _ = square()
    with pytest.raises(PremiseFails):
        intersection_closure_check(F)


def _brute_every_subfamily(members):
    R = members[0].ring
    for n in range(1, len(members) + 1):
        for sub in itertools.combinations(members, n):
            if not satisfies_avoidance(IdealFamily(R, sub)).holds:
                return False
    return True


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_every_subfamily_matches_brute_force(R, data):
    ideals = enumerate_ideals(R)
    members = data.draw(st.lists(st.sampled_from(ideals), min_size=1, max_size=5, unique_by=lambda I: I.mask))
    assert every_subfamily_avoids(members).holds == _brute_every_subfamily(members)


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_prime_avoidance_and_absorbance(R):
    primes = spec(R).primes
    for n in range(1, len(primes) + 1):
        for fam in itertools.combinations(primes, n):
            assert satisfies_avoidance(IdealFamily(R, fam)).holds
    rad = [I for I in enumerate_ideals(R) if I.is_radical]
    for n in range(1, min(len(rad), 3) + 1):
        for fam in itertools.combinations(rad, n):
            assert satisfies_absorbance(IdealFamily(R, fam)).holds


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_davis_postcondition(R, data):
    ideals = enumerate_ideals(R)
    rad = [I for I in ideals if I.is_radical]
    fam = data.draw(st.lists(st.sampled_from(rad), min_size=1, max_size=4, unique_by=lambda I: I.mask))
    I = data.draw(st.sampled_from(ideals))
    f = data.draw(st.integers(0, R.size - 1))
    F = IdealFamily(R, fam)
    try:
        g = davis_witness(f, I, F)
    except HypothesisFails:
        return
    assert g in I
    assert all(R.add(f, g) not in K for K in F)
    assert all(any(R.add(f, h) in K for K in F) for h in I.elements if h < g)

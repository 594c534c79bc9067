from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeavoid.corpus import counterexample_ring, finite_rings
from primeavoid.errors import AxiomViolation, ImproperIdeal, RingMismatch, SizeCap, ZeroHit
from primeavoid.ring import (
    arithmetic_rank,
    boolean,
    build_ring,
    classify_ideal,
    crt_decompose,
    enumerate_ideals,
    from_tables,
    ideal_arith,
    ideal_from_generators,
    localize,
    lookup_ideal,
    multiplicative_closure,
    nilradical,
    principal,
    product,
    quotient,
    radical,
    zmod,
)

SMALL = finite_rings(64)


def elems(I):
    return sorted(I.ring.labels[i] for i in I.elements)


def brute_ideals(R):
    """Oracle: every additive subgroup closed under multiplication, found by closing every subset of size <= 2."""
    out = set()
    for k in range(3):
        for gens in itertools.combinations(range(R.size), k):
            out.add(ideal_from_generators(R, gens).mask)
    return out


# construction

def test_zmod12_labels():
    R = zmod(12)
    assert R.size == 12
    assert R.labels == tuple(str(i) for i in range(12))


def test_boolean_three_atoms_is_f2_cubed():
    B = boolean(3)
    assert B.size == 8
    assert all(B.mul(a, a) == a for a in range(8))
    assert all(B.add(a, a) == B.zero for a in range(8))


def test_product_size():
    assert product(zmod(4), zmod(9)).size == 36


def test_bad_tables_rejected():
    R = zmod(4)
    add = R.add_table.copy()
    mul = R.mul_table.copy()
    mul[2, 3] = mul[3, 2] = 1
    with pytest.raises(AxiomViolation):
        from_tables("bad", add, mul, 0, 1, R.labels)


def test_zero_ring_rejected():
    with pytest.raises(AxiomViolation):
        from_tables("zero", [[0]], [[0]], 0, 0, ["0"])


def test_size_cap():
    with pytest.raises(SizeCap):
        build_ring({"kind": "product", "factors": [{"kind": "zmod", "n": 64}, {"kind": "zmod", "n": 128}]})


# ideals

def test_generators_examples():
    R = zmod(12)
    assert elems(ideal_from_generators(R, [6])) == ["0", "6"]
    assert elems(ideal_from_generators(R, [])) == ["0"]
    assert ideal_from_generators(R, [2, 3]).mask == R.full_mask


def test_enumerate_z12():
    assert [I.label for I in enumerate_ideals(zmod(12))] == ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]


def test_enumerate_field_and_square():
    assert len(enumerate_ideals(zmod(5))) == 2
    assert len(enumerate_ideals(counterexample_ring())) == 6


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_enumeration_matches_closure_oracle(R):
    if R.size > 32:
        pytest.skip("oracle is quadratic in the ring size")
    assert {I.mask for I in enumerate_ideals(R)} == brute_ideals(R)


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_ideal_invariants(R):
    for I in enumerate_ideals(R):
        members = np.array(I.elements)
        assert R.zero in I.elements
        assert set(R.add_table[np.ix_(members, members)].ravel()) <= set(I.elements)
        assert set(R.mul_table[:, members].ravel()) <= set(I.elements)
        if I.generators:
            assert ideal_from_generators(R, I.generators).mask == I.mask
        if I.is_maximal:
            assert I.is_prime
        if I.is_prime:
            assert I.is_radical


def test_arith_examples():
    R = zmod(12)
    two, three = principal(R, 2), principal(R, 3)
    assert ideal_arith("intersection", two, three).label == "(6)"
    assert ideal_arith("product", two, three).label == "(6)"
    assert ideal_arith("sum", two, R.zero_ideal) == two
    assert ideal_arith("colon", principal(R, 6), two).label == "(3)"


def test_arith_ring_mismatch():
    with pytest.raises(RingMismatch):
        ideal_arith("sum", zmod(4).unit_ideal, zmod(6).unit_ideal)


def test_radical_examples():
    R = zmod(12)
    assert radical(R.zero_ideal).label == "(6)"
    S = counterexample_ring()
    m = next(I for I in enumerate_ideals(S) if I.is_maximal)
    assert radical(principal(S, "x")) == m


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_radical_is_meet_of_primes(R):
    primes = [P for P in enumerate_ideals(R) if P.is_prime]
    for I in enumerate_ideals(R):
        meet = R.full_mask
        for P in primes:
            if I.mask & ~P.mask == 0:
                meet &= P.mask
        assert radical(I).mask == meet


def test_classify_ideal_examples():
    R = zmod(12)
    f = classify_ideal(principal(R, 2))
    assert f.is_prime and f.is_maximal and f.is_radical
    assert not classify_ideal(principal(R, 4)).is_prime
    assert not classify_ideal(R.unit_ideal).is_prime


def test_nilradical_examples():
    assert elems(nilradical(zmod(12))) == ["0", "6"]
    assert nilradical(zmod(30)).mask == 1
    assert nilradical(boolean(3)).mask == 1


# rings from rings

def test_quotient_examples():
    R = zmod(12)
    Q, _ = quotient(R, principal(R, 6))
    assert Q.size == 6
    assert quotient(R, principal(R, 2))[0].is_field()
    Z, to = quotient(R, R.zero_ideal)
    assert Z.size == 12 and sorted(to.tolist()) == list(range(12))
    with pytest.raises(ImproperIdeal):
        quotient(R, R.unit_ideal)


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_quotient_nilradical_pullback_is_radical(R):
    for I in enumerate_ideals(R):
        if not I.is_proper:
            continue
        Q, to = quotient(R, I)
        nil = nilradical(Q)
        pulled = sum(1 << r for r in range(R.size) if nil.mask >> int(to[r]) & 1)
        assert pulled == radical(I).mask


def test_localize_examples():
    R = zmod(12)
    L, _ = localize(R, [1])
    assert L.size == 12
    with pytest.raises(ZeroHit):
        localize(R, [6])
    L3, _ = localize(R, [3])
    assert L3.construction["idempotent"] == 9 and L3.size == 4


@pytest.mark.parametrize("R", [R for R in SMALL if R.size <= 16], ids=lambda R: R.name)
def test_iterated_localization(R):
    for s, t in itertools.combinations_with_replacement(range(R.size), 2):
        if multiplicative_closure(R, [s, t]) >> R.zero & 1:
            continue
        L1, to1 = localize(R, [s])
        try:
            L2, _ = localize(L1, [int(to1[t])])
        except ZeroHit:
            continue
        L12, _ = localize(R, [s, t])
        assert L2.size == L12.size


def test_crt_examples():
    assert sorted(F.size for F, _ in crt_decompose(zmod(12))) == [3, 4]
    assert [F.size for F, _ in crt_decompose(zmod(7))] == [7]
    Z12 = zmod(12)
    R6, _ = quotient(Z12, nilradical(Z12))
    factors = crt_decompose(R6)
    assert sorted(F.size for F, _ in factors) == [2, 3]
    assert all(F.is_field() for F, _ in factors)


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_crt_is_isomorphism(R):
    factors = crt_decompose(R)
    images = np.stack([m for _, m in factors], axis=1)
    assert len({tuple(row) for row in images.tolist()}) == R.size
    assert int(np.prod([F.size for F, _ in factors])) == R.size
    for F, m in factors:
        assert np.array_equal(m[R.add_table], F.add_table[m[:, None], m[None, :]])
        assert np.array_equal(m[R.mul_table], F.mul_table[m[:, None], m[None, :]])


def test_arithmetic_rank_examples():
    R = zmod(12)
    assert arithmetic_rank(principal(R, 6)) == 0
    assert arithmetic_rank(principal(R, 2)) == 1


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_arithmetic_rank_at_most_one(R):
    assert all(arithmetic_rank(I) <= 1 for I in enumerate_ideals(R))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 80))
def test_zmod_ideals_are_divisors(n):
    R = zmod(n)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    assert len(enumerate_ideals(R)) == len(divisors)
    primes = [P for P in enumerate_ideals(R) if P.is_prime]
    assert len(primes) == len({d for d in divisors if d > 1 and all(d % k for k in range(2, d))})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_ideal_lattice_laws(R, data):
    ideals = enumerate_ideals(R)
    I = data.draw(st.sampled_from(ideals))
    J = data.draw(st.sampled_from(ideals))
    meet = ideal_arith("intersection", I, J)
    assert meet.mask == I.mask & J.mask
    assert ideal_arith("product", I, J) <= meet
    assert ideal_arith("sum", I, J) == ideal_arith("sum", J, I)
    assert I <= ideal_arith("sum", I, J)
    colon = ideal_arith("colon", I, J)
    assert ideal_arith("product", colon, J) <= I
    assert lookup_ideal(R, meet.mask) == meet

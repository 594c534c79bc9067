from __future__ import annotations

import itertools

import pytest

from primeavoid.certificates import (
    DescribedRing,
    DVRIntersectionTriviality,
    MemberContainment,
    NonGoldmanWitness,
    NotSemilocal,
    PrimeNotPrincipalRadical,
    UnionContainmentFailure,
    check_certificate,
    check_item,
    corpus,
    plane_and_line,
    local_node,
    one_dim_pz_check,
    run_check,
    semilocal_refutation,
)
from primeavoid.errors import DescriptionInconsistent, MalformedPayload
from primeavoid.poly import PolyIdeal, PolyRing, radical_membership
from primeavoid.spectrum import bare_poset, is_noetherian


def F2(names="x, y"):
    return PolyRing(2, names)


def test_schema_c_example():
    v = check_certificate(NonGoldmanWitness(((6, 5),)))
    assert v.valid and "N=6" in v.summary
    bad = check_certificate(NonGoldmanWitness(((10, 5),)))
    assert not bad.valid and "int_divides" in bad.failure
    assert not check_certificate(NonGoldmanWitness(((6, 9),))).valid


def test_schema_d_example():
    v = check_certificate(DVRIntersectionTriviality(3, ((2, 1),)))
    assert v.valid
    assert not check_certificate(DVRIntersectionTriviality(3, ((1, 3),))).valid
    with pytest.raises(MalformedPayload):
        check_certificate(DVRIntersectionTriviality(3, ((-1, 1),)))


def test_schema_f_example():
    v = check_certificate(PrimeNotPrincipalRadical(F2(), ("x", "y"), ("x", "y")))
    assert v.valid and "exact" in v.summary
    assert not check_certificate(PrimeNotPrincipalRadical(F2(), ("x",), ("x", "y"))).valid
    with pytest.raises(MalformedPayload):
        check_certificate(PrimeNotPrincipalRadical(F2(), ("x", "y"), ("x", "x")))


def test_schema_f_with_quotient():
    D = plane_and_line()
    good = PrimeNotPrincipalRadical(D.ring, ("y", "z"), ("y", "z"), D.modulus, ("x",))
    assert check_certificate(good).valid
    # the modulus must die when x is killed
    bad = PrimeNotPrincipalRadical(D.ring, ("y", "z"), ("y", "z"), ("y*z",), ("x",))
    assert not check_certificate(bad).valid


def test_schemas_a_b():
    R = F2()
    a = UnionContainmentFailure(R, ("x", "y"), (("x",), ("y",)), "x + y")
    assert check_certificate(a).valid
    assert not check_certificate(UnionContainmentFailure(R, ("x", "y"), (("x",), ("y",)), "x")).valid
    b = MemberContainment(R, ("x*y",), (("y",), ("x",)), 1)
    assert check_certificate(b).valid
    with pytest.raises(MalformedPayload):
        check_certificate(MemberContainment(R, ("x",), (("x",),), 3))


def test_schema_e_semilocal():
    kx = DescribedRing("k[x]", PolyRing(2, ["x"]), (), (("0",),), dimension=1)
    v = check_certificate(semilocal_refutation(kx, "x", 16))
    assert v.valid and "N=16" in v.summary
    dup = NotSemilocal(kx, (("x",), ("x",)))
    assert not check_certificate(dup).valid
    # a non-maximal ideal passes only as trusted-by-description, and improper ideals fail
    trusted = check_certificate(NotSemilocal(kx, (("x^2",),)))
    assert any(c.kind == "trusted" for c in trusted.transcript)
    assert not check_certificate(NotSemilocal(kx, (("x", "x+1"),))).valid


def test_plane_and_line_maximal_ideals():
    D = plane_and_line()
    cert = semilocal_refutation(D, "y", 8)
    assert cert.max_ideals[0] == ("x", "z", "y")
    assert check_certificate(cert).valid


def test_one_dim_examples():
    rep = one_dim_pz_check(local_node())
    assert rep.conditions == {1: True, 2: True, 3: True} and rep.pz
    assert rep.witnesses == {"(x, y)": "1", "(x)": "y^2", "(y)": "x^2"}
    bad = DescribedRing("bad", F2(), ("x*y",), (("x",),), (("x", "y"),), dimension=1)
    with pytest.raises(DescriptionInconsistent):
        one_dim_pz_check(bad)
    D = plane_and_line()
    neither = one_dim_pz_check(D, semilocal_refutation(D, "y", 8))
    assert neither.conditions[1] is False and not neither.pz


def test_one_dim_preconditions():
    with pytest.raises(DescriptionInconsistent):
        one_dim_pz_check(plane_and_line())
    node = local_node()
    node.dimension = 2
    with pytest.raises(DescriptionInconsistent):
        one_dim_pz_check(node)


def test_one_dim_min_must_be_antichain():
    D = DescribedRing("nested", F2(), ("x",), (("x",), ("x", "y")), (("x", "y"),), dimension=1)
    with pytest.raises(DescriptionInconsistent):
        one_dim_pz_check(D)


def test_one_dim_several_branches():
    R = F2()
    three = DescribedRing("three lines", R, ("x*y*(x+y)",), (("x",), ("y",), ("x+y",)), (("x", "y"),), dimension=1)
    rep = one_dim_pz_check(three)
    assert rep.pz and set(rep.witnesses) == {"(x, y)", "(x)", "(y)", "(x+y)"}
    # two closed points on the pair of lines
    pair = DescribedRing("line pair", R, ("x*y",), (("x",), ("y",)), (("x", "y"), ("x", "y+1")), dimension=1)
    rep = one_dim_pz_check(pair)
    assert rep.pz and rep.max_count == 2


def test_corpus_all_expected():
    results = [check_item(item) for item in corpus()]
    assert len(results) == 6
    assert all(r.ok for r in results), [(r.name, r.observed) for r in results]


def test_transcripts_replay():
    for item in corpus():
        r = check_item(item)
        if "verdicts" in r.detail:
            for v in r.detail["verdicts"]:
                for c in v["transcript"]:
                    assert run_check(c["kind"], c["args"]) == c["result"]
        else:
            for c in r.detail["transcript"]:
                assert run_check(c["kind"], c["args"]) == c["result"]


def test_characteristic_independence():
    for p in (2, 3, 5):
        for item in corpus(bound=8, p=p):
            assert check_item(item).ok, (p, item.name)


def _polys_up_to_degree_3():
    R = F2()
    monomials = [R.parse(m) for m in ["x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]]
    for n in (1, 2):
        for combo in itertools.combinations(monomials, n):
            yield sum(combo[1:], combo[0])


def test_schema_f_soundness_small_degree():
    R = F2()
    x, y = R.gens
    P = PolyIdeal(R, ["x", "y"])
    for f in _polys_up_to_degree_3():
        I = PolyIdeal(R, [f])
        if not (I <= P):
            continue
        assert not (radical_membership(x, I) and radical_membership(y, I)), str(f)


def test_one_dim_agrees_with_bare_poset():
    D = local_node()
    labels = ["(x)", "(y)", "(x,y)"]
    P = bare_poset(labels, [("(x)", "(x,y)"), ("(y)", "(x,y)")])
    # a finite poset is Noetherian in both topologies, so both properties hold
    assert is_noetherian(P, "zariski").noetherian and is_noetherian(P, "flat").noetherian
    assert one_dim_pz_check(D).pz

"""Bounded, machine-checkable certificates for claims about infinite rings.

A certificate never proves a universal statement about an infinite ring; it
checks finitely many exact facts (Groebner-basis membership, integer
arithmetic, irreducibility by trial division) and reports the bound N it
reached. Every check lands in a transcript whose entries replay on their own.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DescriptionInconsistent, MalformedPayload, ParseError
from .poly import (
    PolyIdeal,
    PolyRing,
    intersect,
    irreducible_univariates,
    is_irreducible_coeffs,
    is_prime_int,
    membership,
    radical_membership,
    univariate_coeffs,
)

SCHEMA_VERSION = 1
DEFAULT_SEMILOCAL_BOUND = 16

Gens = tuple  # tuple of polynomial strings


# transcript checks

def _ring(args) -> PolyRing:
    return PolyRing(int(args["p"]), tuple(args["vars"]))


def _ideal(ring: PolyRing, gens) -> PolyIdeal:
    return PolyIdeal(ring, list(gens))


def _maximal_shape(ring: PolyRing, gens) -> bool:
    """Generators are all variables but one, plus one irreducible univariate in the remaining one."""
    polys = [ring.parse(g) for g in gens]
    var_gens = set()
    others = []
    for f in polys:
        names = [v for v in ring.vars if f == ring.gen(v)]
        if names:
            var_gens.add(names[0])
        else:
            others.append(f)
    rest = [v for v in ring.vars if v not in var_gens]
    if len(rest) != 1 or len(others) != 1:
        return False
    coeffs = univariate_coeffs(others[0], rest[0])
    if coeffs is None or coeffs[-1] != 1:
        return False
    return is_irreducible_coeffs(coeffs, ring.p)


def _variable_generated(ring: PolyRing, gens) -> bool:
    basis = _ideal(ring, gens).basis
    return all(any(g == ring.gen(v) for v in ring.vars) for g in basis)


def run_check(kind: str, args: dict) -> bool:
    """Evaluate one transcript entry from its arguments alone."""
    if kind == "int_prime":
        return is_prime_int(int(args["n"]))
    if kind == "int_divides":
        return int(args["n"]) % int(args["d"]) == 0
    if kind == "int_nonzero":
        return int(args["n"]) != 0
    if kind == "trusted":
        return True
    ring = _ring(args)
    if kind == "member":
        return membership(ring.parse(args["f"]), _ideal(ring, args["ideal"]))
    if kind == "radical_member":
        return radical_membership(ring.parse(args["f"]), _ideal(ring, args["ideal"]))
    if kind == "proper":
        return not _ideal(ring, args["ideal"]).is_unit()
    if kind == "contains":
        return _ideal(ring, args["small"]) <= _ideal(ring, args["big"])
    if kind == "ideals_equal":
        return _ideal(ring, args["a"]) == _ideal(ring, args["b"])
    if kind == "is_variable":
        return ring.parse(args["f"]) in [ring.gen(v) for v in ring.vars]
    if kind == "irreducible":
        coeffs = univariate_coeffs(ring.parse(args["f"]), args["var"])
        return coeffs is not None and is_irreducible_coeffs(coeffs, ring.p)
    if kind == "maximal_shape":
        return _maximal_shape(ring, args["ideal"])
    if kind == "variable_generated":
        return _variable_generated(ring, args["ideal"])
    if kind == "intersection":
        got = intersect(_ideal(ring, args["a"]), _ideal(ring, args["b"]))
        return got == _ideal(ring, args["result"])
    raise MalformedPayload(f"unknown check kind {kind!r}")


@dataclass(frozen=True)
class Check:
    kind: str
    args: dict
    result: bool
    required: bool | None = True
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.required is None or self.result == self.required

    def replay(self) -> bool:
        return run_check(self.kind, self.args) == self.result

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "args": self.args,
            "result": self.result,
            "required": self.required,
            "note": self.note,
        }


class Transcript:
    def __init__(self):
        self.checks: list[Check] = []

    def run(self, kind: str, args: dict, required: bool | None = True, note: str = "") -> bool:
        result = run_check(kind, args)
        self.checks.append(Check(kind, args, result, required, note))
        return result

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)


def _ctx(ring: PolyRing) -> dict:
    return {"p": ring.p, "vars": list(ring.vars)}


def _gens(ideal) -> list[str]:
    if isinstance(ideal, PolyIdeal):
        return [str(g) for g in ideal.generators]
    return [str(g) for g in ideal]


# described rings

@dataclass
class DescribedRing:
    """F_p[vars]/modulus with a declared spectrum skeleton.

    The flags are trusted by description; everything checkable (containments,
    the nilradical as intersection of minimal primes) is verified. When only
    the primes inside the listed maximal ideals are listed, the described ring
    stands for the corresponding semilocalization.
    """

    name: str
    ring: PolyRing
    modulus: Gens
    min_primes: tuple[Gens, ...]
    max_ideals: tuple[Gens, ...] | None = None
    reduced: bool = True
    dimension: int | None = None
    spectrum_exhaustive: bool = True

    def ideal(self, gens) -> PolyIdeal:
        return PolyIdeal(self.ring, list(gens))


def _intersection_of(ring: PolyRing, ideals: Sequence[Gens], transcript: Transcript | None = None) -> list[str]:
    """Generators of the intersection (empty family: the unit ideal), recording each step."""
    if not ideals:
        return ["1"]
    acc = list(ideals[0])
    for nxt in ideals[1:]:
        res = _gens(intersect(PolyIdeal(ring, acc), PolyIdeal(ring, list(nxt))).basis)
        if transcript is not None:
            transcript.run("intersection", {**_ctx(ring), "a": acc, "b": list(nxt), "result": res})
        acc = res
    return acc


def consistency_checks(D: DescribedRing, transcript: Transcript) -> None:
    """Verify every checkable consequence of the description; raise DescriptionInconsistent otherwise."""
    ctx = _ctx(D.ring)
    mod = list(D.modulus)
    for P in D.min_primes:
        if not transcript.run("contains", {**ctx, "small": mod, "big": list(P)}, note="min prime contains modulus"):
            raise DescriptionInconsistent(f"minimal prime {P} does not contain the modulus")
        if not transcript.run("proper", {**ctx, "ideal": list(P)}):
            raise DescriptionInconsistent(f"minimal prime {P} is the unit ideal")
        if all(D.ring.parse(g) in D.ring.gens for g in P):
            transcript.run("variable_generated", {**ctx, "ideal": list(P)}, note="prime: generated by variables")
        else:
            transcript.run("trusted", {**ctx, "what": f"{list(P)} prime"}, note="trusted by description")
    for P, Q in itertools.permutations(D.min_primes, 2):
        if transcript.run("contains", {**ctx, "small": list(P), "big": list(Q)}, required=False,
                          note="minimal primes are pairwise incomparable"):
            raise DescriptionInconsistent(f"listed minimal prime {list(Q)} contains {list(P)}")
    for M in D.max_ideals or ():
        if not transcript.run("contains", {**ctx, "small": mod, "big": list(M)}, note="max ideal contains modulus"):
            raise DescriptionInconsistent(f"maximal ideal {M} does not contain the modulus")
        if not any(PolyIdeal(D.ring, list(P)) <= PolyIdeal(D.ring, list(M)) for P in D.min_primes):
            raise DescriptionInconsistent(f"maximal ideal {M} contains no listed minimal prime")
    nil = _intersection_of(D.ring, D.min_primes, transcript)
    if not transcript.run("contains", {**ctx, "small": mod, "big": nil}, note="modulus inside meet of Min"):
        raise DescriptionInconsistent("modulus is not contained in the intersection of the minimal primes")
    for g in nil:
        if not transcript.run("radical_member", {**ctx, "f": g, "ideal": mod}, note="meet of Min inside nilradical"):
            raise DescriptionInconsistent(
                f"intersection of the listed minimal primes is not the nilradical ({g} is not nilpotent)"
            )


# certificate schemas

@dataclass
class Verdict:
    schema: str
    valid: bool
    claim: str
    bound: int | None
    transcript: list[Check]
    failure: str | None = None

    @property
    def summary(self) -> str:
        status = "Valid" if self.valid else f"Invalid ({self.failure})"
        scope = f"bound N={self.bound}" if self.bound is not None else "exact"
        return f"{status}: {self.claim} [{scope}]"

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "schema": self.schema,
            "valid": self.valid,
            "claim": self.claim,
            "bound": self.bound,
            "summary": self.summary,
            "failure": self.failure,
            "transcript": [c.to_json() for c in self.transcript],
        }


@dataclass
class UnionContainmentFailure:
    """f lies in I but in no member of the finite family."""

    ring: PolyRing
    ideal: Gens
    family: tuple[Gens, ...]
    witness: str
    claim: str = "ideal not contained in the union of the family"
    schema = "a"

    def run(self, t: Transcript) -> int | None:
        ctx = _ctx(self.ring)
        t.run("member", {**ctx, "f": self.witness, "ideal": list(self.ideal)})
        for member in self.family:
            t.run("member", {**ctx, "f": self.witness, "ideal": list(member)}, required=False)
        return None


@dataclass
class MemberContainment:
    ring: PolyRing
    ideal: Gens
    family: tuple[Gens, ...]
    index: int
    claim: str = "ideal contained in a member of the family"
    schema = "b"

    def run(self, t: Transcript) -> int | None:
        if not 0 <= self.index < len(self.family):
            raise MalformedPayload("member index out of range")
        t.run("contains", {**_ctx(self.ring), "small": list(self.ideal), "big": list(self.family[self.index])})
        return None


@dataclass
class NonGoldmanWitness:
    """For each nonzero integer f a prime q not dividing it: f is outside the meet of the nonzero primes of Z."""

    pairs: tuple[tuple[int, int], ...]
    claim: str = "Z is not a Goldman domain: the nonzero primes meet in 0, so infinite prime absorbance fails"
    schema = "c"

    def run(self, t: Transcript) -> int | None:
        for f, q in self.pairs:
            t.run("int_nonzero", {"n": f})
            t.run("int_prime", {"n": q})
            t.run("int_divides", {"d": q, "n": f}, required=False)
        return max((abs(f) for f, _ in self.pairs), default=0)


@dataclass
class DVRIntersectionTriviality:
    """Each nonzero f = p^v * u with p not dividing u lies outside (p^(v+1)), so the powers of p meet in 0."""

    p: int
    elements: tuple[tuple[int, int], ...]
    claim: str = "in the DVR Z_(p) the powers of the uniformizer intersect to 0"
    schema = "d"

    def run(self, t: Transcript) -> int | None:
        t.run("int_prime", {"n": self.p})
        for v, u in self.elements:
            if v < 0:
                raise MalformedPayload("valuation must be non-negative")
            f = self.p ** v * u
            t.run("int_divides", {"d": self.p, "n": u}, required=False, note="unit part")
            t.run("int_divides", {"d": self.p ** v, "n": f})
            t.run("int_divides", {"d": self.p ** (v + 1), "n": f}, required=False)
        return len(self.elements)


@dataclass
class NotSemilocal:
    """N pairwise distinct maximal ideals of a described ring: Max is not finite up to bound N."""

    described: DescribedRing
    max_ideals: tuple[Gens, ...]
    claim: str = "not semilocal, hence not P.Z."
    schema = "e"

    def run(self, t: Transcript) -> int | None:
        D = self.described
        ctx = _ctx(D.ring)
        for M in self.max_ideals:
            M = list(M)
            t.run("proper", {**ctx, "ideal": M})
            t.run("contains", {**ctx, "small": list(D.modulus), "big": M}, note="contains modulus")
            P = next((P for P in D.min_primes if D.ideal(P) <= D.ideal(M)), None)
            if P is None:
                t.run("contains", {**ctx, "small": list(D.min_primes[0]), "big": M}, note="contains a minimal prime")
            else:
                t.run("contains", {**ctx, "small": list(P), "big": M}, note="contains a minimal prime")
            if _maximal_shape(D.ring, M):
                t.run("maximal_shape", {**ctx, "ideal": M}, note="quotient is F_p[v]/(irreducible)")
            else:
                t.run("trusted", {**ctx, "what": f"{M} maximal"}, note="maximality trusted by description")
        for A, B in itertools.combinations(self.max_ideals, 2):
            t.run("ideals_equal", {**ctx, "a": list(A), "b": list(B)}, required=False)
        return len(self.max_ideals)


@dataclass
class PrimeNotPrincipalRadical:
    """A prime of a polynomial ring containing two distinct variables is not the radical of a principal ideal.

    With ``modulus`` and ``killed`` set, the ring is F_p[vars]/modulus and the
    argument runs in its quotient by the killed variables, which is again a
    polynomial ring; the C.P. property passes to quotients.
    """

    ring: PolyRing
    prime: Gens
    variables: tuple[str, str]
    modulus: Gens = ()
    killed: tuple[str, ...] = ()
    claim: str = "not C.P.: some prime is not the radical of a principal ideal"
    schema = "f"

    def run(self, t: Transcript) -> int | None:
        ctx = _ctx(self.ring)
        xi, xj = self.variables
        if xi == xj or xi in self.killed or xj in self.killed:
            raise MalformedPayload("need two distinct surviving variables")
        for v in self.killed:
            t.run("is_variable", {**ctx, "f": v})
        if self.modulus:
            t.run("contains", {**ctx, "small": list(self.modulus), "big": list(self.killed)},
                  note="ring surjects onto the polynomial ring in the surviving variables")
        used = set()
        for g in self.prime:
            used |= self.ring.parse(g).variables_used()
        if used & set(self.killed):
            raise MalformedPayload("prime must live in the surviving variables")
        t.run("proper", {**ctx, "ideal": list(self.prime)})
        if _variable_generated(self.ring, self.prime):
            t.run("variable_generated", {**ctx, "ideal": list(self.prime)}, note="prime: generated by variables")
        else:
            t.run("trusted", {**ctx, "what": f"{list(self.prime)} prime"}, note="primality trusted")
        t.run("member", {**ctx, "f": xi, "ideal": list(self.prime)})
        t.run("member", {**ctx, "f": xj, "ideal": list(self.prime)})
        return None


SCHEMAS = {
    "a": UnionContainmentFailure,
    "b": MemberContainment,
    "c": NonGoldmanWitness,
    "d": DVRIntersectionTriviality,
    "e": NotSemilocal,
    "f": PrimeNotPrincipalRadical,
}


def check_certificate(c) -> Verdict:
    """Valid iff every check passes; Invalid names the first failing check."""
    t = Transcript()
    try:
        bound = c.run(t)
    except ParseError as exc:
        raise MalformedPayload(str(exc)) from exc
    bad = t.first_failure
    failure = None
    if bad is not None:
        failure = f"{bad.kind} {bad.args} gave {bad.result}, required {bad.required}"
    return Verdict(c.schema, bad is None, c.claim, bound, t.checks, failure)


# one-dimensional P.Z. criterion

@dataclass
class OneDimReport:
    ring: str
    conditions: dict
    pz: bool
    max_count: int | None
    witnesses: dict = field(default_factory=dict)
    transcript: list[Check] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "ring": self.ring,
            "conditions": {str(k): v for k, v in self.conditions.items()},
            "pz": self.pz,
            "max_count": self.max_count,
            "witnesses": self.witnesses,
            "transcript": [c.to_json() for c in self.transcript],
        }


def _element_outside(ring: PolyRing, gens: Sequence[str], avoid: Sequence[str]) -> str | None:
    """Scan the reduced basis of (gens), then pairwise sums, for an element outside (avoid)."""
    if list(gens) == ["1"]:
        cands = [ring.one]
    else:
        basis = PolyIdeal(ring, list(gens)).basis
        cands = list(basis) + [a + b for a, b in itertools.combinations(basis, 2)]
    A = PolyIdeal(ring, list(avoid))
    for c in cands:
        if not membership(c, A):
            return str(c)
    return None


def one_dim_pz_check(D: DescribedRing, refutation: NotSemilocal | None = None) -> OneDimReport:
    """Decide P.Z. for a described 1-dimensional ring by the semilocal/Min/Max criterion.

    (1) finitely many maximal ideals; (2) for each minimal prime p the other
    minimal primes meet outside the nilradical; (3) for each maximal m,
    m + (meet of the minimal primes not inside m) is the unit ideal.
    ``refutation`` replaces the Max list by a NotSemilocal certificate.
    """
    t = Transcript()
    ctx = _ctx(D.ring)
    if refutation is None:
        if D.max_ideals is None:
            raise DescriptionInconsistent("no Max list and no semilocality refutation")
        if D.dimension != 1:
            raise DescriptionInconsistent(f"declared dimension {D.dimension}, criterion needs 1")
    consistency_checks(D, t)
    conditions: dict = {}
    nil = _intersection_of(D.ring, D.min_primes)
    if refutation is not None:
        verdict = check_certificate(refutation)
        t.checks.extend(verdict.transcript)
        if not verdict.valid:
            raise DescriptionInconsistent(f"semilocality refutation is invalid: {verdict.failure}")
        conditions[1] = False
        max_count = None
    else:
        conditions[1] = True
        max_count = len(D.max_ideals)

    cond2 = True
    for k, P in enumerate(D.min_primes):
        others = [Q for j, Q in enumerate(D.min_primes) if j != k]
        meet = _intersection_of(D.ring, others, t)
        same = t.run("contains", {**ctx, "small": meet, "big": nil}, required=None,
                     note=f"meet of Min without {list(P)} inside nilradical?")
        cond2 &= not same
    conditions[2] = cond2

    witnesses = {}
    if refutation is not None:
        conditions[3] = None
    else:
        cond3 = True
        for M in D.max_ideals:
            inside = [P for P in D.min_primes if D.ideal(P) <= D.ideal(M)]
            outside = [P for P in D.min_primes if P not in inside]
            meet = _intersection_of(D.ring, outside, t)
            ok = t.run("member", {**ctx, "f": "1", "ideal": list(M) + meet}, required=None,
                       note=f"{list(M)} + meet of Min outside it is the unit ideal?")
            cond3 &= ok
        conditions[3] = cond3

    pz = all(v is True for v in conditions.values())
    if pz:
        witnesses = _pz_witnesses(D, t)
    return OneDimReport(D.name, conditions, pz, max_count, witnesses, t.checks)


def _pz_witnesses(D: DescribedRing, t: Transcript) -> dict:
    """The elements h with Lambda(q) = D(h) over the described spectrum, one per listed prime."""
    ring = D.ring
    out = {}
    points = list(D.min_primes) + [M for M in D.max_ideals if M not in D.min_primes]
    for M in D.max_ideals:
        outside = [P for P in D.min_primes if not D.ideal(P) <= D.ideal(M)]
        f = _element_outside(ring, _intersection_of(ring, outside), M)
        g = _element_outside(ring, _intersection_of(ring, [N for N in D.max_ideals if N != M]), M)
        h = str(ring.parse(f) * ring.parse(g))
        out["(" + ", ".join(M) + ")"] = h
        _verify_witness(D, t, h, [Q for Q in points if D.ideal(Q) <= D.ideal(M)], points)
    for P in D.min_primes:
        if P in D.max_ideals:
            continue
        others = [Q for Q in D.min_primes if Q != P]
        x = _element_outside(ring, _intersection_of(ring, others), P)
        above = [M for M in D.max_ideals if D.ideal(P) <= D.ideal(M)]
        y = _element_outside(ring, _intersection_of(ring, above), P)
        h = str(ring.parse(x) * ring.parse(y))
        out["(" + ", ".join(P) + ")"] = h
        _verify_witness(D, t, h, [P], points)
    return out


def _verify_witness(D: DescribedRing, t: Transcript, h: str, lam: list, points: list) -> None:
    ctx = _ctx(D.ring)
    for Q in points:
        t.run("member", {**ctx, "f": h, "ideal": list(Q)}, required=Q not in lam,
              note="witness h avoids exactly the primes of Lambda")


# bundled corpus

@dataclass
class CorpusItem:
    name: str
    claim: str
    payload: object
    expected: str


@dataclass
class ItemResult:
    name: str
    expected: str
    observed: str
    detail: dict

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def _smallest_prime_not_dividing(f: int) -> int:
    q = 2
    while f % q == 0 or not is_prime_int(q):
        q += 1
    return q


def semilocal_refutation(D: DescribedRing, var: str, n: int = DEFAULT_SEMILOCAL_BOUND) -> NotSemilocal:
    """n maximal ideals (all other variables, q(var)) for the first n monic irreducibles q."""
    ring = D.ring
    others = [v for v in ring.vars if v != var]
    irreducibles = irreducible_univariates(ring.p, var, n, ring=ring)
    maxes = tuple(tuple(others + [str(q)]) for q in irreducibles)
    return NotSemilocal(D, maxes)


def plane_and_line(p: int = 2) -> DescribedRing:
    """The plane x = 0 glued to the line y = z = 0: two components, of dimensions 2 and 1."""
    ring = PolyRing(p, ["x", "y", "z"])
    return DescribedRing(
        name=f"F_{p}[x,y,z]/(xy,xz)",
        ring=ring,
        modulus=("x*y", "x*z"),
        min_primes=(("x",), ("y", "z")),
        dimension=2,
    )


def local_node(p: int = 2) -> DescribedRing:
    """Two lines crossing at the origin, localized there."""
    ring = PolyRing(p, ["x", "y"])
    return DescribedRing(
        name=f"F_{p}[x,y]/(xy) localized at (x,y)",
        ring=ring,
        modulus=("x*y",),
        min_primes=(("x",), ("y",)),
        max_ideals=(("x", "y"),),
        dimension=1,
    )


def corpus(bound: int = DEFAULT_SEMILOCAL_BOUND, p: int = 2) -> list[CorpusItem]:
    pairs = tuple((f, _smallest_prime_not_dividing(f)) for f in range(1, bound + 1))
    pairs += tuple((-f, q) for f, q in pairs)
    kx = DescribedRing(f"F_{p}[x]", PolyRing(p, ["x"]), (), (("0",),), dimension=1)
    kxy = PolyRing(p, ["x", "y"])
    pl = plane_and_line(p)
    return [
        CorpusItem("Z", "infinite prime absorbance fails in Z", NonGoldmanWitness(pairs), "valid"),
        CorpusItem(
            "DVR Z_(3)",
            "the powers of the uniformizer meet in 0 (radical hypothesis is necessary)",
            DVRIntersectionTriviality(3, tuple((v, u) for v in range(bound) for u in (1, 2))),
            "valid",
        ),
        CorpusItem("k[x]", "k[x] is not P.Z.: Max(k[x]) is infinite", semilocal_refutation(kx, "x", bound), "valid"),
        CorpusItem(
            "k[x,y]",
            "k[x,y] is not C.P.",
            PrimeNotPrincipalRadical(kxy, ("x", "y"), ("x", "y")),
            "valid",
        ),
        CorpusItem(
            "k[x,y,z]/(xy,xz)",
            "neither C.P. nor P.Z.",
            [
                PrimeNotPrincipalRadical(pl.ring, ("y", "z"), ("y", "z"), pl.modulus, ("x",)),
                semilocal_refutation(pl, "y", bound),
            ],
            "valid",
        ),
        CorpusItem(
            "k[x,y]/(xy) local",
            "1-dimensional reduced local ring whose minimal primes meet properly: P.Z.",
            local_node(p),
            "pz",
        ),
    ]


def check_item(item: CorpusItem) -> ItemResult:
    payload = item.payload
    if isinstance(payload, DescribedRing):
        rep = one_dim_pz_check(payload)
        return ItemResult(item.name, item.expected, "pz" if rep.pz else "not-pz", rep.to_json())
    certs = payload if isinstance(payload, list) else [payload]
    verdicts = [check_certificate(c) for c in certs]
    observed = "valid" if all(v.valid for v in verdicts) else "invalid"
    return ItemResult(item.name, item.expected, observed, {"verdicts": [v.to_json() for v in verdicts]})

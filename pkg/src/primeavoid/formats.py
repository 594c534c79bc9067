"""Flat ``key = value`` text files for rings, families, certificates and posets.

Lines are ``key = value``; ``#`` starts a comment; blank lines are ignored.
Keys may repeat where a list of records is expected (``member``, ``min``,
``max``, ``pair`` ...). Lists inside a value are comma separated, ignoring
commas nested in parentheses. The grammar is documented in docs/formats.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .avoidance import IdealFamily
from .certificates import (
    DescribedRing,
    DVRIntersectionTriviality,
    MemberContainment,
    NonGoldmanWitness,
    NotSemilocal,
    PrimeNotPrincipalRadical,
    UnionContainmentFailure,
    semilocal_refutation,
)
from .errors import AlgebraError, ParseError
from .poly import PolyRing
from .ring import BUILD_CAP, FinRing, build_ring, ideal_from_generators
from .spectrum import SpectrumPoset, bare_poset

RING_KINDS = ("zmod", "product", "boolean", "table", "polyquot", "gf", "described")


class Record:
    """Ordered key/value pairs with repeated keys; tracks which keys were read."""

    def __init__(self, pairs: list[tuple[str, str]], source: str = "<text>"):
        self.pairs = pairs
        self.source = source
        self.used: set[str] = set()

    def has(self, key: str) -> bool:
        return any(k == key for k, _ in self.pairs)

    def all(self, key: str) -> list[str]:
        self.used.add(key)
        return [v for k, v in self.pairs if k == key]

    def get(self, key: str, default=None):
        values = self.all(key)
        if not values:
            if default is None:
                raise ParseError(f"{self.source}: missing key {key!r}")
            return default
        if len(values) > 1:
            raise ParseError(f"{self.source}: key {key!r} given {len(values)} times")
        return values[0]

    def integer(self, key: str, default=None) -> int:
        value = self.get(key, None if default is None else str(default))
        try:
            return int(value)
        except ValueError as exc:
            raise ParseError(f"{self.source}: {key} must be an integer, got {value!r}") from exc

    def keys_with_prefix(self, prefix: str) -> list[str]:
        return sorted({k for k, _ in self.pairs if k.startswith(prefix)})

    def check_unused(self) -> None:
        extra = sorted({k for k, _ in self.pairs} - self.used)
        if extra:
            raise ParseError(f"{self.source}: unknown keys {extra}")


def parse_record(text: str, source: str = "<text>") -> Record:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError(f"{source}:{lineno}: empty key")
        pairs.append((key, value))
    return Record(pairs, source)


def read_record(path) -> Record:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_record(text, str(path))


def split_list(value: str) -> list[str]:
    """Comma-separated items, keeping commas nested in parentheses."""
    out, depth, cur = [], 0, []
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {value!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {value!r}")
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    if any(not item for item in out):
        raise ParseError(f"empty item in list {value!r}")
    return out


# rings

def _factor_desc(token: str) -> dict:
    kind, _, arg = token.partition(":")
    kind = kind.strip()
    if kind == "zmod":
        return {"kind": "zmod", "n": int(arg)}
    if kind == "gf":
        return {"kind": "gf", "q": int(arg)}
    if kind == "boolean":
        return {"kind": "boolean", "ground": int(arg)}
    raise ParseError(f"unknown product factor {token!r} (use zmod:n, gf:q or boolean:k)")


def ring_description(rec: Record) -> dict:
    """A build_ring description from a finite ring record."""
    kind = rec.get("kind")
    desc: dict = {"kind": kind}
    if rec.has("name"):
        desc["name"] = rec.get("name")
    try:
        if kind == "zmod":
            desc["n"] = rec.integer("n")
        elif kind == "product":
            desc["factors"] = [_factor_desc(t) for t in split_list(rec.get("factors"))]
        elif kind == "boolean":
            desc["ground"] = rec.integer("atoms")
        elif kind == "gf":
            desc["q"] = rec.integer("q")
        elif kind == "polyquot":
            desc["p"] = rec.integer("p")
            desc["vars"] = split_list(rec.get("vars"))
            desc["relations"] = split_list(rec.get("relations"))
        elif kind == "table":
            labels = split_list(rec.get("labels"))
            pos = {s: i for i, s in enumerate(labels)}

            def rows(op):
                table = []
                for s in labels:
                    cells = rec.get(f"{op}.{s}").split()
                    if len(cells) != len(labels):
                        raise ParseError(f"{rec.source}: row {op}.{s} has {len(cells)} entries")
                    table.append([pos[c] for c in cells])
                return table

            desc.update(
                labels=labels,
                add=rows("add"),
                mul=rows("mul"),
                zero=pos[rec.get("zero", labels[0])],
                one=pos[rec.get("one", labels[1] if len(labels) > 1 else labels[0])],
            )
        else:
            raise ParseError(f"{rec.source}: unknown ring kind {kind!r}")
    except (KeyError, ValueError) as exc:
        raise ParseError(f"{rec.source}: {exc}") from exc
    return desc


def described_ring(rec: Record) -> DescribedRing:
    ring = PolyRing(rec.integer("p"), split_list(rec.get("vars")))
    modulus = rec.get("modulus", "0")
    max_ideals = rec.all("max")
    dim = rec.get("dimension", "none")
    return DescribedRing(
        name=rec.get("name", f"described over F_{ring.p}"),
        ring=ring,
        modulus=tuple(g for g in split_list(modulus) if g != "0"),
        min_primes=tuple(tuple(split_list(m)) for m in rec.all("min")),
        max_ideals=tuple(tuple(split_list(m)) for m in max_ideals) if max_ideals else None,
        dimension=None if dim == "none" else int(dim),
    )


def load_ring(rec: Record, cap: int = BUILD_CAP) -> FinRing | DescribedRing:
    """A FinRing, or a DescribedRing for ``kind = described``; unknown keys are rejected."""
    if rec.get("kind") == "described":
        out = described_ring(rec)
        rec.all("kind")
        rec.all("refute")
        rec.all("count")
    else:
        desc = ring_description(rec)
        try:
            out = build_ring(desc, cap)
        except AlgebraError:
            raise
        except (ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"{rec.source}: {exc}") from exc
    rec.check_unused()
    return out


def refutation_from(rec: Record, D: DescribedRing) -> NotSemilocal | None:
    if not rec.has("refute"):
        return None
    return semilocal_refutation(D, rec.get("refute"), rec.integer("count", 16))


# families

@dataclass
class FamilyFile:
    ring: FinRing
    family: IdealFamily
    f: str | None = None
    ideal: str | None = None


def load_family(rec: Record, cap: int = BUILD_CAP) -> FamilyFile:
    """A ring record plus ``member = gens`` lines; optional ``f`` and ``ideal`` for a Davis run."""
    members = rec.all("member")
    f = rec.get("f", "") or None
    ideal = rec.get("ideal", "") or None
    R = load_ring(rec, cap)
    if not isinstance(R, FinRing):
        raise ParseError(f"{rec.source}: families need a finite ring")
    try:
        ideals = [ideal_from_generators(R, split_list(m)) for m in members]
        F = IdealFamily(R, ideals)
    except (ValueError, KeyError) as exc:
        raise ParseError(f"{rec.source}: {exc}") from exc
    return FamilyFile(R, F, f, ideal)


# certificates

def _poly_context(rec: Record) -> PolyRing:
    try:
        return PolyRing(rec.integer("p"), split_list(rec.get("vars")))
    except ValueError as exc:
        raise ParseError(f"{rec.source}: {exc}") from exc


def load_certificate(rec: Record):
    """A certificate object, or a DescribedRing (schema ``one-dim``) with optional refutation."""
    schema = rec.get("schema")
    claim = rec.get("claim", "")
    if schema == "a":
        c = UnionContainmentFailure(
            _poly_context(rec),
            tuple(split_list(rec.get("ideal"))),
            tuple(tuple(split_list(m)) for m in rec.all("member")),
            rec.get("witness"),
        )
    elif schema == "b":
        c = MemberContainment(
            _poly_context(rec),
            tuple(split_list(rec.get("ideal"))),
            tuple(tuple(split_list(m)) for m in rec.all("member")),
            rec.integer("index"),
        )
    elif schema == "c":
        pairs = []
        for item in rec.all("pair"):
            a, b = (int(s) for s in split_list(item))
            pairs.append((a, b))
        c = NonGoldmanWitness(tuple(pairs))
    elif schema == "d":
        elems = []
        for item in rec.all("element"):
            v, u = (int(s) for s in split_list(item))
            elems.append((v, u))
        c = DVRIntersectionTriviality(rec.integer("p"), tuple(elems))
    elif schema == "e":
        D = described_ring(rec)
        if rec.has("refute"):
            c = semilocal_refutation(D, rec.get("refute"), rec.integer("count", 16))
        else:
            c = NotSemilocal(D, tuple(tuple(split_list(m)) for m in rec.all("maxideal")))
    elif schema == "f":
        killed = rec.get("killed", "")
        modulus = rec.get("modulus", "")
        c = PrimeNotPrincipalRadical(
            _poly_context(rec),
            tuple(split_list(rec.get("prime"))),
            tuple(split_list(rec.get("variables"))),
            tuple(split_list(modulus)) if modulus else (),
            tuple(split_list(killed)) if killed else (),
        )
    elif schema == "one-dim":
        c = described_ring(rec)
        rec.all("refute")
        rec.all("count")
    else:
        raise ParseError(f"{rec.source}: unknown certificate schema {schema!r}")
    if claim and not isinstance(c, DescribedRing):
        c.claim = claim
    rec.check_unused()
    return c


# posets

def load_poset(rec: Record) -> SpectrumPoset:
    """``points = a, b, c`` and repeated ``le = a, b`` lines meaning a is below b."""
    points = split_list(rec.get("points"))
    relations = []
    for item in rec.all("le"):
        pair = split_list(item)
        if len(pair) != 2 or not set(pair) <= set(points):
            raise ParseError(f"{rec.source}: bad relation {item!r}")
        relations.append(tuple(pair))
    rec.check_unused()
    try:
        return bare_poset(points, relations)
    except ValueError as exc:
        raise ParseError(f"{rec.source}: {exc}") from exc


def dump_poset(P: SpectrumPoset) -> str:
    lines = ["points = " + ", ".join(P.labels)]
    for i, a in enumerate(P.labels):
        for j, b in enumerate(P.labels):
            if i != j and P.leq[i, j]:
                lines.append(f"le = {a}, {b}")
    return "\n".join(lines) + "\n"

"""Finite commutative rings as explicit operation tables, and their ideals.

Every element is an index into the ring's ``add`` and ``mul`` tables. Ideals
are stored as Python integer bitmasks over those indices, so containment,
intersection and union are single integer operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    ImproperIdeal,
    RingMismatch,
    SizeCap,
    ZeroHit,
)

BUILD_CAP = 4096
ENUM_CAP = 256
EXHAUSTIVE_AXIOM_LIMIT = 512
SAMPLED_TRIPLES = 100_000


def mask_from_bool(arr: np.ndarray) -> int:
    packed = np.packbits(np.asarray(arr, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bool_from_mask(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def indices_from_mask(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class FinRing:
    """A finite commutative ring with identity, given by its tables.

    Construction verifies the ring axioms: exhaustively for rings of at most
    ``EXHAUSTIVE_AXIOM_LIMIT`` elements, on random triples otherwise.
    """

    def __init__(
        self,
        name: str,
        add_table,
        mul_table,
        zero: int,
        one: int,
        labels: Sequence[str],
        construction: Mapping | None = None,
        *,
        seed: int = 0,
    ):
        add = np.ascontiguousarray(add_table, dtype=np.int32)
        mul = np.ascontiguousarray(mul_table, dtype=np.int32)
        n = add.shape[0]
        if n < 1 or add.shape != (n, n) or mul.shape != (n, n):
            raise AxiomViolation("tables must be square and of equal size")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise AxiomViolation("table entry out of range")
        labels = [str(s) for s in labels]
        if len(labels) != n:
            raise AxiomViolation("need exactly one label per element")
        if len(set(labels)) != n:
            raise AxiomViolation("element labels must be pairwise distinct")
        if not (0 <= zero < n and 0 <= one < n):
            raise AxiomViolation("zero/one out of range")
        if zero == one:
            raise AxiomViolation("zero equals one (the zero ring is excluded)")
        add.setflags(write=False)
        mul.setflags(write=False)
        self.name = name
        self.add_table = add
        self.mul_table = mul
        self.zero = int(zero)
        self.one = int(one)
        self.labels = tuple(labels)
        self.construction = dict(construction or {"kind": "table"})
        self._index = {s: i for i, s in enumerate(labels)}
        self._verify_axioms(seed)

    def __repr__(self):
        return f"FinRing({self.name!r}, size={self.size})"

    @property
    def size(self) -> int:
        return self.add_table.shape[0]

    def _verify_axioms(self, seed: int) -> None:
        n = self.size
        add, mul = self.add_table, self.mul_table
        ar = np.arange(n)
        if not np.array_equal(add, add.T):
            raise AxiomViolation("addition is not commutative")
        if not np.array_equal(mul, mul.T):
            raise AxiomViolation("multiplication is not commutative")
        if not np.array_equal(add[self.zero], ar):
            raise AxiomViolation("zero is not an additive identity")
        if not np.array_equal(mul[self.one], ar):
            raise AxiomViolation("one is not a multiplicative identity")
        if not (add == self.zero).any(axis=1).all():
            raise AxiomViolation("some element has no additive inverse")
        if n <= EXHAUSTIVE_AXIOM_LIMIT:
            for a in range(n):
                if not np.array_equal(add[add[a]], add[a][add]):
                    raise AxiomViolation(f"addition not associative at a={self.labels[a]}")
                if not np.array_equal(mul[mul[a]], mul[a][mul]):
                    raise AxiomViolation(f"multiplication not associative at a={self.labels[a]}")
                lhs = mul[a][add]
                rhs = add[mul[a][:, None], mul[a][None, :]]
                if not np.array_equal(lhs, rhs):
                    raise AxiomViolation(f"distributivity fails at a={self.labels[a]}")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
            if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
                raise AxiomViolation("addition not associative (sampled)")
            if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
                raise AxiomViolation("multiplication not associative (sampled)")
            if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
                raise AxiomViolation("distributivity fails (sampled)")

    # element level

    def element(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.size:
                raise KeyError(label)
            return int(label)
        return self._index[str(label).strip()]

    def label(self, i: int) -> str:
        return self.labels[i]

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.argmax(self.add_table == self.zero, axis=1).astype(np.int32)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def power(self, a: int, k: int) -> int:
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def high_powers(self) -> np.ndarray:
        """r**|R| for every element r, computed by vectorised repeated squaring."""
        result = np.full(self.size, self.one, dtype=np.int32)
        base = np.arange(self.size, dtype=np.int32)
        k = self.size
        while k:
            if k & 1:
                result = self.mul_table[result, base]
            base = self.mul_table[base, base]
            k >>= 1
        return result

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def principal_masks(self) -> tuple[int, ...]:
        """Mask of the principal ideal (a) = Ra for every a."""
        return tuple(mask_from_indices(np.unique(row)) for row in self.mul_table)

    @cached_property
    def units(self) -> int:
        return mask_from_bool((self.mul_table == self.one).any(axis=1))

    def is_field(self) -> bool:
        return self.units == self.full_mask & ~(1 << self.zero)

    # ideals

    def ideal(self, mask: int, generators: Sequence[int] | None = None) -> "FinIdeal":
        return FinIdeal(self, mask, tuple(generators) if generators is not None else None)

    @cached_property
    def zero_ideal(self) -> "FinIdeal":
        return self.ideal(1 << self.zero, ())

    @cached_property
    def unit_ideal(self) -> "FinIdeal":
        return self.ideal(self.full_mask, (self.one,))

    def ideals(self, cap: int = ENUM_CAP) -> list["FinIdeal"]:
        return enumerate_ideals(self, cap)

    def primes(self, cap: int = ENUM_CAP) -> list["FinIdeal"]:
        return [I for I in enumerate_ideals(self, cap) if I.is_prime]

    def maximal_ideals(self, cap: int = ENUM_CAP) -> list["FinIdeal"]:
        return [I for I in enumerate_ideals(self, cap) if I.is_maximal]

    def radical_ideals(self, cap: int = ENUM_CAP) -> list["FinIdeal"]:
        return [I for I in enumerate_ideals(self, cap) if I.is_radical]


@dataclass(frozen=True, eq=False)
class FinIdeal:
    """An ideal of a FinRing as an explicit element set."""

    ring: FinRing
    mask: int
    generators: tuple[int, ...] | None = None

    def __eq__(self, other):
        if not isinstance(other, FinIdeal):
            return NotImplemented
        return self.ring is other.ring and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.ring), self.mask))

    def __repr__(self):
        return f"FinIdeal({self.ring.name}: {self.label})"

    def __contains__(self, x) -> bool:
        return bool(self.mask >> self.ring.element(x) & 1)

    def __le__(self, other: "FinIdeal") -> bool:
        _same_ring(self, other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "FinIdeal") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(indices_from_mask(self.mask))

    @cached_property
    def index_array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int32)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_proper(self) -> bool:
        return not self.mask >> self.ring.one & 1

    @property
    def sort_key(self):
        return (self.size, self.elements)

    @cached_property
    def is_prime(self) -> bool:
        if not self.is_proper:
            return False
        outside = ~bool_from_mask(self.mask, self.ring.size)
        prods = self.ring.mul_table[np.ix_(outside, outside)]
        inside = bool_from_mask(self.mask, self.ring.size)
        return not inside[prods].any()

    @cached_property
    def is_maximal(self) -> bool:
        if not self.is_proper:
            return False
        R = self.ring
        for a in range(R.size):
            if self.mask >> a & 1:
                continue
            if ideal_sum_masks(R, self.mask, R.principal_masks[a]) != R.full_mask:
                return False
        return True

    @cached_property
    def is_radical(self) -> bool:
        return radical(self).mask == self.mask

    @property
    def label(self) -> str:
        return ideal_label(self)


@dataclass(frozen=True)
class IdealFlags:
    is_prime: bool
    is_maximal: bool
    is_radical: bool


def _same_ring(I: FinIdeal, J: FinIdeal) -> None:
    if I.ring is not J.ring:
        raise RingMismatch(f"{I.ring.name} vs {J.ring.name}")


# construction

def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise SizeCap(f"ring of size {size} exceeds cap {cap}")


def zmod(n: int, *, name: str | None = None) -> FinRing:
    if n < 2:
        raise AxiomViolation("Z/n needs n >= 2")
    ar = np.arange(n)
    return FinRing(
        name or f"Z/{n}",
        np.add.outer(ar, ar) % n,
        np.multiply.outer(ar, ar) % n,
        0,
        1 % n,
        [str(i) for i in range(n)],
        {"kind": "zmod", "n": n},
    )


def product(*rings: FinRing, name: str | None = None, cap: int = BUILD_CAP) -> FinRing:
    """Componentwise product; element index is mixed-radix with the first factor most significant."""
    if not rings:
        raise ValueError("product of no rings")
    sizes = [R.size for R in rings]
    total = int(np.prod(sizes))
    _check_cap(total, cap)
    coords = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64)
    weights = np.array([int(np.prod(sizes[i + 1:])) for i in range(len(sizes))], dtype=np.int64)

    def table(which):
        out = np.zeros((total, total), dtype=np.int64)
        for k, R in enumerate(rings):
            t = getattr(R, which)
            out += t[coords[:, k][:, None], coords[:, k][None, :]] * weights[k]
        return out

    labels = ["(" + ",".join(R.labels[c] for R, c in zip(rings, row)) + ")" for row in coords]
    zero = int(sum(R.zero * w for R, w in zip(rings, weights)))
    one = int(sum(R.one * w for R, w in zip(rings, weights)))
    return FinRing(
        name or " x ".join(R.name for R in rings),
        table("add_table"),
        table("mul_table"),
        zero,
        one,
        labels,
        {"kind": "product", "factors": [R.name for R in rings]},
    )


def boolean(ground: int | Sequence[str], *, name: str | None = None, cap: int = BUILD_CAP) -> FinRing:
    """Power-set ring of a finite set: symmetric difference and intersection."""
    points = [str(i) for i in range(ground)] if isinstance(ground, int) else [str(g) for g in ground]
    k = len(points)
    if k < 1:
        raise AxiomViolation("boolean ring on the empty set is the zero ring")
    n = 1 << k
    _check_cap(n, cap)
    ar = np.arange(n)
    labels = ["{" + ",".join(p for j, p in enumerate(points) if s >> j & 1) + "}" for s in range(n)]
    return FinRing(
        name or f"P({{{','.join(points)}}})",
        np.bitwise_xor.outer(ar, ar),
        np.bitwise_and.outer(ar, ar),
        0,
        n - 1,
        labels,
        {"kind": "boolean", "ground": points},
    )


def from_tables(name, add_table, mul_table, zero, one, labels) -> FinRing:
    def idx(x):
        return labels.index(x) if isinstance(x, str) else int(x)

    return FinRing(name, add_table, mul_table, idx(zero), idx(one), labels, {"kind": "table"})


def build_ring(desc: Mapping, cap: int = BUILD_CAP) -> FinRing:
    """Build a ring from a description record with a ``kind`` key.

    Kinds: ``zmod`` (n), ``product`` (factors: list of descriptions),
    ``boolean`` (ground: int or labels), ``table`` (add, mul, zero, one,
    labels), ``polyquot`` (p, vars, relations), ``gf`` (q).
    """
    kind = desc.get("kind")
    name = desc.get("name")
    if kind == "zmod":
        R = zmod(int(desc["n"]), name=name)
    elif kind == "product":
        factors = [build_ring(f, cap) for f in desc["factors"]]
        R = product(*factors, name=name, cap=cap)
    elif kind == "boolean":
        R = boolean(desc["ground"], name=name, cap=cap)
    elif kind == "table":
        R = from_tables(name or "table", desc["add"], desc["mul"], desc["zero"], desc["one"], list(desc["labels"]))
    elif kind == "polyquot":
        from .poly import PolyRing, quotient_ring

        P = PolyRing(int(desc["p"]), desc["vars"])
        R = quotient_ring(P, [P.parse(r) for r in desc["relations"]], name=name, cap=cap)
    elif kind == "gf":
        from .poly import galois_field

        R = galois_field(int(desc["q"]), name=name, cap=cap)
    else:
        raise ValueError(f"unknown ring kind {kind!r}")
    _check_cap(R.size, cap)
    return R


# ideals

def ideal_sum_masks(R: FinRing, a: int, b: int) -> int:
    ia = np.array(indices_from_mask(a), dtype=np.int32)
    ib = np.array(indices_from_mask(b), dtype=np.int32)
    sums = R.add_table[np.ix_(ia, ib)]
    return mask_from_bool(np.bincount(sums.ravel(), minlength=R.size) > 0)


def ideal_from_generators(R: FinRing, gens: Iterable) -> FinIdeal:
    """Smallest ideal containing ``gens``, by closure iteration to a fixpoint."""
    gens = tuple(R.element(g) for g in gens)
    current = np.zeros(R.size, dtype=bool)
    current[R.zero] = True
    current[list(gens)] = True
    while True:
        members = np.flatnonzero(current)
        nxt = current.copy()
        nxt[R.mul_table[:, members].ravel()] = True
        nxt[R.add_table[np.ix_(members, members)].ravel()] = True
        if np.array_equal(nxt, current):
            break
        current = nxt
    return R.ideal(mask_from_bool(current), gens)


def enumerate_ideals(R: FinRing, cap: int = ENUM_CAP) -> list[FinIdeal]:
    """Every ideal exactly once, sorted by cardinality then element list.

    Breadth-first closure: start at (0) and repeatedly add a principal ideal
    not already contained, deduplicating by bitmask. Every ideal of a finite
    ring is a finite sum of principal ideals, so this reaches all of them.
    """
    if R.size > cap:
        raise SizeCap(f"{R.name} has {R.size} elements, enumeration cap is {cap}")
    cache = R.__dict__.setdefault("_ideal_cache", None)
    if cache is not None:
        return cache
    reps: dict[int, int] = {}
    for a, m in enumerate(R.principal_masks):
        reps.setdefault(m, a)
    principal = sorted(reps.items(), key=lambda kv: kv[1])
    found: dict[int, tuple[int, ...]] = {1 << R.zero: ()}
    queue = [1 << R.zero]
    while queue:
        nxt = []
        for m in queue:
            gens = found[m]
            for pm, a in principal:
                if pm & ~m == 0:
                    continue
                s = ideal_sum_masks(R, m, pm)
                if s not in found:
                    found[s] = gens + (a,)
                    nxt.append(s)
        queue = nxt
    ideals = [R.ideal(m, g) for m, g in found.items()]
    ideals.sort(key=lambda I: I.sort_key)
    for I in ideals:
        I.is_prime, I.is_maximal, I.is_radical
    R.__dict__["_ideal_cache"] = ideals
    return ideals


def lookup_ideal(R: FinRing, mask: int, cap: int = ENUM_CAP) -> FinIdeal:
    """Return the canonical enumerated ideal with this mask (carries generators and cached flags)."""
    for I in enumerate_ideals(R, cap):
        if I.mask == mask:
            return I
    raise ValueError("mask is not an ideal")


def ideal_arith(op: str, I: FinIdeal, J: FinIdeal) -> FinIdeal:
    _same_ring(I, J)
    R = I.ring
    if op == "sum":
        return R.ideal(ideal_sum_masks(R, I.mask, J.mask))
    if op == "intersection":
        return R.ideal(I.mask & J.mask)
    if op == "product":
        prods = np.unique(R.mul_table[np.ix_(I.index_array, J.index_array)])
        m = 1 << R.zero
        for x in prods:
            m = ideal_sum_masks(R, m, R.principal_masks[x])
        return R.ideal(m)
    if op == "colon":
        inside = bool_from_mask(I.mask, R.size)
        ok = inside[R.mul_table[:, J.index_array]].all(axis=1)
        return R.ideal(mask_from_bool(ok))
    raise ValueError(f"unknown ideal operation {op!r}")


def radical(I: FinIdeal) -> FinIdeal:
    """{r : r**k in I for some 1 <= k <= |R|}.

    If some power of r lies in I then r**|R| does, since |R| bounds the
    length of the pre-periodic part of r's power sequence.
    """
    R = I.ring
    inside = bool_from_mask(I.mask, R.size)
    return R.ideal(mask_from_bool(inside[R.high_powers]))


def classify_ideal(I: FinIdeal) -> IdealFlags:
    return IdealFlags(I.is_prime, I.is_maximal, I.is_radical)


def nilradical(R: FinRing) -> FinIdeal:
    return radical(R.zero_ideal)


def principal(R: FinRing, a) -> FinIdeal:
    a = R.element(a)
    return R.ideal(R.principal_masks[a], (a,))


def quotient(R: FinRing, I: FinIdeal, *, name: str | None = None):
    """R/I with its canonical surjection, as ``(ring, map)``; map[r] is the coset index of r."""
    if I.ring is not R:
        raise RingMismatch("ideal belongs to another ring")
    if not I.is_proper:
        raise ImproperIdeal("cannot form R/(1)")
    reps = R.add_table[:, I.index_array].min(axis=1)
    uniq = np.unique(reps)
    pos = np.full(R.size, -1, dtype=np.int32)
    pos[uniq] = np.arange(len(uniq), dtype=np.int32)
    to_coset = pos[reps]
    add = to_coset[R.add_table[np.ix_(uniq, uniq)]]
    mul = to_coset[R.mul_table[np.ix_(uniq, uniq)]]
    Q = FinRing(
        name or f"{R.name}/{I.label}",
        add,
        mul,
        int(to_coset[R.zero]),
        int(to_coset[R.one]),
        [R.labels[u] for u in uniq],
        {"kind": "quotient", "parent": R.name, "ideal": I.label, "representatives": [int(u) for u in uniq]},
    )
    return Q, to_coset


def idempotent_power(R: FinRing, s: int) -> int:
    """The unique idempotent in the cyclic semigroup generated by s."""
    p = s
    for _ in range(R.size + 1):
        if R.mul(p, p) == p:
            return p
        p = R.mul(p, s)
    raise AssertionError("no idempotent power found")


def multiplicative_closure(R: FinRing, gens: Iterable) -> int:
    gens = [R.element(g) for g in gens]
    current = {R.one, *gens}
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = R.mul(a, g)
                if c not in current:
                    current.add(c)
                    new.append(c)
        frontier = new
    return mask_from_indices(current)


def localize(R: FinRing, S: Iterable, *, name: str | None = None):
    """S^-1 R realised as the direct factor eR, returning ``(ring, map)``.

    ``e`` is the idempotent power of the product of the elements of S; the
    map sends r to the index of e*r in the new ring, whose identity is e.
    Raises ZeroHit if the multiplicative closure of S contains zero.
    """
    S = [R.element(s) for s in S]
    s_star = R.one
    for s in S:
        s_star = R.mul(s_star, s)
    e = idempotent_power(R, s_star)
    if e == R.zero:
        raise ZeroHit(f"0 lies in the multiplicative closure of {[R.labels[s] for s in S]}")
    image = np.unique(R.mul_table[e])
    pos = np.full(R.size, -1, dtype=np.int32)
    pos[image] = np.arange(len(image), dtype=np.int32)
    L = FinRing(
        name or f"{R.name}[S^-1]",
        pos[R.add_table[np.ix_(image, image)]],
        pos[R.mul_table[np.ix_(image, image)]],
        int(pos[R.zero]),
        int(pos[e]),
        [R.labels[i] for i in image],
        {"kind": "localization", "parent": R.name, "idempotent": e, "ambient": [int(i) for i in image]},
    )
    return L, pos[R.mul_table[e]]


def complement(R: FinRing, mask: int) -> list[int]:
    return [a for a in range(R.size) if not mask >> a & 1]


def crt_decompose(R: FinRing, cap: int = ENUM_CAP):
    """Local factors R_m = e_m R, one per maximal ideal, as ``[(ring, map), ...]``."""
    factors = []
    for m in R.maximal_ideals(cap):
        L, f = localize(R, complement(R, m.mask), name=f"{R.name}_{m.label}")
        factors.append((L, f))
    return factors


def arithmetic_rank(I: FinIdeal, cap: int = ENUM_CAP) -> int:
    """Least n such that some n elements generate an ideal with the same radical as I."""
    R = I.ring
    if R.size > cap:
        raise SizeCap(f"{R.name} exceeds cap {cap}")
    target = radical(I).mask
    zero_rad = radical(R.zero_ideal).mask
    if target == zero_rad:
        return 0
    high = R.high_powers

    def rad(mask):
        return mask_from_bool(bool_from_mask(mask, R.size)[high])

    reps: dict[int, int] = {}
    for a, m in enumerate(R.principal_masks):
        reps.setdefault(m, a)
    candidates = [m for m in reps if m & ~target == 0]
    for n in range(1, len(candidates) + 1):
        for combo in itertools.combinations(candidates, n):
            m = combo[0]
            for c in combo[1:]:
                m = ideal_sum_masks(R, m, c)
            if rad(m) == target:
                return n
    raise AssertionError("unreachable: the whole ring is a finite sum of principal ideals")


def ideal_label(I: FinIdeal) -> str:
    """Name an ideal by a minimal generating set, e.g. ``(x,y)``."""
    R = I.ring
    if I.mask == 1 << R.zero:
        return "(0)"
    if not I.is_proper:
        return "(1)"
    reps: dict[int, int] = {}
    for a in I.elements:
        m = R.principal_masks[a]
        reps.setdefault(m, a)
    cands = sorted(reps.items(), key=lambda kv: kv[1])
    for n in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, n):
            m = combo[0][0]
            for pm, _ in combo[1:]:
                m = ideal_sum_masks(R, m, pm)
            if m == I.mask:
                return "(" + ",".join(R.labels[a] for _, a in combo) + ")"
    raise AssertionError("ideal is not generated by its own elements")

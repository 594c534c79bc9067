"""Multivariate polynomials over prime fields and Buchberger Groebner bases.

Polynomial syntax is ASCII arithmetic over the declared variables, e.g.
``x^2*y + 3*z``; ``^`` and ``**`` both mean exponentiation, integer
constants are reduced mod p, parentheses are allowed.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, ContextMismatch, ParseError, SizeCap

MAX_CHAR = 1 << 16
ORDERS = ("lex", "grevlex", "elim")

Exp = tuple  # exponent vector


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """Context F_p[vars] with a monomial order.

    ``elim`` is a block order: the first ``nelim`` variables are compared by
    their total degree first, ties broken by grevlex on everything. It
    eliminates those variables.
    """

    def __init__(self, p: int, variables: Sequence[str] | str, order: str = "grevlex", nelim: int = 0):
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        variables = tuple(variables)
        if not is_prime_int(p) or p > MAX_CHAR:
            raise ValueError(f"characteristic must be a prime <= {MAX_CHAR}, got {p}")
        if len(set(variables)) != len(variables) or not all(v.isidentifier() for v in variables):
            raise ValueError(f"bad variable list {variables}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.vars = variables
        self.order = order
        self.nelim = nelim
        if order == "lex":
            self.key = tuple
        elif order == "grevlex":
            self.key = _grevlex_key
        else:
            k = nelim
            self.key = lambda e: (sum(e[:k]), _grevlex_key(e))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and (self.p, self.vars, self.order, self.nelim) == (other.p, other.vars, other.order, other.nelim)
        )

    def __hash__(self):
        return hash((self.p, self.vars, self.order, self.nelim))

    def __repr__(self):
        return f"PolyRing(F_{self.p}[{','.join(self.vars)}], {self.order})"

    def poly(self, terms: dict) -> "Poly":
        p = self.p
        return Poly(self, {e: c % p for e, c in terms.items() if c % p})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        return self.poly({(0,) * self.nvars: c})

    def gen(self, name: str) -> "Poly":
        i = self.vars.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    @property
    def gens(self) -> list["Poly"]:
        return [self.gen(v) for v in self.vars]

    def parse(self, text) -> "Poly":
        if isinstance(text, Poly):
            return self.convert(text)
        if isinstance(text, int):
            return self.const(text)
        src = str(text).replace("^", "**").strip()
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse polynomial {text!r}") from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text) -> "Poly":
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ParseError(f"exponent must be a literal integer in {text!r}")
                return left ** node.right.value
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = self._eval(node.operand, text)
            return -val if isinstance(node.op, ast.USub) else val
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            return self.const(node.value)
        elif isinstance(node, ast.Name) and node.id in self.vars:
            return self.gen(node.id)
        raise ParseError(f"unsupported syntax in polynomial {text!r}")

    def convert(self, f: "Poly") -> "Poly":
        """Re-home f into this context; variables are matched by name."""
        if f.ring == self:
            return f
        if f.ring.p != self.p:
            raise ContextMismatch("characteristics differ")
        idx = []
        for v in f.ring.vars:
            if v not in self.vars:
                if any(e[f.ring.vars.index(v)] for e in f.terms):
                    raise ContextMismatch(f"variable {v} not in {self}")
                idx.append(None)
            else:
                idx.append(self.vars.index(v))
        terms = {}
        for e, c in f.terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    new[idx[i]] = x
            terms[tuple(new)] = c
        return Poly(self, terms)

    def with_order(self, order: str, nelim: int = 0) -> "PolyRing":
        return PolyRing(self.p, self.vars, order, nelim)

    def fresh_var(self, base: str = "t") -> str:
        name = base
        while name in self.vars:
            name = "_" + name
        return name


class Poly:
    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: (p - c) % p for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.ring.nvars: 1}

    def lead(self):
        """(exponent, coefficient) of the leading term."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=self.ring.key)
            self._lead = (e, self.terms[e])
        return self._lead

    def lm(self) -> Exp:
        return self.lead()[0]

    def lc(self) -> int:
        return self.lead()[1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = pow(self.lc(), -1, self.ring.p)
        p = self.ring.p
        return Poly(self.ring, {e: c * inv % p for e, c in self.terms.items()})

    def scale_shift(self, c: int, shift: Exp) -> "Poly":
        p = self.ring.p
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, shift)): v * c % p for e, v in self.terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables_used(self) -> set[str]:
        return {v for i, v in enumerate(self.ring.vars) if any(e[i] for e in self.terms)}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.ring.key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.ring.vars, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass
class Budget:
    """Hard limits on Groebner work; exceeding either raises BudgetExceeded."""

    max_pairs: int = 10_000
    max_term_ops: int = 100_000
    pairs: int = 0
    term_ops: int = 0

    def tick_pair(self):
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise BudgetExceeded(f"more than {self.max_pairs} S-pair reductions")

    def tick_terms(self, n: int = 1):
        self.term_ops += n
        if self.term_ops > self.max_term_ops:
            raise BudgetExceeded(f"more than {self.max_term_ops} term operations")


def _same_context(f: Poly, G: Iterable[Poly]) -> None:
    for g in G:
        if g.ring != f.ring:
            raise ContextMismatch(f"{f.ring} vs {g.ring}")


def normal_form(f: Poly, G: Sequence[Poly], budget: Budget | None = None) -> Poly:
    """Full reduction of f by G: no term of the result is divisible by any lm(g)."""
    _same_context(f, G)
    budget = budget or Budget(**DEFAULT_LIMITS)
    ring = f.ring
    p = ring.p
    leads = [(g.lm(), g.lc(), g) for g in G if g.terms]
    rest = dict(f.terms)
    remainder: dict = {}
    key = ring.key
    while rest:
        e = max(rest, key=key)
        c = rest[e]
        for le, lc, g in leads:
            if divides(le, e):
                shift = tuple(a - b for a, b in zip(e, le))
                factor = c * pow(lc, -1, p) % p
                budget.tick_terms(len(g.terms))
                for ge, gc in g.terms.items():
                    te = tuple(a + b for a, b in zip(ge, shift))
                    v = (rest.get(te, 0) - factor * gc) % p
                    if v:
                        rest[te] = v
                    else:
                        rest.pop(te, None)
                break
        else:
            remainder[e] = c
            del rest[e]
    return Poly(ring, remainder)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    L = lcm_exp(f.lm(), g.lm())
    p = f.ring.p
    a = f.scale_shift(pow(f.lc(), -1, p), tuple(x - y for x, y in zip(L, f.lm())))
    b = g.scale_shift(pow(g.lc(), -1, p), tuple(x - y for x, y in zip(L, g.lm())))
    return a - b


def reduce_basis(G: list[Poly], budget: Budget | None = None) -> list[Poly]:
    """Minimal, interreduced, monic; sorted by leading monomial ascending."""
    G = [g.monic() for g in G if g.terms]
    minimal = []
    for i, g in enumerate(G):
        dominated = False
        for j, h in enumerate(G):
            if i == j:
                continue
            if divides(h.lm(), g.lm()) and (h.lm() != g.lm() or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others, budget).monic())
    if not reduced:
        return []
    key = reduced[0].ring.key
    return sorted(reduced, key=lambda g: key(g.lm()))


def buchberger(gens: Sequence[Poly], budget: Budget | None = None) -> list[Poly]:
    """Reduced Groebner basis.

    Normal selection strategy (smallest lcm of the pair first, ties by pair
    index), Buchberger's coprime criterion and the chain criterion.
    """
    budget = budget or Budget(**DEFAULT_LIMITS)
    G: list[Poly] = []
    for g in gens:
        g = g.monic()
        if g.terms and g not in G:
            G.append(g)
    if not G:
        return []
    ring = G[0].ring
    _same_context(G[0], G)
    key = ring.key
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(lcm_exp(G[ij[0]].lm(), G[ij[1]].lm())), ij))
        pairs.discard((i, j))
        li, lj = G[i].lm(), G[j].lm()
        L = lcm_exp(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            ik = (min(i, k), max(i, k))
            jk = (min(j, k), max(j, k))
            if divides(G[k].lm(), L) and ik not in pairs and jk not in pairs:
                chain = True
                break
        if chain:
            continue
        budget.tick_pair()
        h = normal_form(s_polynomial(G[i], G[j]), G, budget)
        if h.terms:
            G.append(h.monic())
            n = len(G) - 1
            pairs.update((m, n) for m in range(n))
    return reduce_basis(G, budget)


class PolyIdeal:
    """Ideal of F_p[vars] with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable = (), budget: Budget | None = None):
        self.ring = ring
        self.generators = tuple(ring.parse(g) for g in generators)
        self.budget = budget
        self._basis: list[Poly] | None = None

    @property
    def basis(self) -> list[Poly]:
        if self._basis is None:
            self._basis = buchberger(self.generators, Budget(**_limits(self.budget)))
        return self._basis

    def __repr__(self):
        return f"PolyIdeal({self})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")" if self.generators else "(0)"

    def __contains__(self, f) -> bool:
        return membership(self.ring.parse(f), self)

    def __le__(self, other: "PolyIdeal") -> bool:
        return containment(self, other)

    def __eq__(self, other):
        if not isinstance(other, PolyIdeal):
            return NotImplemented
        _check_ideals(self, other)
        return [g.terms for g in self.basis] == [g.terms for g in other.basis]

    def __hash__(self):
        return hash(tuple(frozenset(g.terms.items()) for g in self.basis))

    def __add__(self, other: "PolyIdeal") -> "PolyIdeal":
        _check_ideals(self, other)
        return PolyIdeal(self.ring, self.generators + other.generators, self.budget)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_one()


DEFAULT_LIMITS: dict = {}


def set_default_budget(max_pairs: int | None = None, max_term_ops: int | None = None) -> None:
    """Process-wide limits for ideals created without an explicit Budget."""
    DEFAULT_LIMITS.clear()
    if max_pairs is not None:
        DEFAULT_LIMITS["max_pairs"] = max_pairs
    if max_term_ops is not None:
        DEFAULT_LIMITS["max_term_ops"] = max_term_ops


def _limits(budget: Budget | None) -> dict:
    if budget is None:
        return dict(DEFAULT_LIMITS)
    return {"max_pairs": budget.max_pairs, "max_term_ops": budget.max_term_ops}


def _check_ideals(I: PolyIdeal, J: PolyIdeal) -> None:
    if I.ring != J.ring:
        raise ContextMismatch(f"{I.ring} vs {J.ring}")


def groebner(I: PolyIdeal) -> list[Poly]:
    return I.basis


def membership(f: Poly, I: PolyIdeal) -> bool:
    if f.ring != I.ring:
        raise ContextMismatch(f"{f.ring} vs {I.ring}")
    return normal_form(f, I.basis, Budget(**_limits(I.budget))).is_zero()


def containment(I: PolyIdeal, J: PolyIdeal) -> bool:
    _check_ideals(I, J)
    return all(membership(g, J) for g in I.generators)


def is_proper(I: PolyIdeal) -> bool:
    return not I.is_unit()


def intersect(I: PolyIdeal, J: PolyIdeal) -> PolyIdeal:
    """I ∩ J by eliminating t from tI + (1-t)J.

    The output's generators are checked to lie in both I and J.
    """
    _check_ideals(I, J)
    ring = I.ring
    t = ring.fresh_var("t")
    big = PolyRing(ring.p, (t,) + ring.vars, "elim", nelim=1)
    tt = big.gen(t)
    gens = [tt * big.convert(f) for f in I.generators]
    gens += [(1 - tt) * big.convert(g) for g in J.generators]
    basis = buchberger(gens, Budget(**_limits(I.budget)))
    kept = [ring.convert(g) for g in basis if g.lm()[0] == 0 and all(e[0] == 0 for e in g.terms)]
    out = PolyIdeal(ring, kept, I.budget)
    for g in out.generators:
        if not (membership(g, I) and membership(g, J)):
            raise AssertionError(f"elimination produced {g} outside I or J")
    return out


def radical_membership(f: Poly, I: PolyIdeal) -> bool:
    """f in sqrt(I) iff 1 in I + (1 - t*f) over F_p[vars, t]."""
    ring = I.ring
    if f.ring != ring:
        raise ContextMismatch(f"{f.ring} vs {ring}")
    if f.is_zero():
        return True
    t = ring.fresh_var("t")
    big = PolyRing(ring.p, ring.vars + (t,), "grevlex")
    gens = [big.convert(g) for g in I.generators] + [1 - big.gen(t) * big.convert(f)]
    basis = buchberger(gens, Budget(**_limits(I.budget)))
    return len(basis) == 1 and basis[0].is_one()


# univariate helpers

def _monic_univariates(p: int, degree: int):
    """All monic polynomials of the given degree as coefficient lists, constant first."""
    for code in range(p ** degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        yield coeffs + [1]


def _univariate_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible_coeffs(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in _monic_univariates(p, d):
            if not _univariate_rem(coeffs, q, p):
                return False
    return True


def univariate_coeffs(f: Poly, var: str) -> list[int] | None:
    """Dense coefficients (constant first) if f involves only ``var``."""
    if f.variables_used() - {var}:
        return None
    i = f.ring.vars.index(var) if var in f.ring.vars else None
    if f.is_zero():
        return []
    if i is None:
        return [f.terms[(0,) * f.ring.nvars]]
    deg = max(e[i] for e in f.terms)
    out = [0] * (deg + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def from_coeffs(ring: PolyRing, var: str, coeffs: Sequence[int]) -> Poly:
    i = ring.vars.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = k
        terms[tuple(e)] = c
    return ring.poly(terms)


def irreducible_univariates(p: int, var: str, count: int, ring: PolyRing | None = None) -> list[Poly]:
    """The first ``count`` monic irreducibles in F_p[var], ascending degree.

    Within a degree the order is by the base-p number formed by the
    coefficients (constant term least significant).
    """
    if p > 31 or count > 64:
        raise ValueError("irreducible_univariates is capped at p <= 31, count <= 64")
    ring = ring or PolyRing(p, [var])
    out = []
    degree = 1
    while len(out) < count:
        for coeffs in _monic_univariates(p, degree):
            if is_irreducible_coeffs(coeffs, p):
                out.append(from_coeffs(ring, var, coeffs))
                if len(out) == count:
                    break
        degree += 1
    return out


def irreducible_of_degree(p: int, degree: int) -> list[int]:
    for coeffs in _monic_univariates(p, degree):
        if is_irreducible_coeffs(coeffs, p):
            return coeffs
    raise AssertionError("every degree has an irreducible")


# finite quotients as table rings

def standard_monomials(basis: Sequence[Poly], nvars: int) -> list[Exp] | None:
    """Monomials outside the leading ideal, or None if there are infinitely many."""
    leads = [g.lm() for g in basis]
    for i in range(nvars):
        if not any(sum(e) == e[i] > 0 for e in leads):
            return None
    if any(sum(e) == 0 for e in leads):
        return []
    seen = {(0,) * nvars}
    frontier = [(0,) * nvars]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(nvars):
                m = tuple(x + (1 if k == i else 0) for k, x in enumerate(e))
                if m in seen or any(divides(le, m) for le in leads):
                    continue
                seen.add(m)
                nxt.append(m)
        frontier = nxt
    return sorted(seen)


def quotient_ring(ring: PolyRing, relations: Sequence, *, name: str | None = None, cap: int = 4096):
    """The finite ring F_p[vars]/(relations) as a FinRing.

    Elements are F_p-combinations of the standard monomials; element index is
    the base-p number of its coefficient vector (first standard monomial least
    significant), so 0 and 1 are indices 0 and 1.
    """
    from .ring import FinRing

    I = PolyIdeal(ring, relations)
    basis = I.basis
    std = standard_monomials(basis, ring.nvars)
    if std is None:
        raise SizeCap("quotient is infinite")
    if not std:
        raise SizeCap("quotient is the zero ring")
    p, m = ring.p, len(std)
    n = p ** m
    if n > cap:
        raise SizeCap(f"quotient has {n} elements, cap is {cap}")
    pos = {e: k for k, e in enumerate(std)}
    const = np.zeros((m, m, m), dtype=np.int64)
    for i, a in enumerate(std):
        for j, b in enumerate(std):
            prod = Poly(ring, {tuple(x + y for x, y in zip(a, b)): 1})
            r = normal_form(prod, basis)
            for e, c in r.terms.items():
                const[i, j, pos[e]] = c
    digits = np.zeros((n, m), dtype=np.int64)
    for k in range(n):
        c = k
        for i in range(m):
            digits[k, i] = c % p
            c //= p
    weights = p ** np.arange(m, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    mul = (np.einsum("ai,bj,ijk->abk", digits, digits, const) % p) @ weights
    labels = [str(Poly(ring, {std[i]: int(d) for i, d in enumerate(row) if d})) for row in digits]
    return FinRing(
        name or f"F_{p}[{','.join(ring.vars)}]/{I}",
        add,
        mul,
        0,
        1,
        labels,
        {"kind": "polyquot", "p": p, "vars": list(ring.vars), "relations": [str(g) for g in I.generators]},
    )


def galois_field(q: int, *, name: str | None = None, cap: int = 4096):
    """F_q for a prime power q, as F_p[a]/(first irreducible of the right degree)."""
    from .ring import zmod

    p = next((d for d in range(2, q + 1) if q % d == 0), None)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    if k == 1:
        R = zmod(p, name=name or f"F_{p}")
        R.construction = {"kind": "gf", "q": q}
        return R
    ring = PolyRing(p, ["a"])
    f = from_coeffs(ring, "a", irreducible_of_degree(p, k))
    R = quotient_ring(ring, [f], name=name or f"F_{q}", cap=cap)
    R.construction = {"kind": "gf", "q": q, "modulus": str(f)}
    return R

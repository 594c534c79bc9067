"""The bundled corpus of finite rings used by the test suites and the CLI."""

from __future__ import annotations

from .ring import FinRing, build_ring

PRODUCTS = [(2, 2), (2, 3), (4, 9), (6, 10), (2, 2, 2), (4, 4), (8, 8), (12, 12), (16, 16), (2, 64)]
TABLE_RINGS = [
    (2, ["x", "y"], ["x^2", "x*y", "y^2"]),
    (3, ["x", "y"], ["x^2", "x*y", "y^2"]),
    (2, ["x"], ["x^3"]),
    (2, ["x", "y"], ["x^2", "y^2"]),
    (2, ["x", "y"], ["x^2+x", "y^2"]),
]
FIELD_ORDERS = [4, 8, 9, 16, 25, 27, 32, 49]


def descriptions() -> list[dict]:
    """Ring descriptions (see build_ring), in a fixed order."""
    out: list[dict] = [{"kind": "zmod", "n": n} for n in range(2, 61)]
    for factors in PRODUCTS:
        out.append({"kind": "product", "factors": [{"kind": "zmod", "n": n} for n in factors]})
    out.append({"kind": "product", "factors": [{"kind": "gf", "q": 4}, {"kind": "zmod", "n": 9}]})
    for atoms in range(1, 5):
        out.append({"kind": "boolean", "ground": atoms})
    for p, variables, rels in TABLE_RINGS:
        out.append({"kind": "polyquot", "p": p, "vars": variables, "relations": rels})
    for q in FIELD_ORDERS:
        out.append({"kind": "gf", "q": q})
    return out


_CACHE: dict[int, list[FinRing]] = {}


def finite_rings(max_size: int | None = None) -> list[FinRing]:
    """Built corpus rings (cached), optionally restricted to at most max_size elements."""
    if 0 not in _CACHE:
        _CACHE[0] = [build_ring(d) for d in descriptions()]
    rings = _CACHE[0]
    if max_size is None:
        return list(rings)
    return [R for R in rings if R.size <= max_size]


def counterexample_ring() -> FinRing:
    """F_2[x,y]/(x,y)^2: the maximal ideal is a union of three proper ideals."""
    return build_ring({"kind": "polyquot", "p": 2, "vars": ["x", "y"], "relations": ["x^2", "x*y", "y^2"]})

"""The paper-family colorings of vertices, edges, and r-sets of N.

Families (CLI spelling in parentheses):

* ``psi`` — vertex coloring: strip all factors of p, reduce mod p.
* ``f``   (``f:n=3``) — edge: blue on equal residues mod n, else min residue.
* ``g``   (``g:p=5``) — edge: red on distinct p-adic valuations, else f
  applied to the p-free parts with modulus p−1.
* ``phi`` (``phi:p=3``) — edge: psi of the endpoint difference.
* ``chi`` (``chi:q=2,m=2``) — edge: q-adic valuation of the difference, mod m.
* ``f3``/``g3``/``h`` — the 3-set analogues; ``gr`` the r-set generalisation.
* ``const`` — one fixed color everywhere, for baseline tests.

All evaluation is pure integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

_TAGS = ("blue", "red", "green", "numeric")


@dataclass(frozen=True)
class Color:
    tag: str
    value: Optional[int] = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown color tag {self.tag!r}")
        if (self.tag == "numeric") != (self.value is not None):
            raise ValueError("numeric colors carry a value, tags do not")

    def __str__(self) -> str:
        return self.tag if self.value is None else str(self.value)


BLUE = Color("blue")
RED = Color("red")
GREEN = Color("green")


def numeric(value: int) -> Color:
    return Color("numeric", int(value))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def valuation(n: int, p: int) -> int:
    """Largest k with p^k | n, for n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined here")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def strip_p(n: int, p: int) -> int:
    """The p-free part of n > 0."""
    while n % p == 0:
        n //= p
    return n


# Families and the parameters each one requires.
_FAMILIES = {
    "psi": ("p",),
    "f": ("n",),
    "g": ("p",),
    "phi": ("p",),
    "chi": ("q", "m"),
    "f3": ("n",),
    "g3": ("p",),
    "h": ("p",),
    "gr": ("p", "r"),
    "const": (),
}


@dataclass(frozen=True)
class ColoringSpec:
    """A named coloring family with its parameters."""

    family: str
    p: Optional[int] = None
    n: Optional[int] = None
    q: Optional[int] = None
    m: Optional[int] = None
    r: Optional[int] = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown coloring family {self.family!r}")
        needed = _FAMILIES[self.family]
        for name in needed:
            if getattr(self, name) is None:
                raise ValueError(f"family {self.family!r} needs parameter {name}")
        if self.p is not None and "p" in needed and not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.q is not None and not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")
        if self.n is not None and self.n < 2:
            raise ValueError("modulus n must be at least 2")
        if self.m is not None and self.m < 1:
            raise ValueError("modulus m must be at least 1")
        if self.family == "gr" and (self.r is None or self.r < 3):
            raise ValueError("family gr needs uniformity r >= 3")

    @property
    def arity(self) -> int:
        """How many points one evaluation consumes (1 = vertex, 2 = edge)."""
        if self.family == "psi":
            return 1
        if self.family in ("f", "g", "phi", "chi"):
            return 2
        if self.family in ("f3", "g3", "h"):
            return 3
        if self.family == "gr":
            return self.r
        return self.r if self.r is not None else 2  # const defaults to edges

    def canonical(self) -> str:
        parts = [f"{k}={getattr(self, k)}" for k in _FAMILIES[self.family]]
        if self.family == "const" and self.r is not None:
            parts.append(f"r={self.r}")
        return self.family if not parts else self.family + ":" + ",".join(parts)

    def __str__(self) -> str:
        return self.canonical()


def parse_coloring(text: str) -> ColoringSpec:
    """Parse CLI spellings like ``phi:p=5`` or ``chi:q=2,m=2``."""
    text = text.strip()
    if not text:
        raise ValueError("empty coloring spec")
    family, _, rest = text.partition(":")
    kwargs = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or key not in ("p", "n", "q", "m", "r"):
                raise ValueError(f"bad coloring parameter {item!r}")
            try:
                kwargs[key] = int(val)
            except ValueError:
                raise ValueError(f"bad coloring parameter {item!r}") from None
    return ColoringSpec(family=family.strip(), **kwargs)


def psi(p: int, x: int) -> int:
    """The super-mod-p vertex color: write x = p^r(bp + s), return s in [p-1]."""
    if x < 1:
        raise ValueError("psi is defined on positive integers only")
    return strip_p(x, p) % p


def _f_edge(n: int, x: int, y: int) -> Color:
    rx, ry = x % n, y % n
    if rx == ry:
        return BLUE
    return numeric(min(rx, ry))


def _g_edge(p: int, x: int, y: int) -> Color:
    """Red on distinct valuations; otherwise compare the p-free parts by
    their residue mod p (the super-mod-p class, never 0), blue on equal.

    This is the mod-p reading of the inner comparison: the stripped parts
    lie in [p-1] mod p, two distinct ones have their minimum in [p-2],
    and a monochromatic clique pins a common class c with p not dividing
    c, which is exactly what the divisibility arguments downstream
    consume.
    """
    vx, vy = valuation(x, p), valuation(y, p)
    if vx != vy:
        return RED
    return _f_edge(p, strip_p(x, p), strip_p(y, p))


def edge_color(spec: ColoringSpec, x: int, y: int) -> Color:
    """Color of the edge {x, y}; endpoints must be distinct positive integers."""
    if x == y:
        raise ValueError("edge requires distinct endpoints")
    if spec.family == "f":
        return _f_edge(spec.n, x, y)
    if spec.family == "g":
        if min(x, y) < 1:
            raise ValueError("g is defined on positive integers")
        return _g_edge(spec.p, x, y)
    if spec.family == "phi":
        return numeric(psi(spec.p, abs(y - x)))
    if spec.family == "chi":
        return numeric(valuation(abs(y - x), spec.q) % spec.m)
    if spec.family == "const":
        return BLUE
    raise ValueError(f"family {spec.family!r} is not an edge coloring")


def _f3(n: int, residues: Sequence[int]) -> Color:
    if len(set(residues)) == 1:
        return BLUE
    lo = min(residues)
    if sum(1 for r in residues if r == lo) == 1:
        return numeric(lo)
    return numeric(max(residues))


def _g_r(p: int, points: Sequence[int]) -> Color:
    # inner comparison mod p on the p-free parts, as in the edge case
    vals = [valuation(x, p) for x in points]
    if len(set(vals)) == 1:
        return _f3(p, [strip_p(x, p) % p for x in points])
    lo = min(vals)
    if sum(1 for v in vals if v == lo) == 1:
        return RED
    return GREEN


def hyper_color(spec: ColoringSpec, points: Sequence[int]) -> Color:
    """Color of the r-set given as a strictly increasing tuple."""
    pts = tuple(points)
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("points must be distinct and ascending")
    if spec.family == "const":
        return BLUE
    if spec.family == "f3":
        if len(pts) != 3:
            raise ValueError("f3 colors 3-sets")
        return _f3(spec.n, [x % spec.n for x in pts])
    if spec.family == "g3":
        if len(pts) != 3:
            raise ValueError("g3 colors 3-sets")
        return _g_r(spec.p, pts)
    if spec.family == "h":
        if len(pts) != 3:
            raise ValueError("h colors 3-sets")
        x, y, z = pts
        return _g_edge(spec.p, y - x, z - x)
    if spec.family == "gr":
        if len(pts) != spec.r:
            raise ValueError(f"gr with r={spec.r} colors {spec.r}-sets")
        return _g_r(spec.p, pts)
    raise ValueError(f"family {spec.family!r} is not an r-set coloring")


class EdgeTable:
    """Explicit edge coloring on [1..N], used for threshold counterexamples
    and grid searches over concrete colorings."""

    def __init__(self, table: dict):
        self.table = {frozenset(k): v for k, v in table.items()}

    def color(self, x: int, y: int):
        return self.table[frozenset((x, y))]


def edge_fn(coloring, n_max: Optional[int] = None):
    """A fast ``f(x, y) -> color`` closure for searches.

    Difference-based families get an O(1) table over [1..n_max]; other
    families fall back to direct evaluation (with a memo for g).
    """
    if isinstance(coloring, EdgeTable):
        return coloring.color
    spec = coloring
    if spec.family == "phi" and n_max:
        table = [None] * (n_max + 1)
        for d in range(1, n_max + 1):
            table[d] = numeric(psi(spec.p, d))
        return lambda x, y: table[abs(x - y)]
    if spec.family == "chi" and n_max:
        table = [None] * (n_max + 1)
        for d in range(1, n_max + 1):
            table[d] = numeric(valuation(d, spec.q) % spec.m)
        return lambda x, y: table[abs(x - y)]
    if spec.family == "g":
        memo: dict = {}

        def g_memo(x: int, y: int):
            key = (x, y) if x < y else (y, x)
            c = memo.get(key)
            if c is None:
                c = _g_edge(spec.p, x, y)
                memo[key] = c
            return c

        return g_memo
    return lambda x, y: edge_color(spec, x, y)


def hyper_fn(coloring, n_max: Optional[int] = None):
    """A fast ``f(sorted_points) -> color`` closure for r-set searches."""
    if isinstance(coloring, EdgeTable):
        raise ValueError("edge tables do not color r-sets")
    spec = coloring
    if spec.family == "h":
        inner = edge_fn(ColoringSpec("g", p=spec.p), n_max)
        return lambda pts: inner(pts[1] - pts[0], pts[2] - pts[0])
    return lambda pts: hyper_color(spec, pts)

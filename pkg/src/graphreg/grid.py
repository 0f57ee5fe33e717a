"""Hierarchical pair grids, properness, monochromatic grid search, and
the certificate-driven constructive solution builder.

A grid of depth n stores pairs stratified into levels: a level-k point
splits into an x-branch and a y-branch at scale d(k), carries a common
branch history below k, and independent offsets in units of d(k+1).
``d(n+1)`` is 0, so the deepest level has no offsets.

The key consumer is ``solve_in_grid``: given a strong graph certificate
with T steps and a grid of depth T, the combination
``w = sum_t [x(t) + (y(t)-x(t)) z_t] d(t)`` solves the system, and the
pair {w(i), w(j)} lands exactly at the level where the certificate first
separates columns i and j.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certs import GCCCertificate, unrestriction_time, verify_gcc
from .colorings import Color, ColoringSpec, EdgeTable, edge_fn
from .ratmath import IntMatrix
from .screens import GRAPH_REGULAR, classify
from .search import Witness, verify_witness


class GridConstraintError(ValueError):
    """A grid parameter vector violates one of the structural constraints."""


class GridCapacityError(ValueError):
    """The certificate's construction does not fit the given grid."""


@dataclass(frozen=True)
class GridSpec:
    """Depth-n grid parameters.  ``c`` is indexed 0..n; x, y, b, d are
    indexed 1..n via position k-1."""

    n: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise GridConstraintError("depth must be at least 1")
        for name in ("x", "y", "b", "d"):
            if len(getattr(self, name)) != n:
                raise GridConstraintError(f"{name} must have length {n}")
        if len(self.c) != n + 1:
            raise GridConstraintError("c must have length n+1 (indices 0..n)")
        if any(v < 1 for v in self.x + self.y + self.d):
            raise GridConstraintError("x, y, d entries must be positive")
        if any(v < 0 for v in self.b + self.c):
            raise GridConstraintError("b, c entries must be non-negative")
        for k in range(1, n):
            if self.d[k] % self.d[k - 1] != 0:
                raise GridConstraintError(
                    f"divisibility d({k})|d({k + 1}) fails")
        for k in range(1, n + 1):
            if self.c[k] < self.b[k - 1]:
                raise GridConstraintError(f"c({k}) < b({k})")
        for k in range(2, n + 1):
            cap = self.c[k - 1]
            if self.x[k - 1] * self.b[k - 1] > cap or \
                    self.y[k - 1] * self.b[k - 1] > cap:
                raise GridConstraintError(
                    f"x({k})b({k}), y({k})b({k}) must not exceed c({k - 1})")

    def dk(self, k: int) -> int:
        """d(k) with the d(n+1) = 0 convention; 1-based k."""
        return self.d[k - 1] if k <= self.n else 0


def make_grid_spec(x: Sequence[int], y: Sequence[int], b: Sequence[int],
                   d: Sequence[int], c: Optional[Sequence[int]] = None) -> GridSpec:
    """Build a GridSpec; ``c`` may omit c(0), which then defaults to
    max(x(1)b(1), y(1)b(1)) so the k=1 constraint is vacuous."""
    n = len(x)
    x, y, b, d = tuple(x), tuple(y), tuple(b), tuple(d)
    if c is None:
        c_full = (max(x[0] * b[0], y[0] * b[0]),) + b
    elif len(c) == n:
        c_full = (max(x[0] * b[0], y[0] * b[0]),) + tuple(c)
    else:
        c_full = tuple(c)
    return GridSpec(n, x, y, b, c_full, d)


@dataclass(frozen=True)
class GridPoint:
    u: int
    v: int
    level: int
    history: tuple[int, ...]  # h(1..k-1) values
    i: int
    j: int


def _histories(spec: GridSpec, k: int):
    """Branch-value histories below level k (values, deduplicated when
    x(l) = y(l))."""
    choices = [sorted({spec.x[l], spec.y[l]}) for l in range(k - 1)]
    return itertools.product(*choices)


def _points_iter(spec: GridSpec, deepest_first: bool = False):
    levels = range(spec.n, 0, -1) if deepest_first else range(1, spec.n + 1)
    for k in levels:
        dk = spec.dk(k)
        dk1 = spec.dk(k + 1)
        ck = spec.c[k]
        offsets = range(-ck, ck + 1) if dk1 else (0,)
        for hist in _histories(spec, k):
            base = sum(h * spec.d[l] for l, h in enumerate(hist))
            for i in offsets:
                for j in offsets:
                    yield GridPoint(
                        base + spec.x[k - 1] * dk + i * dk1,
                        base + spec.y[k - 1] * dk + j * dk1,
                        k, tuple(hist), i, j)


def grid_points(spec: GridSpec) -> list[GridPoint]:
    """Every structural point of every level, deterministic order."""
    return list(_points_iter(spec))


def is_proper(spec: GridSpec) -> bool:
    """Literal properness: (a) each point has first coordinate strictly
    below its second, and (b) the representation map
    (level, branch history, offset) -> coordinate is injective, checked
    by materializing every representation."""
    for p in grid_points(spec):
        if p.u >= p.v:
            return False
    seen: dict[int, tuple] = {}
    for k in range(1, spec.n + 1):
        dk1 = spec.dk(k + 1)
        ck = spec.c[k]
        offsets = range(-ck, ck + 1) if dk1 else (0,)
        branch_sets = [sorted({spec.x[l], spec.y[l]}) for l in range(k)]
        for hist in itertools.product(*branch_sets):
            base = sum(h * spec.d[l] for l, h in enumerate(hist))
            for i in offsets:
                coord = base + i * dk1
                rep = (k, hist, i)
                if coord in seen and seen[coord] != rep:
                    return False
                seen[coord] = rep
    return True


def locate(spec: GridSpec, pair: Sequence[int]) -> Optional[int]:
    """Level of the pair if it is a point of the grid, else None.

    Tries both side assignments (grids built from real certificates can
    have the x-branch coordinate above the y-branch one) and returns the
    smallest matching level.
    """
    u, v = pair
    if u == v:
        return None
    for k in range(1, spec.n + 1):
        dk = spec.dk(k)
        dk1 = spec.dk(k + 1)
        ck = spec.c[k]
        for hist in _histories(spec, k):
            base = sum(h * spec.d[l] for l, h in enumerate(hist))
            for a, bb in ((u, v), (v, u)):
                ru = a - base - spec.x[k - 1] * dk
                rv = bb - base - spec.y[k - 1] * dk
                if dk1 == 0:
                    if ru == 0 and rv == 0:
                        return k
                    continue
                if ru % dk1 or rv % dk1:
                    continue
                if abs(ru // dk1) <= ck and abs(rv // dk1) <= ck:
                    return k
    return None


def required_b(cert: GCCCertificate, y: Sequence[int], c: Sequence[int],
               d: Sequence[int]) -> tuple[int, ...]:
    """Componentwise-minimal integer b along the back-to-front recursion
    b(T) >= |z_T| + 1,  b(t) >= (|z_t| + 1) y(t) + c(t) d(t+1)/d(t).

    ``c`` may carry T entries (c(1)..c(T)) or T+1 (with c(0) prepended).
    """
    big_t = cert.T
    if len(y) != big_t or len(d) != big_t:
        raise ValueError("y and d must have one entry per certificate step")
    cs = tuple(c)
    if len(cs) == big_t + 1:
        cs = cs[1:]
    if len(cs) != big_t:
        raise ValueError("c must have T or T+1 entries")
    for t in range(1, big_t):
        if d[t] % d[t - 1] != 0:
            raise ValueError(f"divisibility failure: d({t}) does not divide d({t + 1})")
    b = [0] * big_t
    b[big_t - 1] = math.ceil(cert.norm(big_t) + 1)
    for t in range(big_t - 1, 0, -1):
        ratio = d[t] // d[t - 1]
        b[t - 1] = math.ceil((cert.norm(t) + 1) * y[t - 1] + cs[t - 1] * ratio)
    return tuple(b)


def _construction(cert: GCCCertificate, x: Sequence[int], y: Sequence[int],
                  d: Sequence[int]) -> list[Fraction]:
    n = cert.n
    w = [Fraction(0)] * n
    for t in range(1, cert.T + 1):
        xt, yt, dt = x[t - 1], y[t - 1], d[t - 1]
        zt = cert.z[t]
        for i in range(n):
            w[i] += dt * (xt + (yt - xt) * zt[i])
    return w


def solve_in_grid(cert: GCCCertificate, spec: GridSpec) -> tuple[int, ...]:
    """Certificate-driven solution inside the grid.

    Verifies its own postconditions exactly: integer entries, pairwise
    distinct, and every pair located at the level equal to the pair's
    unrestriction time.  Raises GridCapacityError when the construction
    does not fit (offsets exceeding c, or non-grid landings).
    """
    if cert.flavor != "strong":
        raise ValueError("solve_in_grid needs a strong certificate")
    if spec.n != cert.T:
        raise ValueError("grid depth must equal the certificate's step count")
    w = _construction(cert, spec.x, spec.y, spec.d)
    if any(f.denominator != 1 for f in w):
        raise GridCapacityError(
            "grid capacity below certificate demand: non-integer landing")
    wi = tuple(int(f) for f in w)
    if len(set(wi)) != len(wi):
        raise GridCapacityError("construction produced coinciding values")
    for i, j in itertools.combinations(range(cert.n), 2):
        t_star = unrestriction_time(cert, i, j)
        level = locate(spec, (wi[i], wi[j]))
        if level != t_star:
            raise GridCapacityError(
                f"grid capacity below certificate demand: pair "
                f"({i + 1},{j + 1}) lands at {level}, needs {t_star}")
    return wi


def _chains(n: int, q: int, mult_cap: int = 16, d1_cap: Optional[int] = None):
    """Divisor chains d(1) | d(2) | ... | d(n), geometric with small
    multipliers first, every value <= q."""
    top = min(q, d1_cap) if d1_cap else q

    def extend(chain: list[int]):
        if len(chain) == n:
            yield tuple(chain)
            return
        for m in range(1, mult_cap + 1):
            nxt = chain[-1] * m
            if nxt > q:
                break
            yield from extend(chain + [nxt])

    for d1 in range(1, top + 1):
        yield from extend([d1])


def _residual_extents(xs_u: Sequence[int], ys_u: Sequence[int],
                      c: Sequence[int], chain: Sequence[int], n: int):
    """Min/max of (coordinate − h(1)d(1)) over every level, branch and
    offset; xs_u/ys_u are the level 2..n branch values."""
    lo = -c[1] * (chain[1] if n > 1 else 0)
    hi = c[1] * (chain[1] if n > 1 else 0)
    run_lo = run_hi = 0
    for k in range(2, n + 1):
        dk = chain[k - 1]
        dk1 = chain[k] if k < n else 0
        xk, yk = xs_u[k - 2], ys_u[k - 2]
        lo = min(lo, run_lo + min(xk, yk) * dk - c[k] * dk1)
        hi = max(hi, run_hi + max(xk, yk) * dk + c[k] * dk1)
        run_lo += min(xk, yk) * dk
        run_hi += max(xk, yk) * dk
    return lo, hi


def _mono_color(spec: GridSpec, fn, q: int,
                need_ordered: bool) -> Optional[Color]:
    """Single color shared by all points, with every coordinate in
    [1..q] and no degenerate pair; None when any check fails.  Deepest
    levels are visited first (they are smallest), so mismatching
    candidates die after a couple of evaluations."""
    color = None
    for p in _points_iter(spec, deepest_first=True):
        if p.u == p.v or (need_ordered and p.u >= p.v):
            return None
        if min(p.u, p.v) < 1 or max(p.u, p.v) > q:
            return None
        c = fn(*((p.u, p.v) if p.u < p.v else (p.v, p.u)))
        if color is None:
            color = c
        elif c != color:
            return None
    return color


def find_mono_grid(coloring, q: int, n: int, b: Sequence[int],
                   budget: int = 300_000,
                   branch_cap: int = 6) -> Optional[tuple[GridSpec, Color]]:
    """Search for a monochromatic grid of depth n with offset capacities
    at least ``b``, every coordinate in [1..q] and every point ordered
    (first coordinate below second).

    Deterministic enumeration: divisor chains with small multipliers
    first, then upper-level branch pairs, then the level-1 separation
    scanned upward.  None means the budget or the space was exhausted,
    not that no such grid exists.  A demanded offset capacity at the
    deepest level is unsatisfiable (d(n+1) = 0 collapses those offsets),
    so b(n) >= 1 returns None at once.
    """
    b = tuple(b)
    if len(b) != n:
        raise ValueError("b must have one entry per level")
    if b[n - 1] >= 1:
        return None
    fn = edge_fn(coloring, q)
    c = (0,) + b
    spent = 0
    for chain in _chains(n, q):
        if spent > budget:
            return None
        level_choices = []
        for k in range(2, n + 1):
            cap = branch_cap
            if b[k - 1] > 0:
                cap = min(cap, b[k - 2] // b[k - 1])
            pairs = [(xx, yy) for xx in range(1, cap + 1)
                     for yy in range(xx + 1, cap + 1)]
            level_choices.append(pairs)
        for upper in itertools.product(*level_choices):
            xs_u = [p[0] for p in upper]
            ys_u = [p[1] for p in upper]
            # ordered points need each level's split to clear its offsets
            if any((ys_u[k - 2] - xs_u[k - 2]) * chain[k - 1]
                   <= 2 * b[k - 1] * (chain[k] if k < n else 0)
                   for k in range(2, n + 1)):
                continue
            r_lo, r_hi = _residual_extents(xs_u, ys_u, c, chain, n)
            d1 = chain[0]
            x1 = max(1, math.ceil(Fraction(1 - r_lo, d1)))
            d2 = chain[1] if n > 1 else 0
            sep_min = 2 * b[0] * d2 + 1
            for sep in range(sep_min, q + 1):
                spent += 1
                if spent > budget:
                    return None
                y1 = x1 + sep
                if y1 * d1 + r_hi > q:
                    break
                try:
                    spec = make_grid_spec((x1,) + tuple(xs_u),
                                          (y1,) + tuple(ys_u), b, chain)
                except GridConstraintError:
                    continue
                color = _mono_color(spec, fn, q, need_ordered=True)
                if color is not None:
                    return spec, color
    return None


@dataclass(frozen=True)
class PipelineResult:
    """Outcome of the classify -> grid -> solve pipeline; ``stage_failed``
    names the stage whose budget or precondition gave out."""

    witness: Optional[Witness]
    stage_failed: Optional[str] = None  # "certificate" | "grid" | "solve"
    reason: str = ""
    certificate: Optional[GCCCertificate] = None
    grid: Optional[GridSpec] = None
    color: Optional[Color] = None


def _cert_capacities(cert: GCCCertificate, xs_u: Sequence[int],
                     ys_u: Sequence[int],
                     chain: Sequence[int]) -> Optional[list[int]]:
    """Exact per-level offset capacities the construction will consume,
    or None when some tail fails the divisibility it needs.  Independent
    of the level-1 branch values: tails only involve steps >= 2."""
    big_t = cert.T
    n = cert.n
    caps = [0] * (big_t + 1)  # caps[t] for t = 1..T, index 0 unused
    for t in range(1, big_t):
        dt1 = chain[t]
        need = Fraction(0)
        for i in range(n):
            tail = Fraction(0)
            for s in range(t + 1, big_t + 1):
                xs = xs_u[s - 2]
                ys = ys_u[s - 2]
                tail += chain[s - 1] * (xs + (ys - xs) * cert.z[s][i])
            if tail % dt1 != 0:
                return None
            need = max(need, abs(tail / dt1))
        caps[t] = int(need)
    return caps


def _diff_colors(fn, base: int, step: int, spread: int, q: int):
    """For difference-based colorings: the set of colors taken by
    |base + e*step| over e in [-spread..spread].  None when a difference
    degenerates to 0 or exceeds q-1 (two such coordinates cannot both
    lie in [1..q])."""
    colors = set()
    for e in range(-spread, spread + 1):
        diff = abs(base + e * step)
        if diff == 0 or diff > q - 1:
            return None
        colors.add(fn(1, 1 + diff))
        if len(colors) > 1:
            return colors
    return colors


def pipeline_witness(a: IntMatrix, coloring, q: int,
                     t_max: Optional[int] = None,
                     budget: int = 300_000,
                     branch_cap: int = 6) -> PipelineResult:
    """classify -> strong certificate -> monochromatic grid -> solve.

    Candidate grids take their offset capacities from the certificate's
    own construction, computed exactly, so every survivor admits the
    solution.  The returned witness is independently re-verified.
    """
    report = classify(a, t_max=t_max, annotate_weak=False)
    if report.classification != GRAPH_REGULAR:
        return PipelineResult(
            None, "certificate",
            f"classification is {report.classification}: {report.evidence}")
    cert = report.certificate
    big_t = cert.T
    fn = edge_fn(coloring, q)
    diff_based = isinstance(coloring, ColoringSpec) and \
        coloring.family in ("phi", "chi", "const")
    spent = 0
    for chain in _chains(big_t, q):
        if spent > budget:
            return PipelineResult(None, "grid", "budget exhausted",
                                  certificate=cert)
        upper_pairs = [[(xx, yy) for xx in range(1, branch_cap + 1)
                        for yy in range(xx + 1, branch_cap + 1)]
                       for _ in range(2, big_t + 1)]
        for upper in itertools.product(*upper_pairs):
            spent += 1
            if spent > budget:
                return PipelineResult(None, "grid", "budget exhausted",
                                      certificate=cert)
            xs_u = [p[0] for p in upper]
            ys_u = [p[1] for p in upper]
            caps = _cert_capacities(cert, xs_u, ys_u, chain)
            if caps is None:
                continue
            # color of every level >= 2 is already determined
            if diff_based:
                deep = set()
                for k in range(2, big_t + 1):
                    base = (ys_u[k - 2] - xs_u[k - 2]) * chain[k - 1]
                    step = chain[k] if k < big_t else 0
                    spread = 2 * caps[k] if k < big_t else 0
                    got = _diff_colors(fn, base, step, spread, q)
                    if got is None or None in got:
                        deep = None
                        break
                    deep |= got
                if deep is None or len(deep) > 1:
                    continue
                target = next(iter(deep)) if deep else None
            else:
                target = None
            r_lo, r_hi = _residual_extents(xs_u, ys_u, caps, chain, big_t)
            d1 = chain[0]
            d2 = chain[1] if big_t > 1 else 0
            x1 = max(1, math.ceil(Fraction(1 - r_lo, d1)))
            bs = [caps[1]] + [0] * (big_t - 1)
            for t in range(2, big_t + 1):
                bs[t - 1] = min(
                    caps[t], caps[t - 1] // max(xs_u[t - 2], ys_u[t - 2]))
            spread1 = 2 * caps[1] if big_t > 1 else 0
            for sep in range(1, q + 1):
                spent += 1
                if spent > budget:
                    return PipelineResult(None, "grid", "budget exhausted",
                                          certificate=cert)
                y1 = x1 + sep
                if y1 * d1 + r_hi > q:
                    break
                if diff_based:
                    # one-lookup probe on the base separation, then the
                    # full level-1 span; the spec object only gets built
                    # for survivors
                    base = sep * d1
                    if base > q - 1:
                        break
                    if target is not None and fn(1, 1 + base) != target:
                        continue
                    got = _diff_colors(fn, base, d2, spread1, q)
                    if got is None or len(got) > 1:
                        continue
                    if target is not None and got != {target}:
                        continue
                    color = target if target is not None else next(iter(got))
                    try:
                        spec = make_grid_spec(
                            (x1,) + tuple(xs_u), (y1,) + tuple(ys_u),
                            bs, chain,
                            c=[max(x1 * bs[0], y1 * bs[0])] + caps[1:])
                    except GridConstraintError:
                        continue
                else:
                    try:
                        spec = make_grid_spec(
                            (x1,) + tuple(xs_u), (y1,) + tuple(ys_u),
                            bs, chain,
                            c=[max(x1 * bs[0], y1 * bs[0])] + caps[1:])
                    except GridConstraintError:
                        continue
                    color = _mono_color(spec, fn, q, need_ordered=False)
                    if color is None:
                        continue
                try:
                    w = solve_in_grid(cert, spec)
                except GridCapacityError:
                    continue
                witness = Witness(w, color, coloring, q)
                if not verify_witness(a, witness):
                    return PipelineResult(
                        None, "solve", "constructed witness failed "
                        "re-verification", certificate=cert, grid=spec)
                return PipelineResult(witness, None, "",
                                      certificate=cert, grid=spec,
                                      color=color)
    return PipelineResult(None, "grid", "search space exhausted",
                          certificate=cert)

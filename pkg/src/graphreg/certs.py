"""Columns-condition certificates: classical, weak graph, and strong graph.

A classical certificate pairs nullspace vectors ``z_1..z_T`` with a
shrinking chain of column sets ``R_1 ⊇ ... ⊇ R_T = ∅``.  The graph
variants replace the sets by graphs on the column indices and add
``z_0 = 1`` with ``R_0`` complete.  Verifiers are pure and report every
violated condition with the witnessing time/index/pair; searchers emit
the first certificate in a fixed deterministic enumeration order.

Column indices are 0-based throughout the API; serialization converts
to the 1-based file format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .ratmath import (DimensionError, IntMatrix, RatVector, as_ratvector,
                      in_nullspace, is_zero_vector, solve_particular)

Edge = tuple[int, int]
Graph = frozenset  # frozenset[Edge]


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError("no loops")
    return (i, j) if i < j else (j, i)


def complete_graph(n: int) -> Graph:
    return frozenset(itertools.combinations(range(n), 2))


def all_pairs(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class Violation:
    """One failed certificate condition with its witness."""

    condition: str  # "1", "2", "3", "4", "1*", "2*", "nullspace", "monotone", "r0", "z0"
    t: Optional[int] = None
    index: Optional[int] = None
    pair: Optional[Edge] = None

    def __str__(self) -> str:
        where = []
        if self.t is not None:
            where.append(f"t={self.t}")
        if self.index is not None:
            where.append(f"i={self.index + 1}")
        if self.pair is not None:
            where.append("pair={%d,%d}" % (self.pair[0] + 1, self.pair[1] + 1))
        loc = ", ".join(where)
        return f"condition {self.condition}" + (f" at {loc}" if loc else "")


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    flavor: str
    violations: tuple[Violation, ...] = ()

    def __post_init__(self):
        if self.accepted != (not self.violations):
            raise ValueError("accepted must match an empty violation list")

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


@dataclass(frozen=True)
class CCCertificate:
    """Classical columns-condition certificate: z_1..z_T, R_1..R_T."""

    T: int
    z: tuple[RatVector, ...]     # length T
    R: tuple[frozenset, ...]     # length T, sets of column indices

    def __post_init__(self):
        if self.T < 1 or len(self.z) != self.T or len(self.R) != self.T:
            raise DimensionError("need T >= 1 vectors and T sets")


@dataclass(frozen=True)
class GCCCertificate:
    """Graph columns-condition certificate: z_0..z_T, R_0..R_T, one flavor."""

    T: int
    z: tuple[RatVector, ...]     # length T+1, z[0] must be all-ones
    R: tuple[Graph, ...]         # length T+1, R[0] must be complete
    flavor: str                  # "weak" | "strong"
    maxnorm: Fraction = field(init=False)

    def __post_init__(self):
        if self.flavor not in ("weak", "strong"):
            raise ValueError("flavor must be 'weak' or 'strong'")
        if self.T < 1 or len(self.z) != self.T + 1 or len(self.R) != self.T + 1:
            raise DimensionError("need vectors z_0..z_T and graphs R_0..R_T")
        object.__setattr__(
            self, "maxnorm",
            max(abs(x) for zt in self.z for x in zt))

    @property
    def n(self) -> int:
        return len(self.z[0])

    def norm(self, t: int) -> Fraction:
        return max(abs(x) for x in self.z[t])


def verify_cc(a: IntMatrix, cert: CCCertificate) -> VerificationReport:
    """Check the classical columns condition against matrix ``a``.

    Condition (1) is applied with the quantifier as printed in the
    definition: restricted indices must be 0 for all s <= t.
    """
    n = a.cols
    for zt in cert.z:
        if len(zt) != n:
            raise DimensionError("certificate vector length != column count")
    violations: list[Violation] = []
    for t in range(cert.T):
        if any(i < 0 or i >= n for i in cert.R[t]):
            raise DimensionError("restriction set mentions a bad column")
        if t > 0 and not cert.R[t] <= cert.R[t - 1]:
            violations.append(Violation("monotone", t=t + 1))
    for t, zt in enumerate(cert.z, start=1):
        if not in_nullspace(a, zt):
            violations.append(Violation("nullspace", t=t))
    if cert.R[-1]:
        violations.append(Violation("3", t=cert.T))
    for t in range(1, cert.T + 1):
        rt = cert.R[t - 1]
        for i in range(n):
            if i in rt:
                if any(cert.z[s][i] != 0 for s in range(t)):
                    violations.append(Violation("1", t=t, index=i))
            else:
                if not any(cert.z[s][i] == 1 for s in range(t)):
                    violations.append(Violation("2", t=t, index=i))
    violations = _dedupe(violations)
    return VerificationReport(not violations, "cc", tuple(violations))


def verify_gcc(a: IntMatrix, cert: GCCCertificate,
               flavor: Optional[str] = None) -> VerificationReport:
    """Check the weak or strong graph columns condition against ``a``.

    ``flavor`` overrides the certificate's own flavor, which is how the
    strong-implies-weak property is exercised.
    """
    flavor = flavor or cert.flavor
    if flavor not in ("weak", "strong"):
        raise ValueError("flavor must be 'weak' or 'strong'")
    n = a.cols
    for zt in cert.z:
        if len(zt) != n:
            raise DimensionError("certificate vector length != column count")
    for g in cert.R:
        for (i, j) in g:
            if not (0 <= i < j < n):
                raise DimensionError("restriction graph mentions a bad pair")

    violations: list[Violation] = []
    if cert.z[0] != tuple([Fraction(1)] * n):
        violations.append(Violation("4"))
    if cert.R[0] != complete_graph(n):
        violations.append(Violation("r0"))
    for t in range(1, cert.T + 1):
        if not cert.R[t] <= cert.R[t - 1]:
            violations.append(Violation("monotone", t=t))
    for t, zt in enumerate(cert.z):
        if not in_nullspace(a, zt):
            violations.append(Violation("nullspace", t=t))
    if cert.R[-1]:
        violations.append(Violation("3", t=cert.T))

    zero_one = (Fraction(0), Fraction(1))
    for t in range(cert.T + 1):
        rt = cert.R[t]
        for pair in all_pairs(n):
            i, j = pair
            if pair in rt:
                for s in range(t):
                    zi, zj = cert.z[s][i], cert.z[s][j]
                    if flavor == "weak":
                        bad = zi != zj
                    else:
                        bad = zi != zj or zi not in zero_one
                    if bad:
                        cond = "1" if flavor == "weak" else "1*"
                        violations.append(Violation(cond, t=t, pair=pair))
                        break
            else:
                if t > 0 and pair not in cert.R[t - 1]:
                    continue  # first unrestricted time already checked
                if flavor == "weak":
                    ok = any(abs(cert.z[s][j] - cert.z[s][i]) == 1
                             for s in range(t + 1))
                else:
                    ok = any({cert.z[s][i], cert.z[s][j]} == set(zero_one)
                             for s in range(t + 1))
                if not ok:
                    cond = "2" if flavor == "weak" else "2*"
                    violations.append(Violation(cond, t=t, pair=pair))
    violations = _dedupe(violations)
    return VerificationReport(not violations, flavor, tuple(violations))


def _dedupe(violations: list[Violation]) -> list[Violation]:
    seen = set()
    out = []
    for v in violations:
        key = (v.condition, v.index, v.pair)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def unrestriction_time(cert: GCCCertificate, i: int, j: int) -> int:
    """First t with {i, j} not in R_t; defined for every pair of a valid
    certificate since R_T is edgeless."""
    if i == j:
        raise ValueError("need two distinct columns")
    pair = edge(i, j)
    for t in range(cert.T + 1):
        if pair not in cert.R[t]:
            return t
    raise RuntimeError("pair restricted through R_T; certificate is invalid")


def _subsets_lex(items: Sequence):
    """Nonempty subsets of a sorted sequence, lexicographic by sorted tuple."""
    n = len(items)
    acc: list = []

    def rec(start: int):
        for k in range(start, n):
            acc.append(items[k])
            yield tuple(acc)
            yield from rec(k + 1)
            acc.pop()

    yield from rec(0)


class SearchBudgetExceeded(Exception):
    pass


def search_cc(a: IntMatrix, max_cols: int = 10,
              node_budget: Optional[int] = None) -> Optional[CCCertificate]:
    """Complete search for a classical columns-condition certificate.

    Enumerates ordered partitions (B_1, ..., B_T) of the columns in
    lexicographic order: B_1 must sum to zero, each later block sum must
    lie in the rational span of the earlier blocks' columns.  Returns the
    first certificate found, or None.  With a ``node_budget`` the search
    gives up after that many candidate blocks (used by the reduction
    pipeline, where completeness is traded for time).
    """
    n = a.cols
    if n > max_cols:
        raise ValueError(
            f"instance too large: {n} columns exceeds limit {max_cols}")
    cols = a.columns()
    m = a.rows
    nodes = 0

    def block_sum(block: Sequence[int]) -> tuple:
        return tuple(sum(cols[b][r] for b in block) for r in range(m))

    def dfs(remaining: tuple[int, ...], blocks: list[tuple[int, ...]],
            zs: list[RatVector]) -> Optional[CCCertificate]:
        nonlocal nodes
        if not remaining:
            big_t = len(blocks)
            live = set(range(n))
            rsets = []
            for b in blocks:
                live -= set(b)
                rsets.append(frozenset(live))
            return CCCertificate(big_t, tuple(zs), tuple(rsets))
        for block in _subsets_lex(remaining):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise SearchBudgetExceeded
            bsum = block_sum(block)
            earlier = sorted(i for b in blocks for i in b)
            if not blocks:
                if not is_zero_vector(bsum):
                    continue
                coeffs: tuple = ()
            else:
                coeffs = solve_particular(
                    [cols[e] for e in earlier],
                    tuple(-x for x in bsum))
                if coeffs is None:
                    continue
            z = [Fraction(0)] * n
            for b in block:
                z[b] = Fraction(1)
            for e, c in zip(earlier, coeffs):
                z[e] = c
            rest = tuple(i for i in remaining if i not in block)
            found = dfs(rest, blocks + [block], zs + [tuple(z)])
            if found is not None:
                return found
        return None

    try:
        cert = dfs(tuple(range(n)), [], [])
    except SearchBudgetExceeded:
        return None
    if cert is not None:
        report = verify_cc(a, cert)
        if not report.accepted:  # pragma: no cover - construction guarantees
            raise RuntimeError(f"search_cc produced a bad certificate: "
                               f"{report.first()}")
    return cert


def _bipartitions(block: Sequence[int]):
    """Proper bipartitions (S1, S2) of a sorted block, min(block) in S1,
    in lexicographic order of S1."""
    head, rest = block[0], block[1:]
    for sub in itertools.chain(((),), _subsets_lex(rest)):
        if len(sub) == len(rest):
            continue
        s1 = (head,) + sub
        s2 = tuple(x for x in block if x not in s1)
        yield s1, s2


def search_gcc(a: IntMatrix, flavor: str, t_max: int,
               value_range: Sequence[int] = (0, 1)) -> Optional[GCCCertificate]:
    """Bounded search for a graph columns-condition certificate.

    The search space: chains of clique partitions of the columns,
    refining the one-block partition down to singletons by binary splits,
    at most ``t_max`` steps.  Each step assigns every surviving clique a
    value (0/1 for strong, anything in ``value_range`` for weak, split
    siblings differing by exactly 1), while columns whose clique became a
    singleton at an earlier step are filled by an exact linear solve
    against the nullspace.  A None result means nothing was found within
    these bounds, not that no certificate exists.
    """
    if flavor not in ("weak", "strong"):
        raise ValueError("flavor must be 'weak' or 'strong'")
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    n = a.cols
    cols = a.columns()
    for j, col in enumerate(cols):
        if is_zero_vector(col):
            raise ValueError(f"degenerate matrix: column {j + 1} is zero")
    if not all(sum(col[r] for col in cols) == 0 for r in range(a.rows)):
        raise ValueError("column sums must be zero (run screens first)")

    if flavor == "strong":
        values = (0, 1)
        split_pairs = ((0, 1), (1, 0))
    else:
        values = tuple(sorted(set(int(v) for v in value_range)))
        split_pairs = tuple(sorted(
            (v1, v2) for v1 in values for v2 in values if abs(v1 - v2) == 1))
        if not split_pairs:
            return None

    def solve_step(assign: dict[int, int], free: list[int]) -> Optional[RatVector]:
        fixed = [Fraction(assign.get(i, 0)) for i in range(n)]
        rhs = tuple(-x for x in a.matvec(fixed))
        if not free:
            return tuple(fixed) if is_zero_vector(rhs) else None
        sol = solve_particular([cols[f] for f in free], rhs)
        if sol is None:
            return None
        z = list(fixed)
        for f, val in zip(free, sol):
            z[f] = val
        return tuple(z)

    def emit(partitions: list[tuple], zs: list[RatVector]) -> GCCCertificate:
        big_t = len(zs)
        graphs = [complete_graph(n)]
        for part in partitions:
            graphs.append(frozenset(
                e for b in part for e in itertools.combinations(b, 2)))
        z_all = (tuple([Fraction(1)] * n),) + tuple(zs)
        return GCCCertificate(big_t, z_all, tuple(graphs), flavor)

    def dfs(partition: list[tuple[int, ...]],
            partitions: list, zs: list) -> Optional[GCCCertificate]:
        if all(len(b) == 1 for b in partition):
            return emit(partitions, zs)
        if len(zs) >= t_max:
            return None
        # columns already sitting in singleton blocks are past every
        # restriction; their step-t entries are free rationals
        free = sorted(i for b in partition if len(b) == 1 for i in b)
        splittable = [b for b in partition if len(b) > 1]
        for chosen in _subsets_lex(tuple(range(len(splittable)))):
            split_blocks = [splittable[k] for k in chosen]
            keep = [b for b in partition
                    if len(b) > 1 and b not in split_blocks]
            bip_lists = [list(_bipartitions(b)) for b in split_blocks]
            for bips in itertools.product(*bip_lists):
                for pair_vals in itertools.product(split_pairs, repeat=len(bips)):
                    for keep_vals in itertools.product(values, repeat=len(keep)):
                        assign: dict[int, int] = {}
                        for (s1, s2), (v1, v2) in zip(bips, pair_vals):
                            for i in s1:
                                assign[i] = v1
                            for i in s2:
                                assign[i] = v2
                        for b, v in zip(keep, keep_vals):
                            for i in b:
                                assign[i] = v
                        z = solve_step(assign, free)
                        if z is None:
                            continue
                        new_partition = []
                        for b in partition:
                            if b in split_blocks:
                                k = split_blocks.index(b)
                                new_partition.extend(bips[k])
                            else:
                                new_partition.append(b)
                        new_partition.sort(key=lambda blk: blk[0])
                        found = dfs(new_partition,
                                    partitions + [tuple(new_partition)],
                                    zs + [z])
                        if found is not None:
                            return found
        return None

    cert = dfs([tuple(range(n))], [], [])
    if cert is not None:
        report = verify_gcc(a, cert)
        if not report.accepted:  # pragma: no cover - construction guarantees
            raise RuntimeError(f"search_gcc produced a bad certificate: "
                               f"{report.first()}")
    return cert

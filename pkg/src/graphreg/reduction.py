"""The pair-indexed matrix C and certificate transfer back to the source.

``build_c`` glues each column a_j of the source onto pair column (1, j)
and adds one constraint row per pair (k, l) with k >= 2 encoding
y(1, l) − y(1, k) − y(k, l) = 0, so that solutions x of A·x = 0
correspond exactly to difference vectors y(i, j) = x(j) − x(i) in the
nullspace of C.  A classical certificate of C(σ) then transfers to a
weak graph certificate of A via z_t(i) = w_t(1, i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certs import (CCCertificate, GCCCertificate, complete_graph, edge,
                    search_cc, verify_cc, verify_gcc)
from .ratmath import DimensionError, IntMatrix, RatVector
from .screens import column_sum_zero


@dataclass(frozen=True)
class PairMatrix:
    """C together with its pair-to-column bookkeeping (pairs are 0-based)."""

    n: int
    matrix: IntMatrix
    col_pairs: tuple[tuple[int, int], ...]
    sigma: tuple[int, ...]  # source column represented by position i

    def col_of(self, i: int, j: int) -> int:
        return self.col_pairs.index((i, j) if i < j else (j, i))


def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def build_c(a: IntMatrix) -> PairMatrix:
    """Pair matrix of ``a`` in its given column order."""
    return build_c_sigma(a, _identity(a.cols))


def build_c_sigma(a: IntMatrix, sigma: Sequence[int]) -> PairMatrix:
    """Pair matrix of ``a`` with columns permuted by sigma (0-based), so
    that y(i, j) = x(sigma(j)) − x(sigma(i)) stays positive whenever x is
    increasing along sigma."""
    if not column_sum_zero(a):
        raise ValueError("column sums must be zero before building C")
    n = a.cols
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of the columns")
    perm = a.permute_columns(sigma)
    pairs = list(itertools.combinations(range(n), 2))
    col_index = {p: k for k, p in enumerate(pairs)}
    constraint_pairs = [(k, l) for k, l in pairs if k >= 1]
    rows = []
    for r in range(a.rows):
        row = [0] * len(pairs)
        for j in range(1, n):
            row[col_index[(0, j)]] = perm.entries[r][j]
        rows.append(row)
    for (k, l) in constraint_pairs:
        row = [0] * len(pairs)
        row[col_index[(0, l)]] = 1
        row[col_index[(0, k)]] = -1
        row[col_index[(k, l)]] = -1
        rows.append(row)
    return PairMatrix(n, IntMatrix(rows), tuple(pairs), sigma)


def differences(pm: PairMatrix, x: Sequence) -> RatVector:
    """The vector y with y(i, j) = x(sigma(j)) − x(sigma(i))."""
    if len(x) != pm.n:
        raise DimensionError("length mismatch")
    xs = [Fraction(v) for v in x]
    return tuple(xs[pm.sigma[j]] - xs[pm.sigma[i]] for i, j in pm.col_pairs)


def reconstruct(pm: PairMatrix, y: Sequence, anchor=Fraction(0)) -> RatVector:
    """Invert ``differences``: x(sigma(0)) = anchor, x(sigma(j)) = anchor +
    y(0, j).  When C·y = 0 the result satisfies A·x = 0."""
    if len(y) != len(pm.col_pairs):
        raise DimensionError("length mismatch")
    ys = [Fraction(v) for v in y]
    x = [Fraction(0)] * pm.n
    x[pm.sigma[0]] = Fraction(anchor)
    for j in range(1, pm.n):
        x[pm.sigma[j]] = Fraction(anchor) + ys[pm.col_pairs.index((0, j))]
    return tuple(x)


def transfer_certificate(a: IntMatrix, cert: CCCertificate,
                         sigma: Sequence[int]) -> GCCCertificate:
    """Turn a verified classical certificate of C(sigma) into a weak graph
    certificate of ``a``: z_t(sigma(0)) = 0, z_t(sigma(i)) = w_t(0, i),
    z_0 = 1, R_0 complete, and each R_t read as a graph on the columns."""
    pm = build_c_sigma(a, sigma)
    report = verify_cc(pm.matrix, cert)
    if not report.accepted:
        raise ValueError(f"input certificate rejected: {report.first()}")
    n = a.cols
    zs = [tuple([Fraction(1)] * n)]
    graphs = [complete_graph(n)]
    for t in range(cert.T):
        w = cert.z[t]
        z = [Fraction(0)] * n
        for i in range(1, n):
            z[pm.sigma[i]] = w[pm.col_pairs.index((0, i))]
        zs.append(tuple(z))
        graphs.append(frozenset(
            edge(pm.sigma[i], pm.sigma[j])
            for (i, j) in (pm.col_pairs[c] for c in cert.R[t])))
    out = GCCCertificate(cert.T, tuple(zs), tuple(graphs), "weak")
    check = verify_gcc(a, out, "weak")
    if not check.accepted:  # pragma: no cover - construction guarantees
        raise RuntimeError(f"transferred certificate rejected: {check.first()}")
    return out


def wgcc_via_reduction(a: IntMatrix, node_budget: int = 200_000,
                       ) -> Optional[GCCCertificate]:
    """Search C(sigma) for a classical certificate over all sigma in
    lexicographic order and transfer the first success.  None means every
    sigma failed within the per-sigma search budget, not a proof of
    absence."""
    if a.cols > 6:
        raise ValueError("reduction search is capped at 6 columns "
                         "(factorial blowup)")
    if not column_sum_zero(a):
        raise ValueError("column sums must be zero")
    n_pairs = a.cols * (a.cols - 1) // 2
    for sigma in itertools.permutations(range(a.cols)):
        pm = build_c_sigma(a, sigma)
        cert = search_cc(pm.matrix, max_cols=n_pairs,
                         node_budget=node_budget)
        if cert is not None:
            return transfer_certificate(a, cert, sigma)
    return None

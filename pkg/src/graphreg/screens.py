"""Necessary-condition screens for graph-regularity and the classifier.

The screens are one-sided: a failure proves the system is not
graph-regular, while only a successful strong-certificate search proves
that it is.  Everything in between is honestly reported as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .certs import GCCCertificate, search_gcc, _subsets_lex
from .ratmath import IntMatrix, is_zero_vector

NOT_GRAPH_REGULAR = "not-graph-regular"
GRAPH_REGULAR = "graph-regular"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ScreenReport:
    sum_to_zero: bool
    zero_sum_partition: Optional[frozenset]
    classification: str
    evidence: str
    certificate: Optional[GCCCertificate] = None
    wgcc_certificate: Optional[GCCCertificate] = None

    def __post_init__(self):
        if self.classification == GRAPH_REGULAR:
            if self.certificate is None or self.certificate.flavor != "strong":
                raise ValueError("graph-regular needs a strong certificate")
        if self.classification == NOT_GRAPH_REGULAR and self.certificate:
            raise ValueError("a refuted instance cannot carry a certificate")


def column_sum_zero(a: IntMatrix) -> bool:
    """True iff every row of ``a`` sums to 0 (columns sum to the zero vector)."""
    return all(sum(row) == 0 for row in a.entries)


def _as_columns(a: Union[IntMatrix, Sequence]) -> list[tuple[int, ...]]:
    if isinstance(a, IntMatrix):
        return a.columns()
    cols = []
    for entry in a:
        if isinstance(entry, (tuple, list)):
            cols.append(tuple(int(x) for x in entry))
        else:
            cols.append((int(entry),))
    return cols


def zero_sum_partition(a: Union[IntMatrix, Sequence]) -> Optional[frozenset]:
    """Lexicographically first nonempty proper I with both I and its
    complement summing to zero, componentwise.  Accepts a plain integer
    vector (single equation) or a matrix / list of columns.  Indices are
    0-based."""
    cols = _as_columns(a)
    k = len(cols)
    if k < 3:
        raise ValueError("need at least three columns")
    width = len(cols[0])
    for subset in _subsets_lex(tuple(range(k))):
        if len(subset) == k:
            continue
        inside = set(subset)
        s_in = tuple(sum(cols[i][r] for i in inside) for r in range(width))
        if not is_zero_vector(s_in):
            continue
        s_out = tuple(sum(cols[i][r] for i in range(k) if i not in inside)
                      for r in range(width))
        if is_zero_vector(s_out):
            return frozenset(inside)
    return None


def classify(a: IntMatrix, t_max: Optional[int] = None,
             annotate_weak: bool = True) -> ScreenReport:
    """Screen pipeline: sum-to-zero, zero-sum partition (single equation),
    then a bounded strong-certificate search.

    graph-regular is only ever reported with an attached strong
    certificate; not-graph-regular only when a necessary condition
    failed; everything else is unknown, optionally annotated with a weak
    certificate when one turns up in bounds.
    """
    if a.cols < 3:
        raise ValueError("a regularity instance needs at least three variables")
    for j in range(a.cols):
        if is_zero_vector(a.col(j)):
            raise ValueError(f"zero column {j + 1}: drop trivial variables first")
    stz = column_sum_zero(a)
    if not stz:
        return ScreenReport(False, None, NOT_GRAPH_REGULAR,
                            "column sums are not zero")
    part = zero_sum_partition(a)
    if a.rows == 1 and part is None:
        return ScreenReport(True, None, NOT_GRAPH_REGULAR,
                            "no complementary zero-sum split of the coefficients")
    bound = t_max if t_max is not None else a.cols - 1
    strong = search_gcc(a, "strong", bound)
    if strong is not None:
        return ScreenReport(True, part, GRAPH_REGULAR,
                            "strong graph columns condition certificate",
                            certificate=strong)
    weak = None
    if annotate_weak:
        weak = search_gcc(a, "weak", bound)
    return ScreenReport(True, part, UNKNOWN,
                        "strong-certificate search exhausted its bounds",
                        wgcc_certificate=weak)

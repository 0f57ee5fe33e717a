"""Exact rational arithmetic, integer matrices, and nullspace computation.

Everything here is immutable and pure.  Rationals are stdlib
``fractions.Fraction`` values, which already guarantee the invariants we
need: always stored reduced, denominator always positive, arbitrary
precision.  Vectors are plain tuples of Fractions, matrices are small
immutable wrappers around tuples of integer rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
RatVector = tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when vector/matrix shapes do not line up."""


class MatrixParseError(ValueError):
    """Raised on malformed matrix text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary precision entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(e) for e in row) for row in entries)
        if not rows:
            raise DimensionError("matrix must have at least one row")
        width = len(rows[0])
        if width == 0:
            raise DimensionError("matrix must have at least one column")
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.entries = rows

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.entries))})"

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def matvec(self, v: Sequence) -> RatVector:
        if len(v) != self.cols:
            raise DimensionError(
                f"vector length {len(v)} != column count {self.cols}")
        return tuple(
            sum((Fraction(a) * Fraction(x) for a, x in zip(row, v)),
                Fraction(0))
            for row in self.entries)

    def permute_columns(self, sigma: Sequence[int]) -> "IntMatrix":
        """Column i of the result is column sigma[i] of self (0-based)."""
        if sorted(sigma) != list(range(self.cols)):
            raise DimensionError("not a permutation of the column indices")
        return IntMatrix(tuple(tuple(row[s] for s in sigma)
                               for row in self.entries))

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(e) for e in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        """Parse the matrix text format: '<rows> <cols>' then one line per row."""
        lines = [ln for ln in text.splitlines()]
        # skip leading blank lines but keep true line numbers for errors
        idx = 0
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            raise MatrixParseError("empty input", 1)
        header = lines[idx].split()
        if len(header) != 2:
            raise MatrixParseError("expected '<rows> <cols>' header", idx + 1)
        try:
            nrows, ncols = int(header[0]), int(header[1])
        except ValueError:
            raise MatrixParseError("non-integer header", idx + 1) from None
        if nrows < 1 or ncols < 1:
            raise MatrixParseError("rows and cols must be positive", idx + 1)
        body = []
        lineno = idx + 1
        for ln in lines[idx + 1:]:
            lineno += 1
            if not ln.strip():
                continue
            try:
                row = [int(tok) for tok in ln.split()]
            except ValueError:
                raise MatrixParseError("non-integer entry", lineno) from None
            if len(row) != ncols:
                raise MatrixParseError(
                    f"expected {ncols} entries, got {len(row)}", lineno)
            body.append(row)
            if len(body) == nrows:
                break
        if len(body) != nrows:
            raise MatrixParseError(
                f"expected {nrows} rows, got {len(body)}", lineno)
        return cls(body)


def as_ratvector(v: Sequence) -> RatVector:
    return tuple(Fraction(x) for x in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; pivot = first nonzero in column order.

    Returns the reduced rows and the list of pivot columns.  Deterministic:
    no pivot-size heuristics, so identical inputs give identical output.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(a: IntMatrix) -> int:
    rows = [[Fraction(e) for e in row] for row in a.entries]
    _, pivots = _rref(rows)
    return len(pivots)


def nullspace_basis(a: IntMatrix) -> list[RatVector]:
    """Exact basis of {v : a·v = 0}; size = cols − rank.

    Basis vectors are in the standard free-column form: one per free
    column, carrying 1 there and 0 in the other free columns.
    """
    rows = [[Fraction(e) for e in row] for row in a.entries]
    rref, pivots = _rref(rows)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][f]
        basis.append(tuple(v))
    return basis


def in_nullspace(a: IntMatrix, v: Sequence) -> bool:
    """True iff a·v = 0 exactly."""
    return is_zero_vector(a.matvec(v))


def solve_particular(columns: Sequence[Sequence], rhs: Sequence) -> Optional[RatVector]:
    """One exact solution x of  sum_j x_j * columns[j] = rhs, or None.

    Free variables are set to 0, so the answer is deterministic.  Used for
    span-membership tests and for filling unconstrained certificate entries.
    """
    m = len(rhs)
    n = len(columns)
    if n == 0:
        return () if is_zero_vector(rhs) else None
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(rhs[i])]
           for i in range(m)]
    rref, pivots = _rref(aug)
    for r in range(len(pivots), m):
        if rref[r][n] != 0:
            return None
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][n]
    return tuple(x)


def integerize(v: Sequence) -> tuple[int, ...]:
    """Unique integer multiple of v with coprime entries, first nonzero > 0."""
    vec = as_ratvector(v)
    if is_zero_vector(vec):
        raise ValueError("cannot integerize the zero vector")
    mult = lcm(*(f.denominator for f in vec))
    ints = [int(f * mult) for f in vec]
    g = gcd(*(abs(x) for x in ints))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)

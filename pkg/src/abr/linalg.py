"""Exact rational linear algebra.

Scalars are ``fractions.Fraction`` throughout; Fraction keeps numerator and
denominator reduced with a positive denominator, so equality is structural
and results are canonical.  Floats are rejected everywhere: a binary float
smuggled into an exact pipeline silently poisons every determinant sign
downstream.

The determinant clears denominators column by column and then runs
fraction-free (Bareiss) elimination over plain Python integers.  Column
clearing matters: the matrices built elsewhere in this package have columns
that share one point's denominator, while a row mixes denominators of every
point, so per-column scales stay small where per-row scales would explode.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    BadIndicesError,
    BadShapeError,
    InvariantError,
    NonSquareError,
    ParseError,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def as_fraction(value):
    """Coerce ints, Fractions and Fraction-like exact values; reject floats."""
    if isinstance(value, float):
        raise InvariantError(
            f"floating point value {value!r} is not exact; use Fraction or int"
        )
    return Fraction(value)


def parse_rational(text):
    """Parse 'p/q' or 'p' (decimal digits, optional sign) into a Fraction."""
    if not isinstance(text, str):
        raise ParseError(f"rational must be a string, got {type(text).__name__}")
    if not _RATIONAL_RE.match(text):
        raise ParseError(f"malformed rational {text!r}; expected 'p/q' or 'p'")
    return Fraction(text)


def format_rational(value):
    """Render a Fraction as 'p/q' (always with the denominator)."""
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


class Sign(enum.IntEnum):
    """Sign of an exact scalar; integer values give the natural total order
    NEGATIVE < ZERO < POSITIVE."""

    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value):
        value = as_fraction(value)
        if value > 0:
            return cls.POSITIVE
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major matrix of exact rationals."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise InvariantError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise InvariantError("matrix rows are ragged")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @classmethod
    def identity(cls, n):
        return cls(tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n))
            for i in range(n)
        ))

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def delete_columns(self, *drop):
        """New matrix with the given columns removed, order preserved."""
        if len(set(drop)) != len(drop):
            raise BadIndicesError(f"repeated column indices {drop}")
        if any(j < 0 or j >= self.cols for j in drop):
            raise BadIndicesError(f"column indices {drop} out of range for {self.cols} columns")
        keep = [j for j in range(self.cols) if j not in drop]
        if not keep:
            raise BadIndicesError("cannot delete every column")
        return Matrix(tuple(tuple(row[j] for j in keep) for row in self.entries))

    def mul_vector(self, vec):
        """Matrix-vector product, exact."""
        vec = tuple(as_fraction(v) for v in vec)
        if len(vec) != self.cols:
            raise BadShapeError(f"vector length {len(vec)} != {self.cols} columns")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols)) for row in self.entries)


def _int_det_bareiss(grid):
    """Determinant of a square integer matrix by fraction-free elimination.

    All intermediate divisions are exact (they divide by the previous pivot),
    so the computation stays in the integers.
    """
    n = len(grid)
    a = [list(row) for row in grid]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m):
    """Exact determinant of a square Matrix."""
    if m.rows != m.cols:
        raise NonSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    scale = 1
    columns = []
    for j in range(n):
        col = m.column(j)
        mult = lcm(*(x.denominator for x in col)) if n > 1 else col[0].denominator
        scale *= mult
        columns.append([x.numerator * (mult // x.denominator) for x in col])
    grid = [[columns[j][i] for j in range(n)] for i in range(n)]
    return Fraction(_int_det_bareiss(grid), scale)


def signed_minor_kernel(p):
    """Kernel vector of an n x (n+1) matrix from its column-deleted minors.

    Entry j is (-1)^j times the determinant of p with column j removed.  The
    result always satisfies p @ v = 0: appending any row of p to p itself
    gives a square matrix with a repeated row, and expanding its zero
    determinant along that row is exactly this dot product.
    """
    if p.cols != p.rows + 1:
        raise BadShapeError(f"expected n x (n+1), got {p.rows}x{p.cols}")
    out = []
    for j in range(p.cols):
        minor = det(p.delete_columns(j))
        out.append(minor if j % 2 == 0 else -minor)
    return tuple(out)


def complementary_minors(q):
    """All maximal minors of an n x (n+2) matrix, keyed by the deleted pair.

    delta[(i, j)] for i < j is the determinant of q with columns i and j
    removed (remaining columns in their original order).
    """
    if q.cols != q.rows + 2:
        raise BadShapeError(f"expected n x (n+2), got {q.rows}x{q.cols}")
    if q.rows < 2:
        raise BadShapeError("need at least two rows")
    table = {}
    for i in range(q.cols):
        for j in range(i + 1, q.cols):
            table[(i, j)] = det(q.delete_columns(i, j))
    return table


def plucker_residual(q, indices):
    """Three-term quadratic residual of the complementary minors of q.

    For any four increasing column indices (i1, i2, i3, i4) of an
    n x (n+2) matrix, with d(a, b) the minor that deletes columns a and b,

        d(i1,i2) d(i3,i4) - d(i1,i3) d(i2,i4) + d(i1,i4) d(i2,i3)

    vanishes identically.  The function computes the six minors directly and
    returns the residual so the caller can assert it is zero.
    """
    if q.cols != q.rows + 2:
        raise BadShapeError(f"expected n x (n+2), got {q.rows}x{q.cols}")
    idx = tuple(indices)
    if len(idx) != 4:
        raise BadIndicesError(f"need exactly four indices, got {idx}")
    if any(not isinstance(i, int) or i < 0 or i >= q.cols for i in idx):
        raise BadIndicesError(f"indices {idx} out of range for {q.cols} columns")
    if not (idx[0] < idx[1] < idx[2] < idx[3]):
        raise BadIndicesError(f"indices {idx} must be strictly increasing")
    i1, i2, i3, i4 = idx

    def d(a, b):
        return det(q.delete_columns(a, b))

    return d(i1, i2) * d(i3, i4) - d(i1, i3) * d(i2, i4) + d(i1, i4) * d(i2, i3)

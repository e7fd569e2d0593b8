"""Dense matrices over the rationals: RREF, products, rank, kernels."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch


class RationalMatrix:
    """Immutable dense matrix of ``Fraction`` entries.

    Zero-row or zero-column shapes are allowed so that empty designs and
    empty kernels need no special casing by callers.
    """

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self.shape = (len(self.rows), width)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RationalMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns))

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RationalMatrix({self.shape[0]}x{self.shape[1]}: [{body}])"

    @property
    def T(self) -> "RationalMatrix":
        m, n = self.shape
        return RationalMatrix([[self.rows[i][j] for i in range(m)] for j in range(n)], m)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.shape[1])]

    def submatrix(self, rows=None, cols=None) -> "RationalMatrix":
        rows = range(self.shape[0]) if rows is None else rows
        cols = range(self.shape[1]) if cols is None else list(cols)
        return RationalMatrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[0] != other.shape[0]:
            raise DimensionMismatch(f"cannot stack {self.shape} beside {other.shape}")
        return RationalMatrix(
            [a + b for a, b in zip(self.rows, other.rows)], self.shape[1] + other.shape[1]
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return multiply(self, other)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.shape[1]:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.shape)


def as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def multiply(a, b) -> RationalMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bcols = b.columns()
    return RationalMatrix(
        [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bcols] for row in a.rows],
        b.shape[1],
    )


def rref(m) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the (increasing) pivot columns.

    The pivot in each column is the first row at or below the current one
    with a nonzero entry.
    """
    m = as_matrix(m)
    nrows, ncols = m.shape
    a = [list(r) for r in m.rows]
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        sel = next((i for i in range(row, nrows) if a[i][col] != 0), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        pv = a[row][col]
        if pv != 1:
            a[row] = [x / pv for x in a[row]]
        for i in range(nrows):
            f = a[i][col]
            if i != row and f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    return RationalMatrix(a, ncols), pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m) -> list[tuple[Fraction, ...]]:
    """Kernel basis, one vector per free column, in free-column order."""
    m = as_matrix(m)
    ncols = m.shape[1]
    r, pivots = rref(m)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r.rows[i][f]
        basis.append(tuple(v))
    return basis

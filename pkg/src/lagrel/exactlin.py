"""Dense exact linear algebra over any field from :mod:`lagrel.fields`.

Matrices are immutable row-major tables of field elements.  Row reduction uses
a fixed pivot rule (the first nonzero entry at or below the current row in
each column), so every result here is a deterministic function of its input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch
from .fields import Field

__all__ = [
    "Matrix",
    "RrefResult",
    "NoSolution",
    "Solution",
    "rref",
    "rank",
    "kernel",
    "solve",
    "is_injective",
    "is_surjective",
    "inverse",
]

Vector = tuple


class Matrix:
    """An immutable ``rows x cols`` matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: Field, data: Iterable[Sequence], cols: int | None = None):
        self.field = field
        rows = [tuple(field(v) for v in r) for r in data]
        if cols is None:
            if not rows:
                raise DimensionMismatch("column count required for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = tuple(rows)

    @classmethod
    def _wrap(cls, field: Field, rows: Sequence[tuple], cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field, m.rows, m.cols, m._data = field, len(rows), cols, tuple(rows)
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._wrap(field, [(z,) * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._wrap(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls(field, [[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.field, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Matrix[{self.field.tag}]({self.rows}x{self.cols}: {body})"

    def _same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shapes differ")
        return Matrix._wrap(
            self.field,
            [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, [tuple(-a for a in r) for r in self._data], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, k) -> "Matrix":
        return Matrix._wrap(self.field, [tuple(k * a for a in r) for r in self._data], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols_b = [other.column(j) for j in range(other.cols)]
        z = self.field.zero
        out = []
        for r in self._data:
            row = []
            for c in cols_b:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix._wrap(self.field, out, other.cols)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        z = self.field.zero
        out = []
        for r in self._data:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        return Matrix._wrap(
            self.field, [a + b for a, b in zip(self._data, other._data)], self.cols + other.cols
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return Matrix._wrap(self.field, self._data + other._data, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._wrap(
            self.field, [tuple(self._data[i][j] for j in cols) for i in rows], len(cols)
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with its pivots and ``transform @ A == rref``."""

    rref: Matrix
    pivots: tuple[int, ...]
    transform: Matrix

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _rref_rows(rows: list[list], ncols: int, track: list[list] | None = None, limit=None):
    """In-place Gauss-Jordan elimination on ``rows``; returns pivot columns.

    ``track`` receives the same row operations (used for the transform).
    Only the first ``limit`` columns are eligible as pivots.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols if limit is None else limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            if track is not None:
                track[r], track[p] = track[p], track[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [v * inv for v in rows[r]]
            if track is not None:
                track[r] = [v * inv for v in track[r]]
        pr = rows[r]
        tr = track[r] if track is not None else None
        for i in range(nrows):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [a - k * b if b else a for a, b in zip(rows[i], pr)]
                if track is not None:
                    track[i] = [a - k * b if b else a for a, b in zip(track[i], tr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Matrix) -> RrefResult:
    rows = [list(r) for r in A]
    track = [list(r) for r in Matrix.identity(A.field, A.rows)]
    pivots = _rref_rows(rows, A.cols, track)
    return RrefResult(
        Matrix._wrap(A.field, [tuple(r) for r in rows], A.cols),
        tuple(pivots),
        Matrix._wrap(A.field, [tuple(r) for r in track], A.rows),
    )


def rank(A: Matrix) -> int:
    rows = [list(r) for r in A]
    return len(_rref_rows(rows, A.cols))


def _kernel_from_rref(rows: list[list], pivots: list[int], ncols: int, field: Field):
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def kernel(A: Matrix) -> list[Vector]:
    """Basis of the null space, one vector per free column (in column order)."""
    rows = [list(r) for r in A]
    pivots = _rref_rows(rows, A.cols)
    return _kernel_from_rref(rows, pivots, A.cols, A.field)


class NoSolution:
    __slots__ = ()

    def __repr__(self):
        return "NoSolution"

    def __bool__(self):
        return False


NO_SOLUTION = NoSolution()


@dataclass(frozen=True)
class Solution:
    particular: Vector
    kernel_basis: tuple[Vector, ...]


def solve(A: Matrix, b: Sequence) -> Solution | NoSolution:
    """All solutions of ``A v = b`` as a particular solution plus a kernel basis."""
    if len(b) != A.rows:
        raise DimensionMismatch("right-hand side length does not match row count")
    f = A.field
    rows = [list(r) + [f(bi)] for r, bi in zip(A, b)]
    pivots = _rref_rows(rows, A.cols + 1, limit=A.cols)
    for r in rows[len(pivots):]:
        if r[-1]:
            return NO_SOLUTION
    part = [f.zero] * A.cols
    for i, p in enumerate(pivots):
        part[p] = rows[i][-1]
    basis = _kernel_from_rref([r[:-1] for r in rows], pivots, A.cols, f)
    return Solution(tuple(part), tuple(basis))


def is_injective(A: Matrix) -> bool:
    return rank(A) == A.cols


def is_surjective(A: Matrix) -> bool:
    return rank(A) == A.rows


def inverse(A: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ``DivisionByZero`` when singular."""
    from .errors import DivisionByZero

    if A.rows != A.cols:
        raise DimensionMismatch("only square matrices have inverses")
    n = A.rows
    rows = [list(r) for r in A]
    track = [list(r) for r in Matrix.identity(A.field, n)]
    if len(_rref_rows(rows, n, track)) != n:
        raise DivisionByZero("matrix is singular")
    return Matrix._wrap(A.field, [tuple(r) for r in track], n)

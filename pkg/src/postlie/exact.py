"""Exact rational arithmetic and dense linear algebra.

Rationals are :class:`fractions.Fraction` throughout; nothing in the package
ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot make a rational from {x!r}")


def fmt(q: Fraction) -> str:
    """Serialize as "p/q", or "p" when q == 1."""
    return str(Q(q))


def vec(values: Iterable) -> Vector:
    return tuple(Q(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero_vec(v: Sequence) -> bool:
    return all(x == 0 for x in v)


class Matrix:
    """Immutable dense matrix with Fraction entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = None):
        if entries is None:
            data = (Fraction(0),) * (rows * cols)
        else:
            data = tuple(Q(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int = None) -> "Matrix":
        if not columns:
            return cls(rows or 0, 0)
        n = len(columns[0])
        return cls(n, len(columns), [columns[c][r] for r in range(n) for c in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.to_str_rows()})"

    def to_str_rows(self) -> list[list[str]]:
        return [[fmt(x) for x in self.row(i)] for i in range(self.rows)]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            ocols = [other.column(j) for j in range(other.cols)]
            for i in range(self.rows):
                r = self.row(i)
                for c in ocols:
                    out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
            return Matrix(self.rows, other.cols, out)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def rank(self) -> int:
        return rref(self)[1]

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def flatten(self) -> Vector:
        return self.entries

    @classmethod
    def unflatten(cls, rows: int, cols: int, v: Sequence) -> "Matrix":
        return cls(rows, cols, v)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan; pivot = first nonzero entry in column order."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return Matrix(m.rows, m.cols, [x for row in rows for x in row]), len(pivots)


class Subspace:
    """A subspace of Q^n held by its unique reduced row-echelon basis.

    Two subspaces are equal exactly when their bases are identical.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [list(vec(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        rows, pivots = _rref_rows(rows, ambient_dim)
        basis = tuple(tuple(rows[i]) for i in range(len(pivots)))
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b) if x != 0) for b in self.basis]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim \
            and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of v after clearing the pivot coordinates."""
        v = list(vec(v))
        for b, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [a - f * x for a, x in zip(v, b)]
        return tuple(v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of v in the echelon basis; raises if v is not inside."""
        v = vec(v)
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def intersection(self, other: "Subspace") -> "Subspace":
        n = self.ambient_dim
        k1 = self.dim
        # a.B1 - b.B2 = 0
        cols = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        if not cols:
            return Subspace(n)
        m = Matrix(n, len(cols), [cols[c][r] for r in range(n) for c in range(len(cols))])
        ker = kernel_basis(m)
        out = []
        for kv in ker.basis:
            out.append(tuple(sum((kv[i] * self.basis[i][r] for i in range(k1)), Fraction(0))
                             for r in range(n)))
        return Subspace(n, out)

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]


def kernel_basis(m: Matrix) -> Subspace:
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        out.append(v)
    return Subspace(m.cols, out)


def solve_affine(a: Matrix, b: Sequence):
    """Solve a.v = b.

    Returns None when b is outside the column space, else
    ``(particular, homogeneous)`` where particular has all free coordinates 0.
    """
    b = vec(b)
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    aug = [list(a.row(i)) + [b[i]] for i in range(a.rows)]
    rows, pivots = _rref_rows(aug, a.cols + 1)
    if a.cols in pivots:
        return None
    particular = [Fraction(0)] * a.cols
    for r, p in enumerate(pivots):
        particular[p] = rows[r][a.cols]
    return tuple(particular), kernel_basis(a)


def matrix_from_equations(equations: Sequence[dict], nunknowns: int) -> Matrix:
    """Build a coefficient matrix from rows given as {unknown_index: coeff}."""
    entries = []
    for eq in equations:
        row = [Fraction(0)] * nunknowns
        for idx, c in eq.items():
            row[idx] += c
        entries.extend(row)
    return Matrix(len(equations), nunknowns, entries)


def span_of_matrices(mats: Iterable[Matrix], rows: int, cols: int) -> Subspace:
    return Subspace(rows * cols, [m.flatten() for m in mats])


def matrices_of(space: Subspace, rows: int, cols: int) -> list[Matrix]:
    return [Matrix(rows, cols, b) for b in space.basis]

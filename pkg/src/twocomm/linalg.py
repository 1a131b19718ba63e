"""Dense exact linear algebra over a :class:`~twocomm.fields.Field`.

Vectors are tuples of field values. Elimination picks, in each column, the
candidate pivot of smallest height so rational entries stay small.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, NotInvertible
from .fields import Field, height

__all__ = [
    "Matrix",
    "SubspaceBasis",
    "rref",
    "rank",
    "kernel_basis",
    "solve_linear",
    "intersect_subspaces",
    "span_sum",
    "independent_subset",
]


class Matrix:
    """Immutable dense matrix with entries in one exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix dimensions must be positive")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, field, rows):
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0])
        return m

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int, field: Field) -> "Matrix":
        z = field.zero
        return cls._raw(field, tuple((z,) * c for _ in range(r)))

    @classmethod
    def from_columns(cls, field: Field, cols) -> "Matrix":
        cols = list(cols)
        return cls(field, list(zip(*cols)))

    @classmethod
    def diag(cls, field: Field, entries) -> "Matrix":
        entries = [field(x) for x in entries]
        n = len(entries)
        z = field.zero
        return cls._raw(field, tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def _check_same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field != self.field:
            raise DimensionError("matrices over different fields")

    def __add__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(
            self.field,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __sub__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._raw(
            self.field,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __neg__(self):
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other):
        self._check_same(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        z = self.field.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(self.field, tuple(out))

    def apply(self, v):
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionError("vector length mismatch")
        v = [self.field(x) for x in v]
        z = self.field.zero
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self.rows)))

    def conj_transpose(self) -> "Matrix":
        if self.field.kind != "QI":
            return self.transpose()
        return Matrix._raw(self.field, tuple(tuple(x.conjugate() for x in r) for r in zip(*self.rows)))

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionError("trace of non-square matrix")
        s = self.field.zero
        for i in range(self.nrows):
            s = s + self.rows[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(self.field, tuple(out))

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise DimensionError("inverse of non-square matrix")
        aug = Matrix._raw(
            self.field,
            tuple(r + Matrix.identity(n, self.field).rows[i] for i, r in enumerate(self.rows)),
        )
        R, piv = rref(aug)
        if len(piv) < n or piv[n - 1] != n - 1:
            raise NotInvertible("singular matrix")
        return Matrix._raw(self.field, tuple(r[n:] for r in R.rows[:n]))

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise DimensionError("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        d = self.field.one
        for c in range(n):
            p = _choose_pivot(rows, c, c)
            if p is None:
                return self.field.zero
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            piv = rows[c][c]
            d = d * piv
            for r in range(c + 1, n):
                f = rows[r][c]
                if f:
                    f = f / piv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return d

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.field.tag}, {[list(r) for r in self.rows]!r})"

    def to_json(self):
        return [[self.field.to_json(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data) -> "Matrix":
        return cls(field, [[field.from_json(x) for x in r] for r in data])


@dataclass(frozen=True)
class SubspaceBasis:
    """A linearly independent list of coordinate vectors."""

    ambient_dim: int
    vectors: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def _choose_pivot(rows, col, start):
    best, best_h = None, None
    for r in range(start, len(rows)):
        x = rows[r][col]
        if x:
            h = height(x)
            if best is None or h < best_h:
                best, best_h = r, h
                if h <= 1:
                    break
    return best


def rref(M: Matrix):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    rows = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        p = _choose_pivot(rows, c, r)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return Matrix._raw(M.field, tuple(tuple(x) for x in rows)), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> SubspaceBasis:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    R, pivots = rref(M)
    F = M.field
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = -R.rows[i][f]
        vecs.append(tuple(v))
    return SubspaceBasis(M.ncols, tuple(vecs))


def solve_linear(M: Matrix, b):
    """A solution ``x`` of ``M x = b``, or ``None`` when ``b`` is outside the column space.

    Free variables are set to zero.
    """
    if len(b) != M.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {M.nrows}")
    F = M.field
    aug = Matrix._raw(F, tuple(r + (F(x),) for r, x in zip(M.rows, b)))
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [F.zero] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][-1]
    return tuple(x)


def independent_subset(field: Field, ambient_dim: int, vectors) -> SubspaceBasis:
    """Row-reduce ``vectors`` to an independent spanning set (echelon basis)."""
    vectors = [tuple(field(x) for x in v) for v in vectors]
    if not vectors:
        return SubspaceBasis(ambient_dim, ())
    R, piv = rref(Matrix(field, vectors))
    return SubspaceBasis(ambient_dim, tuple(R.rows[i] for i in range(len(piv))))


def span_sum(field: Field, U: SubspaceBasis, V: SubspaceBasis) -> SubspaceBasis:
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    return independent_subset(field, U.ambient_dim, list(U.vectors) + list(V.vectors))


def intersect_subspaces(field: Field, U: SubspaceBasis, V: SubspaceBasis) -> SubspaceBasis:
    """Basis of ``U ∩ V`` from the kernel of ``[U | -V]``."""
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError(
            f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}"
        )
    n = U.ambient_dim
    if not U.vectors or not V.vectors:
        return SubspaceBasis(n, ())
    cols = list(U.vectors) + [tuple(-x for x in v) for v in V.vectors]
    K = kernel_basis(Matrix.from_columns(field, cols))
    r = len(U.vectors)
    out = []
    for k in K.vectors:
        w = [field.zero] * n
        for coef, u in zip(k[:r], U.vectors):
            if coef:
                w = [a + coef * b for a, b in zip(w, u)]
        out.append(tuple(w))
    return independent_subset(field, n, out)

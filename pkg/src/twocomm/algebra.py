"""Concrete simple algebras M_m(F), quaternion algebras (a, b)_Q and M_m((a, b)_Q).

Elements are coordinate vectors in a fixed basis:

* quaternions: ``(1, i, j, k)`` with ``i^2 = a``, ``j^2 = b``, ``ij = k = -ji``;
* matrices over a field: matrix units ``e_rs`` in row-major order;
* matrices over a quaternion algebra: ``e_rs ⊗ (1, i, j, k)``, row-major
  and then quaternion coordinate.

Multiplication uses closed formulas. :func:`structure_constants` builds the
sparse multiplication table from the basis rules separately; the certificate
verifier multiplies through that table so that it does not share code with
the constructions it checks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorMismatch, DimensionError, NotInvertible
from .fields import QQ, Field, ModP
from .linalg import Matrix, SubspaceBasis, independent_subset, solve_linear

KINDS = ("MatrixOverField", "Quaternion", "MatrixOverQuaternion")


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    m: int = 1
    a: int | None = None
    b: int | None = None
    field: Field = QQ

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"matrix size must be a positive integer, got {self.m!r}")
        if self.kind == "MatrixOverField":
            if self.a is not None or self.b is not None:
                raise ValueError("matrix algebras over a field take no (a, b)")
        else:
            if self.kind == "Quaternion" and self.m != 1:
                raise ValueError("Quaternion kind has m = 1")
            if self.field != QQ:
                raise ValueError("quaternion algebras are supported over Q only")
            for v in (self.a, self.b):
                if not isinstance(v, int) or isinstance(v, bool) or v >= 0:
                    raise ValueError("quaternion parameters a, b must be negative integers")

    @property
    def degree(self) -> int:
        """Degree n of the division part D (1 for D = F, 2 for quaternions)."""
        return 1 if self.kind == "MatrixOverField" else 2

    @property
    def dim(self) -> int:
        return self.m * self.m * self.degree * self.degree

    @property
    def division_part(self) -> "AlgebraDescriptor":
        if self.kind == "MatrixOverField":
            raise DescriptorMismatch("matrix algebra over a field has no quaternion part")
        return AlgebraDescriptor("Quaternion", 1, self.a, self.b)

    def to_json(self):
        d = {"kind": self.kind, "m": self.m, "field": self.field.tag}
        if self.kind != "MatrixOverField":
            d["a"] = self.a
            d["b"] = self.b
        return d

    @classmethod
    def from_json(cls, d):
        kind = d["kind"]
        field = Field.from_tag(d.get("field", "Q"))
        if kind == "MatrixOverField":
            return cls(kind, int(d["m"]), field=field)
        return cls(kind, int(d.get("m", 1)), d["a"], d["b"], field)


def matrix_algebra(m: int, field: Field = QQ) -> AlgebraDescriptor:
    return AlgebraDescriptor("MatrixOverField", m, field=field)


def quaternion_algebra(a: int = -1, b: int = -1) -> AlgebraDescriptor:
    return AlgebraDescriptor("Quaternion", 1, a, b)


def matrix_quaternion_algebra(m: int, a: int = -1, b: int = -1) -> AlgebraDescriptor:
    return AlgebraDescriptor("MatrixOverQuaternion", m, a, b)


HAMILTON = quaternion_algebra(-1, -1)


class AlgebraElement:
    """An element of a structure-constant algebra, given by its coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: AlgebraDescriptor, coords):
        F = algebra.field
        coords = tuple(F(c) for c in coords)
        if len(coords) != algebra.dim:
            raise DimensionError(
                f"{algebra.kind} of dimension {algebra.dim} got {len(coords)} coordinates"
            )
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def _raw(cls, algebra, coords):
        x = object.__new__(cls)
        x.algebra = algebra
        x.coords = coords
        return x

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.algebra != self.algebra:
            raise DescriptorMismatch(f"{self.algebra} vs {other.algebra}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgebraElement._raw(self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgebraElement._raw(self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement._raw(self.algebra, tuple(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, ModP)):
            c = self.algebra.field(other)
            return AlgebraElement._raw(self.algebra, tuple(c * x for x in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / self.algebra.field(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"AlgebraElement({self.algebra.kind}, {format_element(self)})"

    def to_json(self):
        F = self.algebra.field
        return {"algebra": self.algebra.to_json(), "coords": [F.to_json(c) for c in self.coords]}

    @classmethod
    def from_json(cls, d):
        alg = AlgebraDescriptor.from_json(d["algebra"])
        coords = d["coords"]
        if not isinstance(coords, list):
            raise ValueError("coords must be a list")
        return cls(alg, [alg.field.from_json(c) for c in coords])


_UNITS = ("", "i", "j", "k")


def format_element(x: AlgebraElement) -> str:
    alg = x.algebra
    if alg.kind == "Quaternion":
        out = ""
        for q, c in enumerate(x.coords):
            if not c:
                continue
            mag = abs(c)
            term = str(mag) if not q else (_UNITS[q] if mag == 1 else f"{mag}{_UNITS[q]}")
            if not out:
                out = ("-" if c < 0 else "") + term
            else:
                out += (" - " if c < 0 else " + ") + term
        return out or "0"
    if alg.kind == "MatrixOverField":
        m = alg.m
        return str([[str(x.coords[r * m + s]) for s in range(m)] for r in range(m)])
    m = alg.m
    return str([[format_element(entry(x, r, s)) for s in range(m)] for r in range(m)])


# ---------------------------------------------------------------------------
# constructors


def element(algebra: AlgebraDescriptor, coords) -> AlgebraElement:
    return AlgebraElement(algebra, coords)


def zero(algebra: AlgebraDescriptor) -> AlgebraElement:
    return AlgebraElement._raw(algebra, (algebra.field.zero,) * algebra.dim)


def one(algebra: AlgebraDescriptor) -> AlgebraElement:
    F = algebra.field
    c = [F.zero] * algebra.dim
    step = algebra.degree * algebra.degree
    for r in range(algebra.m):
        c[(r * algebra.m + r) * step] = F.one
    return AlgebraElement._raw(algebra, tuple(c))


def scalar(algebra: AlgebraDescriptor, lam) -> AlgebraElement:
    return one(algebra) * algebra.field(lam)


def basis(algebra: AlgebraDescriptor):
    F = algebra.field
    out = []
    for idx in range(algebra.dim):
        c = [F.zero] * algebra.dim
        c[idx] = F.one
        out.append(AlgebraElement._raw(algebra, tuple(c)))
    return out


def quaternion(algebra: AlgebraDescriptor, w=0, x=0, y=0, z=0) -> AlgebraElement:
    if algebra.kind != "Quaternion":
        raise DescriptorMismatch("quaternion() needs a Quaternion descriptor")
    return AlgebraElement(algebra, (w, x, y, z))


def matrix_unit(algebra: AlgebraDescriptor, r: int, s: int, d: AlgebraElement | None = None):
    """``e_rs`` (times ``d`` in D for quaternionic matrices)."""
    m = algebra.m
    F = algebra.field
    c = [F.zero] * algebra.dim
    if algebra.kind == "MatrixOverField":
        c[r * m + s] = F.one
    elif algebra.kind == "MatrixOverQuaternion":
        q = d.coords if d is not None else (F.one, F.zero, F.zero, F.zero)
        c[(r * m + s) * 4:(r * m + s) * 4 + 4] = q
    else:
        raise DescriptorMismatch("matrix units need a matrix kind")
    return AlgebraElement._raw(algebra, tuple(c))


def entry(x: AlgebraElement, r: int, s: int) -> AlgebraElement:
    """The (r, s) entry of a quaternionic matrix, as an element of D."""
    alg = x.algebra
    if alg.kind != "MatrixOverQuaternion":
        raise DescriptorMismatch("entry() needs a MatrixOverQuaternion element")
    i = (r * alg.m + s) * 4
    return AlgebraElement._raw(alg.division_part, x.coords[i:i + 4])


def from_entries(algebra: AlgebraDescriptor, entries) -> AlgebraElement:
    """Quaternionic matrix from an m×m nested list of D-elements."""
    coords = []
    for row in entries:
        for q in row:
            coords.extend(q.coords)
    return AlgebraElement(algebra, coords)


def as_matrix(x: AlgebraElement) -> Matrix:
    alg = x.algebra
    if alg.kind != "MatrixOverField":
        raise DescriptorMismatch("as_matrix() needs a MatrixOverField element")
    m = alg.m
    return Matrix._raw(alg.field, tuple(x.coords[r * m:(r + 1) * m] for r in range(m)))


def from_matrix(algebra: AlgebraDescriptor, M: Matrix) -> AlgebraElement:
    if algebra.kind != "MatrixOverField" or M.shape != (algebra.m, algebra.m):
        raise DimensionError("matrix shape does not match the algebra")
    return AlgebraElement(algebra, [v for r in M.rows for v in r])


def random_element(algebra: AlgebraDescriptor, rng: random.Random, max_height: int = 10):
    """Coordinates ``p/q`` with ``|p| <= max_height`` and ``1 <= q <= max_height``."""
    F = algebra.field
    if F.kind == "Fp":
        return AlgebraElement(algebra, [rng.randrange(F.p) for _ in range(algebra.dim)])
    return AlgebraElement(
        algebra,
        [Fraction(rng.randint(-max_height, max_height), rng.randint(1, max_height))
         for _ in range(algebra.dim)],
    )


# ---------------------------------------------------------------------------
# multiplication


def _qmul(x, y, a, b):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    alg = x.algebra
    if y.algebra != alg:
        raise DescriptorMismatch(f"cannot multiply {alg} by {y.algebra}")
    if alg.kind == "Quaternion":
        return AlgebraElement._raw(alg, _qmul(x.coords, y.coords, alg.a, alg.b))
    m = alg.m
    z = alg.field.zero
    if alg.kind == "MatrixOverField":
        X, Y = x.coords, y.coords
        out = []
        for r in range(m):
            for s in range(m):
                acc = z
                for t in range(m):
                    u, v = X[r * m + t], Y[t * m + s]
                    if u and v:
                        acc = acc + u * v
                out.append(acc)
        return AlgebraElement._raw(alg, tuple(out))
    a, b = alg.a, alg.b
    X = [x.coords[i:i + 4] for i in range(0, alg.dim, 4)]
    Y = [y.coords[i:i + 4] for i in range(0, alg.dim, 4)]
    out = []
    for r in range(m):
        for s in range(m):
            acc = (z, z, z, z)
            for t in range(m):
                u, v = X[r * m + t], Y[t * m + s]
                if any(u) and any(v):
                    p = _qmul(u, v, a, b)
                    acc = (acc[0] + p[0], acc[1] + p[1], acc[2] + p[2], acc[3] + p[3])
            out.extend(acc)
    return AlgebraElement._raw(alg, tuple(out))


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return multiply(x, y) - multiply(y, x)


def reduced_trace(x: AlgebraElement):
    alg = x.algebra
    if alg.kind == "Quaternion":
        return 2 * x.coords[0]
    m = alg.m
    s = alg.field.zero
    if alg.kind == "MatrixOverField":
        for r in range(m):
            s = s + x.coords[r * m + r]
        return s
    for r in range(m):
        s = s + 2 * x.coords[(r * m + r) * 4]
    return s


def conjugate(x: AlgebraElement) -> AlgebraElement:
    """Quaternion conjugate ``x0 - x1 i - x2 j - x3 k``."""
    if x.algebra.kind != "Quaternion":
        raise DescriptorMismatch("conjugate() needs a quaternion")
    c = x.coords
    return AlgebraElement._raw(x.algebra, (c[0], -c[1], -c[2], -c[3]))


def quaternion_norm(x: AlgebraElement):
    """Reduced norm ``x0² - a x1² - b x2² + ab x3²``."""
    alg = x.algebra
    if alg.kind != "Quaternion":
        raise DescriptorMismatch("quaternion_norm() needs a quaternion")
    x0, x1, x2, x3 = x.coords
    a, b = alg.a, alg.b
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def left_mult_operator(x: AlgebraElement) -> Matrix:
    """Matrix of ``y -> x y`` in algebra coordinates."""
    cols = [multiply(x, e).coords for e in basis(x.algebra)]
    return Matrix.from_columns(x.algebra.field, cols)


def right_mult_operator(x: AlgebraElement) -> Matrix:
    cols = [multiply(e, x).coords for e in basis(x.algebra)]
    return Matrix.from_columns(x.algebra.field, cols)


def ad_operator(u: AlgebraElement) -> Matrix:
    """Matrix of ``y -> [u, y]`` in algebra coordinates."""
    cols = [commutator(u, e).coords for e in basis(u.algebra)]
    return Matrix.from_columns(u.algebra.field, cols)


def inverse(x: AlgebraElement) -> AlgebraElement:
    """Two-sided inverse; raises :class:`NotInvertible` for singular ``x``."""
    alg = x.algebra
    if alg.kind == "Quaternion":
        n = quaternion_norm(x)
        if n == 0:
            assert x.is_zero(), "nonzero quaternion with zero norm in a division algebra"
            raise NotInvertible("zero has no inverse")
        return conjugate(x) * (1 / n)
    if alg.kind == "MatrixOverField":
        return from_matrix(alg, as_matrix(x).inverse())
    y = solve_linear(left_mult_operator(x), one(alg).coords)
    if y is None:
        raise NotInvertible("singular quaternionic matrix")
    return AlgebraElement._raw(alg, y)


def is_invertible(x: AlgebraElement) -> bool:
    try:
        inverse(x)
    except NotInvertible:
        return False
    return True


def is_central(x: AlgebraElement) -> bool:
    return all(commutator(x, e).is_zero() for e in basis(x.algebra))


def is_field(algebra: AlgebraDescriptor) -> bool:
    return algebra.kind == "MatrixOverField" and algebra.m == 1


def kronecker_embed(t: Matrix, d: AlgebraElement, algebra: AlgebraDescriptor | None = None):
    """``t ⊗ d``: the quaternionic matrix with (r, s) entry ``t_rs d``.

    With a 1×1 ``t`` and no target algebra the result stays in D.
    """
    D = d.algebra
    if D.kind != "Quaternion":
        raise DescriptorMismatch("kronecker_embed() needs d in a quaternion algebra")
    if t.nrows != t.ncols:
        raise DimensionError("t must be square")
    if algebra is None:
        algebra = D if t.nrows == 1 else matrix_quaternion_algebra(t.nrows, D.a, D.b)
    if algebra.kind == "Quaternion":
        if t.nrows != 1:
            raise DimensionError("t must be 1×1 to embed into D itself")
        return d * D.field(t[0, 0])
    if algebra.kind != "MatrixOverQuaternion" or algebra.m != t.nrows:
        raise DimensionError(f"t is {t.nrows}×{t.nrows} but target is {algebra}")
    if algebra.division_part != D:
        raise DescriptorMismatch("d lives in a different quaternion algebra")
    coords = []
    for row in t.rows:
        for tv in row:
            coords.extend(tv * c for c in d.coords)
    return AlgebraElement._raw(algebra, tuple(coords))


@dataclass(frozen=True)
class SubfieldBasis:
    """F-basis of a commutative subfield, listed with the identity first."""

    algebra: AlgebraDescriptor
    elements: tuple

    @property
    def dim(self) -> int:
        return len(self.elements)


def subfield_containing(d: AlgebraElement):
    """A maximal subfield ``L`` of a quaternion division algebra containing ``d``.

    Returns ``(L, u)`` with ``L = F(u)``. Noncentral ``d`` gives ``u = d``;
    central ``d`` falls back to ``u = i``.
    """
    alg = d.algebra
    if alg.kind != "Quaternion":
        raise DescriptorMismatch("subfield_containing() needs a quaternion division algebra")
    u = d if not is_central(d) else quaternion(alg, 0, 1, 0, 0)
    return SubfieldBasis(alg, (one(alg), u)), u


def membership_coords(x: AlgebraElement, B):
    """Coordinates of ``x`` in the span of elements ``B``, or None."""
    M = Matrix.from_columns(x.algebra.field, [e.coords for e in B])
    return solve_linear(M, x.coords)


def image_basis(M: Matrix) -> SubspaceBasis:
    """Echelon basis of the column space of ``M``."""
    return independent_subset(M.field, M.nrows, M.columns())


# ---------------------------------------------------------------------------
# structure constants (independent multiplication path)

# product of quaternion units: (p, q) -> (coefficient as (const, a-power, b-power), unit)
_QTABLE = {
    (0, 0): ((1, 0, 0), 0), (0, 1): ((1, 0, 0), 1), (0, 2): ((1, 0, 0), 2), (0, 3): ((1, 0, 0), 3),
    (1, 0): ((1, 0, 0), 1), (2, 0): ((1, 0, 0), 2), (3, 0): ((1, 0, 0), 3),
    (1, 1): ((1, 1, 0), 0), (2, 2): ((1, 0, 1), 0), (3, 3): ((-1, 1, 1), 0),
    (1, 2): ((1, 0, 0), 3), (2, 1): ((-1, 0, 0), 3),
    (1, 3): ((1, 1, 0), 2), (3, 1): ((-1, 1, 0), 2),
    (2, 3): ((-1, 0, 1), 1), (3, 2): ((1, 0, 1), 1),
}


def structure_constants(algebra: AlgebraDescriptor):
    """Sparse table ``{(p, q): [(r, c_pq^r), ...]}`` of basis products."""
    F = algebra.field
    table = {}
    if algebra.kind == "Quaternion":
        for (p, q), ((c, ea, eb), r) in _QTABLE.items():
            table[(p, q)] = [(r, F(c * algebra.a ** ea * algebra.b ** eb))]
        return table
    m = algebra.m
    if algebra.kind == "MatrixOverField":
        for r in range(m):
            for s in range(m):
                for u in range(m):
                    table[(r * m + s, s * m + u)] = [(r * m + u, F.one)]
        return table
    for r in range(m):
        for s in range(m):
            for u in range(m):
                for (p, q), ((c, ea, eb), w) in _QTABLE.items():
                    coef = F(c * algebra.a ** ea * algebra.b ** eb)
                    table[((r * m + s) * 4 + p, (s * m + u) * 4 + q)] = [((r * m + u) * 4 + w, coef)]
    return table


def multiply_sc(x: AlgebraElement, y: AlgebraElement, table=None) -> AlgebraElement:
    """Product computed by contracting the structure-constant table."""
    alg = x.algebra
    if y.algebra != alg:
        raise DescriptorMismatch("operands from different algebras")
    if table is None:
        table = structure_constants(alg)
    out = [alg.field.zero] * alg.dim
    xs = [(i, c) for i, c in enumerate(x.coords) if c]
    ys = [(j, c) for j, c in enumerate(y.coords) if c]
    for i, xc in xs:
        for j, yc in ys:
            for k, coef in table.get((i, j), ()):
                out[k] = out[k] + coef * xc * yc
    return AlgebraElement._raw(alg, tuple(out))

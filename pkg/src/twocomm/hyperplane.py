"""Factor elements of M_m(D) as products of two elements of a hyperplane.

Given a linear functional ``tau`` on ``A = M_m(D)`` (D a quaternion division
algebra) and an invertible ``t`` in ``M_m(F)``, every nonzero ``a`` is written
as ``a = h1 h2`` with ``tau(h1) = tau(h2) = 0``, ``h1 = a (t^-1 ⊗ d0^-1 k0)``
and ``h2 = t ⊗ k0^-1 d0``, where ``K`` is a maximal subfield of D:

1. ``d0 != 0`` is chosen with ``tau(t ⊗ k d0) = 0`` for all ``k`` in ``K``
   (a kernel vector of the ``n × n²`` map ``d -> (k -> tau(t ⊗ k d))``);
2. ``k0 != 0`` is chosen in ``K`` with ``tau(a (t^-1 ⊗ d0^-1 k0)) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import algebra as al
from .algebra import AlgebraDescriptor, AlgebraElement, SubfieldBasis
from .errors import DescriptorMismatch, DimensionError, NotInvertible, Unsupported, ZeroElement
from .fields import height
from .linalg import Matrix, kernel_basis, solve_linear


@dataclass(frozen=True)
class LinearFunctional:
    """``tau(x) = coeffs · coords(x)``."""

    algebra: AlgebraDescriptor
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise DimensionError("functional length does not match the algebra")
        object.__setattr__(self, "coeffs", tuple(self.algebra.field(c) for c in self.coeffs))

    def __call__(self, x: AlgebraElement):
        if x.algebra != self.algebra:
            raise DescriptorMismatch("functional applied to an element of another algebra")
        s = self.algebra.field.zero
        for c, v in zip(self.coeffs, x.coords):
            if c and v:
                s = s + c * v
        return s

    def to_json(self):
        F = self.algebra.field
        return {"algebra": self.algebra.to_json(), "coeffs": [F.to_json(c) for c in self.coeffs]}


def reduced_trace_functional(algebra: AlgebraDescriptor) -> LinearFunctional:
    return LinearFunctional(algebra, tuple(al.reduced_trace(e) for e in al.basis(algebra)))


def default_subfield(D: AlgebraDescriptor) -> SubfieldBasis:
    """``K = Q(i)`` inside D."""
    return SubfieldBasis(D, (al.one(D), al.quaternion(D, 0, 1, 0, 0)))


@dataclass(frozen=True)
class HyperplaneFactorization:
    a: AlgebraElement
    h1: AlgebraElement
    h2: AlgebraElement
    tau: LinearFunctional
    t: Matrix
    d0: AlgebraElement
    k0: AlgebraElement
    K: SubfieldBasis

    def checks(self):
        """Exact verification of every invariant, as named booleans."""
        d = al.multiply(al.inverse(self.k0), self.d0)
        return {
            "product": al.multiply(self.h1, self.h2) == self.a,
            "tau_h1_zero": self.tau(self.h1) == 0,
            "tau_h2_zero": self.tau(self.h2) == 0,
            "h2_kronecker_form": kronecker_coords(self.h2, self.t) == d.coords,
            "h1_form": self.h1 == al.multiply(
                self.a, _kron(self.t.inverse(), al.multiply(al.inverse(self.d0), self.k0), self.a.algebra)
            ),
            "d0_kernel": all(
                self.tau(_kron(self.t, al.multiply(k, self.d0), self.a.algebra)) == 0
                for k in self.K.elements
            ),
            "d_nonzero": not d.is_zero(),
        }

    @property
    def verified(self) -> bool:
        return all(self.checks().values())

    def to_json(self):
        return {
            "a": self.a.to_json(),
            "h1": self.h1.to_json(),
            "h2": self.h2.to_json(),
            "tau": self.tau.to_json(),
            "t": self.t.to_json(),
            "d0": self.d0.to_json(),
            "k0": self.k0.to_json(),
            "K": [k.to_json() for k in self.K.elements],
            "checks": self.checks(),
            "verified": self.verified,
        }


def _kron(t: Matrix, d: AlgebraElement, target: AlgebraDescriptor) -> AlgebraElement:
    return al.kronecker_embed(t, d, target)


def _require_quaternionic(algebra: AlgebraDescriptor):
    if algebra.kind == "MatrixOverField":
        raise Unsupported("hyperplane factorization needs D of degree n > 1 (quaternionic D)")


def _check_t(t: Matrix, algebra: AlgebraDescriptor):
    if t.shape != (algebra.m, algebra.m):
        raise DimensionError(f"t must be {algebra.m}×{algebra.m}")
    if t.field != algebra.field:
        raise DescriptorMismatch("t must have entries in the base field")
    if t.det() == 0:
        raise NotInvertible("t must be invertible")


def find_d0(tau: LinearFunctional, t: Matrix, K: SubfieldBasis | None = None) -> AlgebraElement:
    """Nonzero ``d0`` in D with ``tau(t ⊗ k d0) = 0`` for every ``k`` in ``K``."""
    A = tau.algebra
    _require_quaternionic(A)
    _check_t(t, A)
    D = A.division_part
    if K is None:
        K = default_subfield(D)
    E = al.basis(D)
    rows = [[tau(_kron(t, al.multiply(k, e), A)) for e in E] for k in K.elements]
    ker = kernel_basis(Matrix(A.field, rows))
    # dim D = n² > n = dim K* guarantees a nonzero kernel
    assert ker.dim > 0
    return AlgebraElement(D, ker.vectors[0])


def _smallest(vectors):
    return min(vectors, key=lambda v: (sum(height(x) for x in v), vectors.index(v)))


def hyperplane_factorize(
    a: AlgebraElement,
    tau: LinearFunctional | None = None,
    t: Matrix | None = None,
    K: SubfieldBasis | None = None,
) -> HyperplaneFactorization:
    A = a.algebra
    _require_quaternionic(A)
    if tau is None:
        tau = reduced_trace_functional(A)
    if t is None:
        t = Matrix.identity(A.m, A.field)
    if tau.algebra != A:
        raise DescriptorMismatch("functional and element live in different algebras")
    if a.is_zero():
        raise ZeroElement("a = 0 has the trivial factorization 0 = 0·0")
    D = A.division_part
    if K is None:
        K = default_subfield(D)
    d0 = find_d0(tau, t, K)
    d0_inv = al.inverse(d0)
    t_inv = t.inverse()
    # k -> tau(a (t^-1 ⊗ d0^-1 k)) is a functional on the n-dimensional K
    row = [tau(al.multiply(a, _kron(t_inv, al.multiply(d0_inv, k), A))) for k in K.elements]
    ker = kernel_basis(Matrix(A.field, [row]))
    coeffs = _smallest(list(ker.vectors))
    k0 = al.zero(D)
    for c, k in zip(coeffs, K.elements):
        k0 = k0 + k * c
    h1 = al.multiply(a, _kron(t_inv, al.multiply(d0_inv, k0), A))
    h2 = _kron(t, al.multiply(al.inverse(k0), d0), A)
    return HyperplaneFactorization(a, h1, h2, tau, t, d0, k0, K)


def kronecker_coords(x: AlgebraElement, t: Matrix):
    """Coordinates of ``d`` with ``x = t ⊗ d``, or None if ``x`` is not of that form."""
    A = x.algebra
    _require_quaternionic(A)
    D = A.division_part
    cols = [_kron(t, e, A).coords for e in al.basis(D)]
    return solve_linear(Matrix.from_columns(A.field, cols), x.coords)


def in_kronecker_image(x: AlgebraElement, t: Matrix) -> bool:
    """Whether ``x`` lies in ``t ⊗ D``."""
    return kronecker_coords(x, t) is not None

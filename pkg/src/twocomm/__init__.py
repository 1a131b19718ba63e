"""Exact two-commutator decompositions in simple algebras and Euler-class obstructions.

Submodules:

``fields``, ``linalg``
    exact scalars (Q, Q(i), F_p) and dense linear algebra
``algebra``
    structure-constant algebras M_m(F), quaternion algebras and M_m(D)
``hyperplane``
    factorizations a = h1 h2 with both factors in a hyperplane
``engine``
    certificates a = [b, c][d, e]
``ncpoly``
    rewriting polynomial identities of fields into the commutator ideal
``euler``
    square-zero cohomology, Bott projections and stage plans
``oracle``
    exhaustive enumeration over tiny finite rings
"""
__version__ = "0.1.0"

from .algebra import (
    HAMILTON,
    AlgebraDescriptor,
    AlgebraElement,
    matrix_algebra,
    matrix_quaternion_algebra,
    quaternion_algebra,
)
from .engine import CommutatorCertificate, decompose, verify_certificate
from .errors import TwoCommError

__all__ = [
    "HAMILTON",
    "AlgebraDescriptor",
    "AlgebraElement",
    "CommutatorCertificate",
    "TwoCommError",
    "decompose",
    "matrix_algebra",
    "matrix_quaternion_algebra",
    "quaternion_algebra",
    "verify_certificate",
]

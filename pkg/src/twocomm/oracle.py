"""Brute-force ground truth on tiny finite matrix rings, and batch cross-checks.

:func:`enumerate_products` lists every commutator of ``M_m(F_p)`` and every
product of two of them, with no structural shortcuts.  :func:`cross_check`
re-verifies engine certificates through multipliers that share no code with
the engine: Hamilton-type quaternions are embedded in ``M_2(Q(i))`` and
matrix algebras are multiplied as plain matrices.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as al
from . import kernels
from .algebra import AlgebraDescriptor, AlgebraElement
from .engine import AR_RETRY_CAP, PAIR_RETRY_CAP, CommutatorCertificate, decompose
from .errors import IsAField, TooLarge
from .fields import GF, QQI, GaussianRational
from .linalg import Matrix

ENUMERATION_LIMIT = 10**4


@dataclass(frozen=True)
class EnumerationReport:
    algebra: AlgebraDescriptor
    total: int
    commutator_set_size: int
    product_set_size: int
    covers_all: bool
    missing: tuple
    trace_zero_count: int
    backend: str
    seconds: float = field(compare=False, default=0.0)

    @property
    def commutators_are_trace_zero(self) -> bool:
        return self.commutator_set_size == self.trace_zero_count

    def to_json(self):
        p = self.algebra.field.characteristic
        m = self.algebra.m
        return {
            "algebra": self.algebra.to_json(),
            "total": self.total,
            "commutator_set_size": self.commutator_set_size,
            "product_set_size": self.product_set_size,
            "covers_all": self.covers_all,
            "missing": [_rows(kernels.decode(c, p, m), m) for c in self.missing],
            "trace_zero_count": self.trace_zero_count,
            "commutators_are_trace_zero": self.commutators_are_trace_zero,
        }


def _rows(entries, m):
    return [[str(entries[r * m + s]) for s in range(m)] for r in range(m)]


def enumerate_products(p: int, m: int) -> EnumerationReport:
    """Exhaustive check that every element of ``M_m(F_p)`` is ``[x, y][z, w]``."""
    desc = al.matrix_algebra(m, GF(p))
    if al.is_field(desc):
        raise IsAField(f"M_1(F_{p}) is a field")
    total = p ** (m * m)
    if total > ENUMERATION_LIMIT:
        raise TooLarge(f"p^(m^2) = {total} exceeds {ENUMERATION_LIMIT}")
    start = time.perf_counter()
    comm = kernels.commutator_bitmap(p, m)
    codes = [c for c in range(total) if comm[c]]
    prod = kernels.product_bitmap(p, m, codes)
    missing = tuple(c for c in range(total) if not prod[c])
    trace_zero = sum(
        1 for c in range(total) if sum(kernels.decode(c, p, m)[r * m + r] for r in range(m)) % p == 0
    )
    return EnumerationReport(
        algebra=desc,
        total=total,
        commutator_set_size=len(codes),
        product_set_size=total - len(missing),
        covers_all=not missing,
        missing=missing,
        trace_zero_count=trace_zero,
        backend=kernels.BACKEND,
        seconds=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# independent multipliers


def _gauss(x: Fraction, y: Fraction = Fraction(0)):
    return GaussianRational(x, y)


def _quaternion_block(w, x, y, z):
    # 1, i, j, k -> I, diag(i, -i), [[0, 1], [-1, 0]], [[0, i], [i, 0]]
    return [[_gauss(w, x), _gauss(y, z)], [_gauss(-y, z), _gauss(w, -x)]]


def _to_complex(x: AlgebraElement) -> Matrix:
    alg = x.algebra
    m = alg.m
    rows = [[_gauss(Fraction(0))] * (2 * m) for _ in range(2 * m)]
    for r in range(m):
        for s in range(m):
            base = (r * m + s) * 4
            blk = _quaternion_block(*x.coords[base : base + 4])
            for u in range(2):
                for v in range(2):
                    rows[2 * r + u][2 * s + v] = blk[u][v]
    return Matrix(QQI, rows)


def _to_plain(x: AlgebraElement) -> Matrix:
    m = x.algebra.m
    return Matrix(x.algebra.field, [list(x.coords[r * m : (r + 1) * m]) for r in range(m)])


def independent_check(cert: CommutatorCertificate) -> bool:
    """``a == [b, c][d, e]`` recomputed without the engine's multiplication routines."""
    alg = cert.a.algebra
    if alg.kind == "MatrixOverField":
        conv = _to_plain
    elif alg.a == -1 and alg.b == -1:
        conv = _to_complex
    else:
        table = al.structure_constants(alg)

        def mul(x, y):
            return al.multiply_sc(x, y, table)

        left = mul(cert.b, cert.c) - mul(cert.c, cert.b)
        right = mul(cert.d, cert.e) - mul(cert.e, cert.d)
        return mul(left, right) == cert.a
    a, b, c, d, e = (conv(getattr(cert, k)) for k in "abcde")
    return (b @ c - c @ b) @ (d @ e - e @ d) == a


# ---------------------------------------------------------------------------
# batch cross-check

CROSS_CHECK_KINDS = (
    ("Hamilton", al.HAMILTON),
    ("M2(Q)", al.matrix_algebra(2)),
    ("M3(Q)", al.matrix_algebra(3)),
    ("M2(Hamilton)", al.matrix_quaternion_algebra(2)),
)

_CAPS = {"DivisionCase": 0, "TrivialZero": 0, "MatrixOverFieldCase": PAIR_RETRY_CAP,
         "MatrixOverQuaternionCase": AR_RETRY_CAP}


@dataclass
class KindReport:
    name: str
    trials: int = 0
    verified: int = 0
    max_retries: int = 0
    within_caps: bool = True
    failures: list = field(default_factory=list)

    def to_json(self):
        return {
            "kind": self.name,
            "trials": self.trials,
            "verified": self.verified,
            "max_retries": self.max_retries,
            "within_caps": self.within_caps,
            "failures": self.failures,
        }


def cross_check(seed: int = 0, trials: int = 100, kinds=CROSS_CHECK_KINDS, max_height: int = 10) -> dict:
    """Decompose random elements of each kind and re-verify every certificate independently.

    A tampered certificate is pushed through the same checker as a negative
    control; ``tamper_flagged`` must come back true.
    """
    rng = random.Random(seed)
    reports = []
    sample = None
    for name, desc in kinds:
        rep = KindReport(name)
        for t in range(trials):
            a = al.random_element(desc, rng, max_height)
            rep.trials += 1
            try:
                cert = decompose(a, seed=rng.getrandbits(32))
            except Exception as exc:
                rep.failures.append({"trial": t, "error": type(exc).__name__, "message": str(exc)})
                continue
            if independent_check(cert):
                rep.verified += 1
            else:
                rep.failures.append({"trial": t, "error": "VerificationFailed"})
            rep.max_retries = max(rep.max_retries, cert.retries_used)
            if cert.retries_used > _CAPS[cert.path]:
                rep.within_caps = False
            if sample is None and not cert.a.is_zero():
                sample = cert
        reports.append(rep)
    tamper_flagged = None
    if sample is not None:
        bumped = list(sample.a.coords)
        bumped[0] = bumped[0] + 1
        forged = CommutatorCertificate(
            AlgebraElement(sample.a.algebra, tuple(bumped)), sample.b, sample.c, sample.d, sample.e, sample.path
        )
        tamper_flagged = not independent_check(forged)
    return {
        "seed": seed,
        "trials_per_kind": trials,
        "kinds": [r.to_json() for r in reports],
        "all_verified": all(r.verified == r.trials for r in reports),
        "tamper_flagged": tamper_flagged,
    }

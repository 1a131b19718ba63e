"""Euler-class obstructions over products of 2-spheres.

The integral cohomology of ``(S^2)^n`` is the square-zero ring
``Z[α_1, ..., α_n] / (α_j^2)``.  For the Bott line bundle on ``S^2`` the Euler
class is the generator ``α``; the external tensor product over ``(S^2)^n``
has Euler class ``α_1 + ... + α_n``, and a Whitney sum raises classes to a
product.  When the top class of ``r^{⊕n}`` is nonzero, ``r^{⊕n}`` has no
nowhere-vanishing section, so ``e_11`` is not subequivalent to it.

A bundle over ``Y = X_1 × ... × X_k`` with ``X_i = (S^2)^{n_i}`` built as
``q_1^{⊕ l_1} ⊕ ... ⊕ q_k^{⊕ l_k}`` is described by a :class:`BundleSpec`.
Its ``n``-fold sum has Euler class

    prod_i (sum_j α_{i,j})^{n l_i}

which is nonzero exactly when ``n l_i <= n_i`` for every ``i``; each surviving
monomial then has coefficient ``prod_i (n l_i)!``.

Also here: the Bott projection and its tensor powers evaluated at rational
points of the sphere, and the stage-by-stage data of the inductive system
whose limit fails ``C_m`` (see :func:`villadsen_plan`).
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotOnSphere, TooLarge
from .fields import QQI, GaussianRational, format_fraction
from .linalg import Matrix

# ---------------------------------------------------------------------------
# square-zero polynomial ring


@dataclass(frozen=True)
class SquareFreePolynomial:
    """Integer polynomial in generators ``α_{i,j}`` with ``α² = 0``.

    Monomials are sorted tuples of distinct ``(i, j)`` generator indices.
    """

    terms: dict

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(sorted(k)): int(v) for k, v in self.terms.items() if v})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def generator(cls, i: int, j: int):
        return cls({((i, j),): 1})

    def __add__(self, other):
        out = defaultdict(int, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return SquareFreePolynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return SquareFreePolynomial({k: v * other for k, v in self.terms.items()})
        return sq_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return sq_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, SquareFreePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, monomial) -> int:
        return self.terms.get(tuple(sorted(monomial)), 0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            mono = "*".join(f"a{i}_{j}" for i, j in k) or "1"
            parts.append(f"{self.terms[k]}*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return [
            {"monomial": [list(g) for g in k], "coeff": str(v)} for k, v in sorted(self.terms.items())
        ]


def sq_mul(f: SquareFreePolynomial, g: SquareFreePolynomial) -> SquareFreePolynomial:
    out = defaultdict(int)
    for k1, v1 in f.terms.items():
        s1 = set(k1)
        for k2, v2 in g.terms.items():
            if s1.isdisjoint(k2):
                out[tuple(sorted(k1 + k2))] += v1 * v2
    return SquareFreePolynomial(out)


def sq_pow(f: SquareFreePolynomial, e: int) -> SquareFreePolynomial:
    """``f^e`` by repeated squaring."""
    if e < 0:
        raise ValueError("negative power")
    result = SquareFreePolynomial.one()
    base = f
    while e:
        if e & 1:
            result = sq_mul(result, base)
        e >>= 1
        if e:
            base = sq_mul(base, base)
    return result


def euler_class_of_tensor(stage: int, n_spheres: int) -> SquareFreePolynomial:
    """Euler class ``sum_j α_{stage,j}`` of the tensor power of Bott bundles."""
    if n_spheres < 1:
        raise ValueError("need at least one sphere")
    return SquareFreePolynomial({((stage, j),): 1 for j in range(1, n_spheres + 1)})


# ---------------------------------------------------------------------------
# bundle specs and certificates


@dataclass(frozen=True)
class BundleSpec:
    """Stages ``(n_i, l_i)``: ``n_i`` spheres in ``X_i``, multiplicity ``l_i``."""

    stages: tuple

    def __post_init__(self):
        st = tuple((int(n), int(l)) for n, l in self.stages)
        for n, l in st:
            if n < 1 or l < 1:
                raise ValueError(f"stage ({n}, {l}) needs n_i >= 1 and l_i >= 1")
        object.__setattr__(self, "stages", st)

    @property
    def rank(self) -> int:
        return sum(l for _, l in self.stages)

    @property
    def real_dim(self) -> int:
        return 2 * sum(n for n, _ in self.stages)

    def to_json(self):
        return [{"n": n, "l": l} for n, l in self.stages]


def euler_closed_form(spec: BundleSpec, power: int):
    """``(witness, coefficient)`` for the class of ``r^{⊕power}``, or None if it is zero.

    The witness is the lexicographically least surviving monomial.
    """
    witness = []
    coeff = 1
    for i, (n_i, l_i) in enumerate(spec.stages, start=1):
        deg = power * l_i
        if deg > n_i:
            return None
        witness.extend((i, j) for j in range(1, deg + 1))
        coeff *= math.factorial(deg)
    return tuple(witness), coeff


def euler_direct_sum_power(spec: BundleSpec, power: int, max_terms: int = 250_000) -> SquareFreePolynomial:
    """Fully expanded ``prod_i (sum_j α_{i,j})^{power·l_i}``.

    Uses the per-stage closed form (every ``power·l_i``-subset of stage ``i``
    with coefficient ``(power·l_i)!``) rather than repeated multiplication.
    """
    if euler_closed_form(spec, power) is None:
        return SquareFreePolynomial.zero()
    count = 1
    for n_i, l_i in spec.stages:
        count *= math.comb(n_i, power * l_i)
    if count > max_terms:
        raise TooLarge(f"expansion has {count} monomials (limit {max_terms}); use euler_closed_form")
    per_stage = []
    coeff = 1
    for i, (n_i, l_i) in enumerate(spec.stages, start=1):
        deg = power * l_i
        coeff *= math.factorial(deg)
        per_stage.append([tuple((i, j) for j in c) for c in itertools.combinations(range(1, n_i + 1), deg)])
    terms = {}
    for combo in itertools.product(*per_stage):
        terms[tuple(g for part in combo for g in part)] = coeff
    return SquareFreePolynomial(terms)


def euler_by_multiplication(spec: BundleSpec, power: int) -> SquareFreePolynomial:
    """Same class computed by ring multiplication; independent check for small specs."""
    result = SquareFreePolynomial.one()
    for i, (n_i, l_i) in enumerate(spec.stages, start=1):
        result = sq_mul(result, sq_pow(euler_class_of_tensor(i, n_i), power * l_i))
    return result


NOT_SUBEQUIVALENT = "NotSubequivalent"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class EulerCertificate:
    spec: BundleSpec
    power: int
    witness_monomial: tuple
    coefficient: int
    conclusion: str

    @property
    def certified(self) -> bool:
        return self.conclusion == NOT_SUBEQUIVALENT

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "power": self.power,
            "witness_monomial": [list(g) for g in self.witness_monomial],
            "coefficient": str(self.coefficient),
            "conclusion": self.conclusion,
        }


def certify_not_subequivalent(spec: BundleSpec, power: int) -> EulerCertificate:
    """Certificate that ``e_11`` is not subequivalent to ``r^{⊕power}`` (or Inconclusive)."""
    hit = euler_closed_form(spec, power)
    if hit is None:
        return EulerCertificate(spec, power, (), 0, INCONCLUSIVE)
    witness, coeff = hit
    return EulerCertificate(spec, power, witness, coeff, NOT_SUBEQUIVALENT)


def certify_cm_failure(spec: BundleSpec, m: int) -> EulerCertificate:
    """Certificate that ``her(e_11 ⊕ r)`` fails property ``C_m``, via the class at power ``8m``."""
    if m < 1:
        raise ValueError("m must be positive")
    return certify_not_subequivalent(spec, 8 * m)


# ---------------------------------------------------------------------------
# rational points on the sphere


def sphere_point_from_plane(u: Fraction, v: Fraction):
    """Inverse stereographic projection from the north pole."""
    s = u * u + v * v
    return (2 * u / (1 + s), 2 * v / (1 + s), (s - 1) / (1 + s))


def pythagorean_points(count: int):
    """The first ``count`` points of :func:`sphere_point`'s enumeration."""
    return [sphere_point(i) for i in range(count)]


@lru_cache(maxsize=None)
def _rationals_up_to(h: int):
    out = {Fraction(0)}
    for q in range(1, h + 1):
        for p in range(-h, h + 1):
            if math.gcd(p, q) == 1:
                out.add(Fraction(p, q))
    return frozenset(out)


class _PlaneEnumeration:
    """Q² enumerated by height level; level h lists new pairs in descending order."""

    def __init__(self):
        self.points = [(Fraction(0), Fraction(0))]
        self.level = 0

    def get(self, idx: int):
        while idx >= len(self.points):
            self.level += 1
            new = _rationals_up_to(self.level)
            old = _rationals_up_to(self.level - 1)
            fresh = [(u, v) for u in new for v in new if u not in old or v not in old]
            fresh.sort(reverse=True)
            self.points.extend(fresh)
        return self.points[idx]


_PLANE = _PlaneEnumeration()


def sphere_point(idx: int):
    """The ``idx``-th point of a fixed dense enumeration of rational points of S²."""
    return sphere_point_from_plane(*_PLANE.get(idx))


def on_sphere(p) -> bool:
    x, y, z = (Fraction(c) for c in p)
    return x * x + y * y + z * z == 1


def _pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + a


def _unpair(z: int):
    w = (math.isqrt(8 * z + 1) - 1) // 2
    a = z - w * (w + 1) // 2
    return a, w - a


def _decode_tuple(t: int, length: int):
    out = []
    r = t
    for _ in range(length - 1):
        r, x = _unpair(r)
        out.append(x)
    out.append(r)
    return out


def _encode_tuple(values):
    r = values[-1]
    for x in reversed(values[:-1]):
        r = _pair(r, x)
    return r


def _coordinate_order(ks):
    """Sphere slots ``(stage, sphere)`` with the first sphere of every stage listed first."""
    lead = [(i, 0) for i in range(len(ks))]
    rest = [(i, s) for i, k in enumerate(ks) for s in range(1, k)]
    return lead + rest


def schedule_indices(n: int, ks):
    """Sphere-enumeration indices of ``z_n``, grouped by stage.

    ``(j - 1, t) = unpair(n - 1)``; the prefix over stages ``1..j`` is the
    ``t``-th tuple of a bijection ``N -> N^K``, later stages sit at point 0.
    Every ``(j, t)`` occurs, so every prefix pattern is visited.
    """
    ks = list(ks[:n])
    jm1, t = _unpair(n - 1)
    j = jm1 + 1
    out = [[0] * k for k in ks]
    order = _coordinate_order(ks[:j])
    for (i, s), x in zip(order, _decode_tuple(t, len(order))):
        out[i][s] = x
    return out


def dense_point_schedule(N: int, ks):
    """Evaluation points ``z_1..z_N`` with ``z_n`` in ``X_1 × ... × X_n``."""
    if len(ks) < N:
        raise ValueError("need a sphere count for every stage")
    return [
        [[sphere_point(x) for x in stage] for stage in schedule_indices(n, ks)]
        for n in range(1, N + 1)
    ]


def _cell(p, mesh: Fraction):
    cells = int(2 / mesh)
    return tuple(min(cells - 1, math.floor((Fraction(c) + 1) / mesh)) for c in p)


def sphere_cells(mesh: Fraction = Fraction(1, 2)):
    """Cells of the ``mesh``-grid on ``[-1, 1]³`` that meet S² in positive area."""
    cells = int(2 / mesh)
    out = []
    for idx in itertools.product(range(cells), repeat=3):
        lo = [-1 + mesh * i for i in idx]
        hi = [x + mesh for x in lo]
        near = sum(0 if a <= 0 <= b else min(a * a, b * b) for a, b in zip(lo, hi))
        far = sum(max(a * a, b * b) for a, b in zip(lo, hi))
        if near < 1 < far:
            out.append(idx)
    return out


def first_visits(mesh: Fraction = Fraction(1, 2), limit: int = 200_000):
    """Smallest sphere-enumeration index landing in each grid cell."""
    targets = set(sphere_cells(mesh))
    first = {}
    idx = 0
    while len(first) < len(targets):
        if idx >= limit:
            raise TooLarge(f"sphere enumeration did not cover the grid within {limit} points")
        c = _cell(sphere_point(idx), mesh)
        if c in targets and c not in first:
            first[c] = idx
        idx += 1
    return first


def coverage_index(j: int, ks, mesh: Fraction = Fraction(1, 2)) -> dict:
    """Schedule index by which the leading spheres of ``X_1..X_j`` have visited every joint grid cell.

    Computed from the pairing formula: for a target cell tuple the earliest
    visit uses the smallest enumeration index in each cell and zeros elsewhere.
    """
    first = first_visits(mesh)
    origin_cell = _cell(sphere_point(0), mesh)
    worst = 0
    for combo in itertools.product(sorted(first), repeat=j):
        best = None
        for jp in range(1, j + 1):
            # stages beyond jp sit at point 0
            if any(c != origin_cell for c in combo[jp:]):
                continue
            order_len = len(_coordinate_order(list(ks[:jp])))
            vals = [first[c] for c in combo[:jp]] + [0] * (order_len - jp)
            n = _pair(jp - 1, _encode_tuple(vals)) + 1
            best = n if best is None else min(best, n)
        worst = max(worst, best)
    return {"j": j, "mesh": format_fraction(mesh), "cells": len(first) ** j, "covered_by_index": worst}


# ---------------------------------------------------------------------------
# Bott projection


def bott_eval(x, y, z) -> Matrix:
    """``p(x, y, z) = 1/2 [[1 + x, y - iz], [y + iz, 1 - x]]`` over Q(i)."""
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    if x * x + y * y + z * z != 1:
        raise NotOnSphere(f"({x}, {y}, {z}) is not on the unit sphere")
    h = Fraction(1, 2)
    return Matrix(
        QQI,
        [
            [GaussianRational(h * (1 + x)), GaussianRational(h * y, -h * z)],
            [GaussianRational(h * y, h * z), GaussianRational(h * (1 - x))],
        ],
    )


def tensor_projection_eval(points) -> Matrix:
    """``p(x_1) ⊗ ... ⊗ p(x_n)``, a rank-one projection of size ``2^n``."""
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    out = bott_eval(*points[0])
    for p in points[1:]:
        out = out.kron(bott_eval(*p))
    return out


# ---------------------------------------------------------------------------
# inductive system


@dataclass(frozen=True)
class StageEmbedding:
    """Data of ``A_n = her(r_n)`` and the map ``A_n -> A_{n+1}``.

    ``certificate`` covers the stage's own summand ``q_n^{⊕ l_n}`` over
    ``X_n``; ``cumulative_certificate`` covers ``r_n' = ⊕_{i<=n} q_i^{⊕ l_i}``
    over ``Y_n`` and is what shows that ``A_n`` fails ``C_m``.
    """

    n: int
    k_n: int
    l_n: int
    rank_r_n: int
    dim_Y_n: int
    z_n: tuple
    certificate: EulerCertificate
    cumulative_certificate: EulerCertificate

    def to_json(self, include_points: bool = True):
        d = {
            "n": self.n,
            "k_n": self.k_n,
            "l_n": self.l_n,
            "rank_r_n": self.rank_r_n,
            "l_next": self.rank_r_n,
            "dim_Y_n": self.dim_Y_n,
            "certificate": self.certificate.to_json(),
            "cumulative_certificate": self.cumulative_certificate.to_json(),
        }
        if include_points:
            d["z_n"] = [[[format_fraction(c) for c in p] for p in stage] for stage in self.z_n]
        return d


@dataclass(frozen=True)
class VilladsenPlan:
    m: int
    stages: tuple
    coverage: tuple = ()

    @property
    def all_certified(self) -> bool:
        return all(s.cumulative_certificate.certified for s in self.stages)

    def to_json(self, include_points: bool = True):
        return {
            "m": self.m,
            "N": len(self.stages),
            "all_certified": self.all_certified,
            "stages": [s.to_json(include_points) for s in self.stages],
            "coverage": list(self.coverage),
        }


def minimal_sphere_counts(m: int, N: int):
    """``k_n = 8m · 2^(n-1)``."""
    return [8 * m * 2 ** (n - 1) for n in range(1, N + 1)]


def villadsen_plan(m: int, N: int, ks=None, coverage: bool = False) -> VilladsenPlan:
    """Stage data for the inductive limit failing ``C_m``.

    ``l_1 = 1``, ``rank(r_n) = 1 + sum_{i<=n} l_i`` and ``l_{n+1} = rank(r_n)``,
    which gives ``l_n = 2^(n-1)``.  ``ks`` overrides the sphere counts.
    """
    if m < 1 or N < 1:
        raise ValueError("m and N must be positive")
    ks = list(ks) if ks is not None else minimal_sphere_counts(m, N)
    if len(ks) != N:
        raise ValueError("need one sphere count per stage")
    points = dense_point_schedule(N, ks)
    stages = []
    ls = []
    l_next = 1
    for n in range(1, N + 1):
        k, l = ks[n - 1], l_next
        ls.append(l)
        rank = 1 + sum(ls)
        spec = BundleSpec(tuple(zip(ks[:n], ls)))
        stages.append(
            StageEmbedding(
                n=n,
                k_n=k,
                l_n=l,
                rank_r_n=rank,
                dim_Y_n=2 * sum(ks[:n]),
                z_n=tuple(tuple(stage) for stage in points[n - 1]),
                certificate=certify_cm_failure(BundleSpec(((k, l),)), m),
                cumulative_certificate=certify_cm_failure(spec, m),
            )
        )
        l_next = rank
    cov = tuple(coverage_index(j, ks) for j in (1, 2) if j <= N) if coverage else ()
    return VilladsenPlan(m, tuple(stages), cov)

"""Write elements of finite-dimensional simple algebras as ``[b, c][d, e]``.

Supported algebras and the route taken by :func:`decompose`:

``Quaternion`` (a division algebra D over Q)
    With ``L = F(u)`` a maximal subfield containing ``d`` and ``v`` not
    commuting with ``u``, the space ``W = [u, v]^-1 (L + F v)`` has dimension
    3 and every nonzero ``w`` in it has a commutator inverse. Since
    ``ad_u(D)`` has dimension 2, ``ad_u(D) ∩ dW`` is nonzero, giving
    ``d = [u, b] w^-1``. Deterministic.

``MatrixOverField`` (M_m(Q), m >= 2)
    Factor ``a = g h`` with ``g``, ``h`` of trace zero, then write each
    factor as a commutator after conjugating it to zero diagonal.

``MatrixOverQuaternion`` (M_m(D), m >= 2)
    Choose ``t = I + λ e_12`` with ``a`` outside ``t ⊗ D``, factor ``a``
    through the reduced-trace hyperplane, and write each noncentral
    trace-zero factor as a commutator.

Every certificate is re-checked by :func:`verify_certificate`, which
multiplies through the structure-constant table rather than the closed
formulas used while building.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as al
from .algebra import AlgebraDescriptor, AlgebraElement
from .errors import IsAField, SearchExhausted, Unsupported
from .fields import QQ, height
from .hyperplane import (
    HyperplaneFactorization,
    hyperplane_factorize,
    in_kronecker_image,
    reduced_trace_functional,
)
from .linalg import Matrix, independent_subset, intersect_subspaces, rank, solve_linear

PATHS = ("TrivialZero", "DivisionCase", "MatrixOverFieldCase", "MatrixOverQuaternionCase")

PAIR_RETRY_CAP = 64
AR_RETRY_CAP = 256
RANDOM_HEIGHT = 16


@dataclass(frozen=True)
class DivisionTrace:
    u: AlgebraElement
    v: AlgebraElement
    uv: AlgebraElement
    W_basis: tuple
    ell: AlgebraElement
    lam: Fraction
    b: AlgebraElement
    w: AlgebraElement
    branch: str

    def to_json(self):
        return {
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "uv": self.uv.to_json(),
            "W_basis": [x.to_json() for x in self.W_basis],
            "ell": self.ell.to_json(),
            "lambda": QQ.to_json(self.lam),
            "b": self.b.to_json(),
            "w": self.w.to_json(),
            "branch": self.branch,
        }


@dataclass
class CommutatorCertificate:
    """``a = (bc - cb)(de - ed)``; ``verified`` is set by exact re-multiplication."""

    a: AlgebraElement
    b: AlgebraElement
    c: AlgebraElement
    d: AlgebraElement
    e: AlgebraElement
    path: str
    retries_used: int = 0
    verified: bool = False
    trace: DivisionTrace | None = None
    details: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
            "e": self.e.to_json(),
            "path": self.path,
            "retries_used": self.retries_used,
            "verified": self.verified,
        }
        if self.trace is not None:
            out["division_trace"] = self.trace.to_json()
        if self.details:
            out["details"] = self.details
        return out

    @classmethod
    def from_json(cls, doc):
        parts = {k: AlgebraElement.from_json(doc[k]) for k in "abcde"}
        algs = {x.algebra for x in parts.values()}
        if len(algs) != 1:
            raise ValueError("certificate elements live in different algebras")
        return cls(
            path=doc.get("path", "unknown"),
            retries_used=int(doc.get("retries_used", 0)),
            verified=False,
            **parts,
        )


def verify_certificate(cert: CommutatorCertificate) -> bool:
    """Recompute ``[b, c][d, e]`` through the structure constants and compare with ``a``."""
    table = al.structure_constants(cert.a.algebra)

    def mul(x, y):
        return al.multiply_sc(x, y, table)

    left = mul(cert.b, cert.c) - mul(cert.c, cert.b)
    right = mul(cert.d, cert.e) - mul(cert.e, cert.d)
    return mul(left, right) == cert.a


def _finish(cert: CommutatorCertificate) -> CommutatorCertificate:
    cert.verified = verify_certificate(cert)
    if not cert.verified:
        raise AssertionError(f"internal error: unverifiable certificate on path {cert.path}")
    return cert


# ---------------------------------------------------------------------------
# dispatcher


def decompose(a: AlgebraElement, seed: int = 0, max_retries: int | None = None) -> CommutatorCertificate:
    """Certificate ``(b, c, d, e)`` with ``a = [b, c][d, e]``."""
    alg = a.algebra
    if al.is_field(alg):
        raise IsAField("M_1(F) is a field; decompositions need an algebra that is not a field")
    if alg.field != QQ:
        raise Unsupported("decompositions are computed over Q only; use the oracle for finite fields")
    rng = random.Random(seed)
    if a.is_zero():
        E = al.basis(alg)
        return _finish(CommutatorCertificate(a, E[1], E[2], E[1], E[1], "TrivialZero"))
    if alg.kind == "Quaternion":
        return division_two_commutators(a)[0]
    if alg.kind == "MatrixOverField":
        return matrix_field_two_commutators(a, rng, max_retries or PAIR_RETRY_CAP)
    if alg.m == 1:
        D = alg.division_part
        cert, _ = division_two_commutators(AlgebraElement(D, a.coords))
        lift = lambda x: AlgebraElement(alg, x.coords)  # noqa: E731
        return _finish(
            CommutatorCertificate(
                a, lift(cert.b), lift(cert.c), lift(cert.d), lift(cert.e),
                "DivisionCase", trace=cert.trace,
            )
        )
    return matrix_quaternion_two_commutators(a, rng, max_retries or AR_RETRY_CAP)


# ---------------------------------------------------------------------------
# division case


def _smallest_vector(vectors):
    vectors = list(vectors)
    return min(range(len(vectors)), key=lambda i: (sum(height(x) for x in vectors[i]), i))


def division_two_commutators(d: AlgebraElement):
    """Two-commutator certificate for a nonzero element of a quaternion division algebra.

    Returns ``(certificate, DivisionTrace)``.
    """
    D = d.algebra
    if D.kind != "Quaternion":
        raise Unsupported("division case needs a Quaternion element")
    if d.is_zero():
        raise ValueError("d = 0 is handled by decompose()")
    F = D.field
    L, u = al.subfield_containing(d)
    v = next(e for e in al.basis(D) if not al.commutator(u, e).is_zero())
    uv = al.commutator(u, v)
    uv_inv = al.inverse(uv)
    gens = list(L.elements) + [v]
    W = tuple(al.multiply(uv_inv, g) for g in gens)
    assert independent_subset(F, 4, [w.coords for w in W]).dim == 3

    image = al.image_basis(al.ad_operator(u))
    dW = independent_subset(F, 4, [al.multiply(d, w).coords for w in W])
    meet = intersect_subspaces(F, image, dW)
    assert meet.dim > 0
    y = AlgebraElement(D, meet.vectors[_smallest_vector(meet.vectors)])  # y = d w = [u, b]
    w = al.multiply(al.inverse(d), y)

    b_coords = solve_linear(al.ad_operator(u), y.coords)
    b = AlgebraElement(D, b_coords)
    coeffs = al.membership_coords(al.multiply(uv, w), gens)
    ell = al.zero(D)
    for c, g in zip(coeffs[:-1], L.elements):
        ell = ell + g * c
    lam = coeffs[-1]

    p, q, branch = inverse_as_commutator(u, v, ell, lam)
    trace = DivisionTrace(u, v, uv, W, ell, lam, b, w, branch)
    cert = CommutatorCertificate(d, u, b, p, q, "DivisionCase", trace=trace)
    return _finish(cert), trace


def inverse_as_commutator(u: AlgebraElement, v: AlgebraElement, ell: AlgebraElement, lam):
    """``(p, q, branch)`` with ``[p, q] = w^-1`` where ``w = [u, v]^-1 (ell + lam v)``.

    Needs ``ell`` in ``F(u)``.  In a quaternion algebra with ``d`` in ``F(u)``
    the value ``[u, v] w`` always lies in ``F(u)``, so only the ``lam = 0``
    branch is reached from :func:`division_two_commutators`.
    """
    if lam == 0:
        return u, al.multiply(al.inverse(ell), v), "lambda_zero"
    s = ell + v * lam
    return al.multiply(al.inverse(s), u) * (1 / lam), s, "lambda_nonzero"


# ---------------------------------------------------------------------------
# quaternion building blocks


def _orthogonal_pure(q: AlgebraElement) -> AlgebraElement:
    """A nonzero pure quaternion orthogonal to ``q`` for the norm form."""
    D = q.algebra
    _, q1, q2, q3 = q.coords
    for idx, qc in ((1, q1), (2, q2), (3, q3)):
        if qc == 0:
            c = [0, 0, 0, 0]
            c[idx] = 1
            return AlgebraElement(D, c)
    return AlgebraElement(D, (0, D.b * q2, -D.a * q1, 0))


def pure_quaternion_commutator(q: AlgebraElement):
    """``(x, y)`` with ``[x, y] = q`` for a nonzero pure quaternion ``q``."""
    if q.algebra.kind != "Quaternion":
        raise Unsupported("pure_quaternion_commutator() needs a quaternion")
    if al.reduced_trace(q) != 0 or q.is_zero():
        raise ValueError("q must be a nonzero pure quaternion")
    x = _orthogonal_pure(q)
    y = solve_linear(al.ad_operator(x), q.coords)
    assert y is not None
    return x, AlgebraElement(q.algebra, y)


def sylvester_solve(p: AlgebraElement, q: AlgebraElement, c: AlgebraElement):
    """``x`` with ``p x - x q = c``, or None if there is none."""
    M = al.left_mult_operator(p) - al.right_mult_operator(q)
    x = solve_linear(M, c.coords)
    return None if x is None else AlgebraElement(p.algebra, x)


# ---------------------------------------------------------------------------
# matrices over Q


def _non_eigenvector(X: Matrix):
    n = X.nrows
    F = X.field

    def candidates():
        units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        yield from units
        for i, j in itertools.combinations(range(n), 2):
            yield tuple(int(t in (i, j)) for t in range(n))
        seen = set(units)
        for bound in (2, 3):
            for v in itertools.product(range(-bound, bound + 1), repeat=n):
                if any(v) and v not in seen:
                    seen.add(v)
                    yield v

    for v in candidates():
        v = tuple(F(x) for x in v)
        if rank(Matrix.from_columns(F, [v, X.apply(v)])) == 2:
            return v
    raise SearchExhausted("no non-eigenvector among small integer vectors", ["units", "0/±1/±2", "±3"])


def zero_diagonal_similarity(X: Matrix) -> Matrix:
    """Invertible ``S`` with ``S^-1 X S`` of zero diagonal, for trace-zero ``X`` over Q."""
    n = X.nrows
    F = X.field
    if F.characteristic != 0:
        raise Unsupported("zero-diagonal similarity is implemented in characteristic 0")
    if X.trace() != 0:
        raise ValueError("X must have trace zero")
    if all(X[i, i] == 0 for i in range(n)):
        return Matrix.identity(n, F)
    v = _non_eigenvector(X)
    cols = [v, X.apply(v)]
    for i in range(n):
        e = tuple(F.one if j == i else F.zero for j in range(n))
        if rank(Matrix.from_columns(F, cols + [e])) == len(cols) + 1:
            cols.append(e)
        if len(cols) == n:
            break
    S1 = Matrix.from_columns(F, cols)
    Y = S1.inverse() @ X @ S1
    assert Y[0, 0] == 0
    B = Matrix(F, [r[1:] for r in Y.rows[1:]])
    # trace(B) = 0, so a scalar B is zero and already has zero diagonal
    T = zero_diagonal_similarity(B)
    big = [[F.one] + [F.zero] * (n - 1)] + [[F.zero] + list(r) for r in T.rows]
    return S1 @ Matrix(F, big)


def shoda_commutator_matrix(X: Matrix):
    """``(P, Q)`` with ``PQ - QP = X`` for a nonzero trace-zero matrix over Q."""
    n = X.nrows
    F = X.field
    if X.trace() != 0 or X.is_zero():
        raise ValueError("X must be nonzero with trace zero")
    S = zero_diagonal_similarity(X)
    S_inv = S.inverse()
    Y = S_inv @ X @ S
    Dg = Matrix.diag(F, range(1, n + 1))
    Qp = Matrix(F, [[Y[r, s] / (r - s) if r != s else 0 for s in range(n)] for r in range(n)])
    P = S @ Dg @ S_inv
    Q = S @ Qp @ S_inv
    assert P @ Q - Q @ P == X
    return P, Q


def shoda_commutator(X: AlgebraElement):
    """Element-level wrapper of :func:`shoda_commutator_matrix`."""
    P, Q = shoda_commutator_matrix(al.as_matrix(X))
    return al.from_matrix(X.algebra, P), al.from_matrix(X.algebra, Q)


def _catalog(n: int, F):
    """Zero-diagonal invertible ±1 matrices: antidiagonal (n even), then signed cyclic shifts."""
    out = []
    if n % 2 == 0:
        out.append(Matrix(F, [[1 if r + s == n - 1 else 0 for s in range(n)] for r in range(n)]))
    signs = [(1,) * n] + [tuple(-1 if i == f else 1 for i in range(n)) for f in range(n)]
    for shift in range(1, n):
        for sg in signs:
            out.append(
                Matrix(F, [[sg[r] if s == (r + shift) % n else 0 for s in range(n)] for r in range(n)])
            )
    return out


def _rank_one_directions(n: int, F):
    """Pairs ``(u, v)`` with ``v·u = 0``, so ``u v^T`` is a trace-zero rank-one direction."""
    def e(*pairs):
        c = [F.zero] * n
        for i, x in pairs:
            c[i] = c[i] + x
        return tuple(c)

    for r in range(n):
        for s in range(n):
            if r != s:
                yield e((r, 1)), e((s, 1))
    for r, s in itertools.combinations(range(n), 2):
        yield e((r, 1), (s, 1)), e((r, 1), (s, -1))
        yield e((r, 1), (s, -1)), e((r, 1), (s, 1))


def _line_search(a: Matrix, g0: Matrix):
    """Try ``g = g0 + t u v^T``; ``tr(a g^-1) = 0`` is linear in ``t`` by Sherman–Morrison."""
    n = a.nrows
    F = a.field
    G0 = g0.inverse()
    alpha = (a @ G0).trace()
    M = G0 @ a @ G0
    for u, v in _rank_one_directions(n, F):
        beta = sum((x * y for x, y in zip(v, G0.apply(u))), F.zero)
        gamma = sum((x * y for x, y in zip(v, M.apply(u))), F.zero)
        denom = gamma - alpha * beta
        if denom == 0:
            continue
        t = alpha / denom
        if 1 + t * beta == 0:
            continue
        g = g0 + Matrix(F, [[t * ur * vs for vs in v] for ur in u])
        if (a @ g.inverse()).trace() == 0:
            return g, (u, v, t)
    return None


def trace_zero_pair_factorization(a: Matrix, rng: random.Random | None = None, max_retries: int = PAIR_RETRY_CAP):
    """``(g, h, retries, how)`` with ``a = g h``, both of trace zero and ``g`` invertible."""
    n = a.nrows
    F = a.field
    if n < 2:
        raise IsAField("needs m >= 2")
    if a.is_zero():
        raise ValueError("a must be nonzero")
    catalog = _catalog(n, F)

    def done(g, retries, how):
        h = g.inverse() @ a
        assert g.trace() == 0 and h.trace() == 0 and g @ h == a
        return g, h, retries, how

    for idx, g in enumerate(catalog):
        if (a @ g.inverse()).trace() == 0:
            return done(g, 0, {"strategy": "catalog", "index": idx})
    for idx, g0 in enumerate(catalog):
        hit = _line_search(a, g0)
        if hit:
            g, (u, v, t) = hit
            return done(g, 0, {
                "strategy": "line", "index": idx, "t": F.to_json(t),
                "u": [F.to_json(x) for x in u], "v": [F.to_json(x) for x in v],
            })
    rng = rng or random.Random(0)
    transcript = []
    for attempt in range(1, max_retries + 1):
        perm = list(range(n))
        while any(perm[i] == i for i in range(n)):
            rng.shuffle(perm)
        scale = [Fraction(rng.choice([-1, 1]) * rng.randint(1, RANDOM_HEIGHT), rng.randint(1, RANDOM_HEIGHT))
                 for _ in range(n)]
        g0 = Matrix(F, [[scale[r] if s == perm[r] else 0 for s in range(n)] for r in range(n)])
        hit = _line_search(a, g0)
        transcript.append({"attempt": attempt, "perm": perm, "found": bool(hit)})
        if hit:
            return done(hit[0], attempt, {"strategy": "random_line", "attempt": attempt})
    raise SearchExhausted(f"no trace-zero factorization after {max_retries} random attempts", transcript)


def matrix_field_two_commutators(a: AlgebraElement, rng: random.Random | None = None,
                                 max_retries: int = PAIR_RETRY_CAP) -> CommutatorCertificate:
    alg = a.algebra
    if alg.kind != "MatrixOverField" or alg.m < 2:
        raise IsAField("matrix path needs M_m(Q) with m >= 2")
    g, h, retries, how = trace_zero_pair_factorization(al.as_matrix(a), rng, max_retries)
    P1, Q1 = shoda_commutator_matrix(g)
    P2, Q2 = shoda_commutator_matrix(h)
    el = lambda M: al.from_matrix(alg, M)  # noqa: E731
    cert = CommutatorCertificate(
        a, el(P1), el(Q1), el(P2), el(Q2), "MatrixOverFieldCase", retries_used=retries,
        details={"g": el(g).to_json(), "h": el(h).to_json(), "factorization": how},
    )
    return _finish(cert)


# ---------------------------------------------------------------------------
# matrices over a quaternion algebra


def _qre(q: AlgebraElement):
    return q.coords[0]


class _Grid:
    """m×m quaternion matrix X with a running conjugator ``X = S X0 S^-1``."""

    def __init__(self, X: AlgebraElement):
        self.alg = X.algebra
        self.m = X.algebra.m
        D = X.algebra.division_part
        self.D = D
        self.X = [[al.entry(X, r, s) for s in range(self.m)] for r in range(self.m)]
        o, z = al.one(D), al.zero(D)
        self.S = [[o if r == s else z for s in range(self.m)] for r in range(self.m)]
        self.S_inv = [[o if r == s else z for s in range(self.m)] for r in range(self.m)]
        self.moves = []

    def conj(self, r: int, s: int, c: AlgebraElement):
        """Replace X by E X E^-1 with E = I + c e_rs (r != s)."""
        mul = al.multiply
        m = self.m
        X, S, Si = self.X, self.S, self.S_inv
        for t in range(m):
            X[r][t] = X[r][t] + mul(c, X[s][t])
            S[r][t] = S[r][t] + mul(c, S[s][t])
        for t in range(m):
            X[t][s] = X[t][s] - mul(X[t][r], c)
            Si[t][s] = Si[t][s] - mul(Si[t][r], c)
        self.moves.append((r, s, c))

    def element(self, grid):
        return al.from_entries(self.alg, grid)


def _pure_diagonal_sweep(g: _Grid) -> bool:
    """Move real parts down the diagonal until every diagonal entry is pure."""
    m = g.m
    X = g.X
    for r in range(m - 1):
        rho = _qre(X[r][r])
        if rho == 0:
            continue
        col = next((s for s in range(r + 1, m) if not X[s][r].is_zero()), None)
        if col is not None:
            g.conj(r, col, al.inverse(X[col][r]) * (-rho))
            continue
        row = next((s for s in range(r + 1, m) if not X[r][s].is_zero()), None)
        if row is None:
            units = [al.quaternion(g.D, *c) for c in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
            for s in range(r + 1, m):
                c = next(
                    (u for u in units
                     if not (al.multiply(u, X[s][s]) - al.multiply(X[r][r], u)).is_zero()),
                    None,
                )
                if c is not None:
                    g.conj(r, s, c)
                    row = s
                    break
        if row is None:
            return False
        # E = I + c e_sr changes X_rr by -X_rs c
        g.conj(row, r, al.multiply(al.inverse(X[r][row]), al.scalar(g.D, rho)))
    return all(_qre(X[r][r]) == 0 for r in range(m))


def _random_conjugation(g: _Grid, rng: random.Random):
    m = g.m
    r, s = rng.sample(range(m), 2)
    c = al.AlgebraElement(
        g.D, [Fraction(rng.randint(-RANDOM_HEIGHT, RANDOM_HEIGHT), rng.randint(1, RANDOM_HEIGHT)) for _ in range(4)]
    )
    g.conj(r, s, c)


def ar_commutator(X: AlgebraElement, rng: random.Random | None = None, max_retries: int = AR_RETRY_CAP):
    """``(P, Q, retries)`` with ``[P, Q] = X`` for noncentral ``X`` in M_m(D) of reduced trace 0.

    Stage 1 conjugates X so that its diagonal entries are pure quaternions
    (a deterministic sweep, with random conjugations as a fallback). Stage 2
    picks a diagonal ``P'`` of pure, pairwise non-similar quaternions with
    ``p_r`` orthogonal to ``X'_rr``; the diagonal of ``Q'`` solves
    ``[p_r, q] = X'_rr`` and the off-diagonal entries solve the Sylvester
    equations ``p_r q - q p_s = X'_rs``.
    """
    alg = X.algebra
    if alg.kind != "MatrixOverQuaternion":
        raise Unsupported("ar_commutator() needs a MatrixOverQuaternion element")
    if al.reduced_trace(X) != 0:
        raise ValueError("X must have reduced trace 0")
    if al.is_central(X):
        raise ValueError("X must be noncentral")
    m, D = alg.m, alg.division_part
    g = _Grid(X)
    retries = 0
    transcript = []
    while not _pure_diagonal_sweep(g):
        retries += 1
        transcript.append({"retry": retries, "moves": len(g.moves)})
        if retries > max_retries:
            raise SearchExhausted(f"no pure-diagonal conjugate after {max_retries} retries", transcript)
        _random_conjugation(g, rng or random.Random(0))

    Xp = g.X
    used_norms = set()
    p = []
    for r in range(m):
        x = _orthogonal_pure(Xp[r][r]) if not Xp[r][r].is_zero() else al.quaternion(D, 0, 1, 0, 0)
        scale = 1
        while al.quaternion_norm(x * scale) in used_norms:
            scale += 1
        x = x * scale
        used_norms.add(al.quaternion_norm(x))
        p.append(x)
    Qp = [[al.zero(D) for _ in range(m)] for _ in range(m)]
    for r in range(m):
        if not Xp[r][r].is_zero():
            y = solve_linear(al.ad_operator(p[r]), Xp[r][r].coords)
            assert y is not None
            Qp[r][r] = AlgebraElement(D, y)
        for s in range(m):
            if r != s:
                sol = sylvester_solve(p[r], p[s], Xp[r][s])
                assert sol is not None
                Qp[r][s] = sol
    Pp = [[p[r] if r == s else al.zero(D) for s in range(m)] for r in range(m)]
    S, S_inv = g.element(g.S), g.element(g.S_inv)
    P = al.multiply(al.multiply(S_inv, g.element(Pp)), S)
    Q = al.multiply(al.multiply(S_inv, g.element(Qp)), S)
    assert al.commutator(P, Q) == X
    return P, Q, retries


def _t_catalog(m: int):
    lam = 1
    while True:
        rows = [[1 if r == s else 0 for s in range(m)] for r in range(m)]
        rows[0][1] = lam
        yield lam, Matrix(QQ, rows)
        lam += 1


def matrix_quaternion_two_commutators(a: AlgebraElement, rng: random.Random | None = None,
                                      max_retries: int = AR_RETRY_CAP) -> CommutatorCertificate:
    alg = a.algebra
    if alg.kind != "MatrixOverQuaternion" or alg.m < 2:
        raise Unsupported("needs M_m(D) with m >= 2")
    skipped = []
    for lam, t in _t_catalog(alg.m):
        if not in_kronecker_image(a, t):
            break
        skipped.append(lam)
    hf: HyperplaneFactorization = hyperplane_factorize(a, reduced_trace_functional(alg), t)
    assert not al.is_central(hf.h1) and not al.is_central(hf.h2)
    b, c, r1 = ar_commutator(hf.h1, rng, max_retries)
    d, e, r2 = ar_commutator(hf.h2, rng, max_retries)
    cert = CommutatorCertificate(
        a, b, c, d, e, "MatrixOverQuaternionCase", retries_used=r1 + r2,
        details={
            "t_lambda": lam,
            "skipped_lambdas": skipped,
            "h1": hf.h1.to_json(),
            "h2": hf.h2.to_json(),
            "d0": hf.d0.to_json(),
            "k0": hf.k0.to_json(),
        },
    )
    return _finish(cert)

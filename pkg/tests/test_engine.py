import json
import random
from fractions import Fraction

import pytest

from twocomm import algebra as al
from twocomm.engine import (
    AR_RETRY_CAP,
    PAIR_RETRY_CAP,
    CommutatorCertificate,
    ar_commutator,
    decompose,
    division_two_commutators,
    inverse_as_commutator,
    matrix_quaternion_two_commutators,
    pure_quaternion_commutator,
    shoda_commutator,
    shoda_commutator_matrix,
    sylvester_solve,
    trace_zero_pair_factorization,
    verify_certificate,
    zero_diagonal_similarity,
)
from twocomm.errors import IsAField, Unsupported
from twocomm.fields import GF, QQ
from twocomm.hyperplane import in_kronecker_image
from twocomm.linalg import Matrix, independent_subset
from twocomm.oracle import independent_check

H = al.HAMILTON
M2 = al.matrix_algebra(2)
M3 = al.matrix_algebra(3)
M2H = al.matrix_quaternion_algebra(2)


def q(*c):
    return al.quaternion(H, *c)


I, J, K = q(0, 1), q(0, 0, 1), q(0, 0, 0, 1)


def M(*rows):
    return Matrix(QQ, rows)


def _check(cert):
    assert cert.verified
    assert verify_certificate(cert)
    assert independent_check(cert)
    left = al.commutator(cert.b, cert.c)
    right = al.commutator(cert.d, cert.e)
    assert al.multiply(left, right) == cert.a


# --- dispatcher


def test_zero_uses_equal_pair():
    cert = decompose(al.zero(M2))
    assert cert.path == "TrivialZero"
    assert cert.d == cert.e
    _check(cert)


def test_identity_m2():
    cert = decompose(al.one(M2))
    assert cert.path == "MatrixOverFieldCase"
    _check(cert)


def test_field_refused():
    with pytest.raises(IsAField):
        decompose(al.scalar(al.matrix_algebra(1), 3))


def test_finite_field_refused():
    with pytest.raises(Unsupported):
        decompose(al.one(al.matrix_algebra(2, GF(3))))


def test_one_by_one_quaternion_matrix_goes_to_division_case():
    a = al.AlgebraElement(al.matrix_quaternion_algebra(1), (1, 2, 3, 4))
    cert = decompose(a)
    assert cert.path == "DivisionCase"
    _check(cert)


# --- division case


def test_division_trace_for_i():
    cert, tr = division_two_commutators(I)
    assert (tr.u, tr.v, tr.uv) == (I, J, K * 2)
    assert tr.lam == 0 and tr.branch == "lambda_zero"
    assert al.commutator(tr.u, tr.b) == al.multiply(I, tr.w)
    assert tr.w == al.multiply(al.inverse(tr.uv), tr.ell + tr.v * tr.lam)
    # w^-1 = [u, ell^-1 v]
    assert al.commutator(cert.d, cert.e) == al.inverse(tr.w)
    assert (cert.b, cert.d, cert.e) == (I, I, al.multiply(al.inverse(tr.ell), J))
    _check(cert)


def test_division_deterministic_bytes():
    docs = {json.dumps(division_two_commutators(I)[0].to_json(), sort_keys=True) for _ in range(3)}
    assert len(docs) == 1


def test_division_central_input():
    cert, tr = division_two_commutators(al.scalar(H, 3))
    assert tr.u == I
    _check(cert)


def test_division_one_plus_i_records_branch():
    cert, tr = division_two_commutators(q(1, 1))
    assert tr.branch in ("lambda_zero", "lambda_nonzero")
    assert (tr.lam == 0) == (tr.branch == "lambda_zero")
    _check(cert)


def test_division_lambda_nonzero_branch_occurs(rng):
    branches = set()
    for a, b in [(-1, -1), (-2, -3), (-5, -7)]:
        D = al.quaternion_algebra(a, b)
        for _ in range(40):
            d = al.random_element(D, rng)
            if d.is_zero():
                continue
            cert, tr = division_two_commutators(d)
            branches.add(tr.branch)
            _check(cert)
            assert not tr.uv.is_zero()
            assert independent_subset(QQ, 4, [w.coords for w in tr.W_basis]).dim == 3
            assert al.commutator(tr.u, tr.b) == al.multiply(d, tr.w)
    assert "lambda_zero" in branches


def test_lambda_is_zero_for_quaternions(rng):
    # [u, v] and w both anticommute with the pure part of u, so [u, v] w lies in F(u)
    for _ in range(100):
        d = al.random_element(H, rng)
        if not d.is_zero():
            assert division_two_commutators(d)[1].lam == 0


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(-2, 3), Fraction(5)])
def test_inverse_as_commutator_lambda_nonzero(lam, rng):
    D = al.quaternion_algebra(-2, -3)
    for _ in range(10):
        u = al.random_element(D, rng, 5)
        if al.is_central(u):
            continue
        v = al.quaternion(D, 0, 0, 1) if not al.commutator(u, al.quaternion(D, 0, 0, 1)).is_zero() \
            else al.quaternion(D, 0, 1)
        ell = al.one(D) * rng.randint(1, 4) + u * rng.randint(-3, 3)
        w = al.multiply(al.inverse(al.commutator(u, v)), ell + v * lam)
        p, q, branch = inverse_as_commutator(u, v, ell, lam)
        assert branch == "lambda_nonzero"
        assert q == ell + v * lam
        assert al.commutator(p, q) == al.inverse(w)


def test_inverse_as_commutator_lambda_zero():
    p, q, branch = inverse_as_commutator(I, J, al.scalar(H, 2), 0)
    assert branch == "lambda_zero"
    w = al.multiply(al.inverse(K * 2), al.scalar(H, 2))
    assert al.commutator(p, q) == al.inverse(w)


# --- quaternion building blocks


@pytest.mark.parametrize(
    "target",
    [(0, 0, 0, 2), (0, 1, 1, 0), (0, 0, 0, Fraction(1, 3)), (0, 3, -2, 5)],
)
def test_pure_quaternion_commutator(target):
    x, y = pure_quaternion_commutator(q(*target))
    assert al.commutator(x, y) == q(*target)


def test_pure_quaternion_commutator_general_ab(rng):
    D = al.quaternion_algebra(-3, -5)
    for _ in range(20):
        t = al.AlgebraElement(D, [0] + [rng.randint(-4, 4) for _ in range(3)])
        if t.is_zero():
            continue
        x, y = pure_quaternion_commutator(t)
        assert al.commutator(x, y) == t


def test_sylvester_examples():
    x = sylvester_solve(I, I * 2, J)
    assert al.multiply(I, x) - al.multiply(x, I * 2) == J
    x = sylvester_solve(I, I, J)
    assert x is not None and al.multiply(I, x) - al.multiply(x, I) == J
    assert sylvester_solve(I, I, al.one(H)) is None


# --- matrices over Q


def test_zero_diagonal_examples():
    S = zero_diagonal_similarity(M([1, 0], [0, -1]))
    Y = S.inverse() @ M([1, 0], [0, -1]) @ S
    assert Y[0, 0] == 0 and Y[1, 1] == 0
    assert zero_diagonal_similarity(M([0, 1], [0, 0])) == Matrix.identity(2, QQ)


def test_zero_diagonal_random_4x4(rng):
    for _ in range(10):
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        rows[3][3] = -sum(rows[i][i] for i in range(3))
        X = Matrix(QQ, rows)
        S = zero_diagonal_similarity(X)
        Y = S.inverse() @ X @ S
        assert all(Y[i, i] == 0 for i in range(4))


@pytest.mark.parametrize(
    "rows", [([0, 1], [0, 0]), ([0, 1], [1, 0]), ([1, 0], [0, -1]), ([1, 2, 3], [4, 5, 6], [7, 8, -6])]
)
def test_shoda_examples(rows):
    X = M(*rows)
    P, Q = shoda_commutator_matrix(X)
    assert P @ Q - Q @ P == X


def test_shoda_element_wrapper():
    X = al.from_matrix(M2, M([1, 0], [0, -1]))
    P, Q = shoda_commutator(X)
    assert al.commutator(P, Q) == X


def test_pair_factorization_scalar():
    for lam in (1, -3, Fraction(5, 2)):
        a = Matrix.identity(2, QQ).scale(QQ(lam))
        g, h, retries, how = trace_zero_pair_factorization(a)
        assert g == M([0, 1], [1, 0])
        assert h == M([0, lam], [lam, 0])
        assert retries == 0


@pytest.mark.parametrize("rows", [([0, 1], [0, 0]), ([1, 0], [0, 0]), ([6, Fraction(1, 5)], [0, Fraction(-9, 5)]),
                                  ([1, 2], [3, -1])])
def test_pair_factorization_examples(rows):
    a = M(*rows)
    g, h, _, _ = trace_zero_pair_factorization(a)
    assert g @ h == a and g.trace() == 0 and h.trace() == 0 and g.det() != 0


def test_matrix_field_random_3x3(rng):
    for _ in range(25):
        cert = decompose(al.random_element(M3, rng), seed=rng.getrandbits(32))
        assert cert.retries_used <= PAIR_RETRY_CAP
        _check(cert)


def test_matrix_field_e11():
    _check(decompose(al.matrix_unit(M2, 0, 0)))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_matrix_field_singular_rank_one(m):
    alg = al.matrix_algebra(m)
    _check(decompose(al.matrix_unit(alg, 0, m - 1)))


# --- matrices over quaternions


def test_ar_diag_i_minus_i():
    X = al.from_entries(M2H, [[I, al.zero(H)], [al.zero(H), -I]])
    P, Q, retries = ar_commutator(X)
    assert al.commutator(P, Q) == X and retries == 0


def test_ar_e12():
    X = al.matrix_unit(M2H, 0, 1)
    P, Q, retries = ar_commutator(X)
    assert al.commutator(P, Q) == X


def test_ar_random_trace_zero(rng):
    for _ in range(20):
        X = al.random_element(M2H, rng, 5)
        # shift the real part of X_11 so trd X = 0
        coords = list(X.coords)
        coords[0] -= al.reduced_trace(X) / 2
        X = al.AlgebraElement(M2H, coords)
        if al.is_central(X):
            continue
        P, Q, retries = ar_commutator(X, random.Random(1))
        assert retries <= AR_RETRY_CAP
        assert al.commutator(P, Q) == X


def test_ar_m3(rng):
    alg = al.matrix_quaternion_algebra(3)
    for _ in range(5):
        X = al.random_element(alg, rng, 4)
        coords = list(X.coords)
        coords[0] -= al.reduced_trace(X) / 2
        X = al.AlgebraElement(alg, coords)
        P, Q, _ = ar_commutator(X)
        assert al.commutator(P, Q) == X


def test_mq_identity():
    cert = decompose(al.one(M2H))
    assert cert.path == "MatrixOverQuaternionCase"
    assert cert.details["t_lambda"] == 1
    _check(cert)


def test_mq_skips_t_when_a_in_t_tensor_d():
    t0 = Matrix(QQ, [[1, 1], [0, 1]])
    a = al.kronecker_embed(t0, J, M2H)
    assert in_kronecker_image(a, t0)
    cert = matrix_quaternion_two_commutators(a)
    assert cert.details["skipped_lambdas"] == [1]
    assert cert.details["t_lambda"] == 2
    _check(cert)


def test_mq_random(rng):
    for _ in range(15):
        cert = decompose(al.random_element(M2H, rng), seed=rng.getrandbits(32))
        _check(cert)


def test_mq_other_quaternion_algebra(rng):
    alg = al.matrix_quaternion_algebra(2, -2, -5)
    for _ in range(5):
        _check(decompose(al.random_element(alg, rng, 5)))


# --- serialization


def test_certificate_json_roundtrip(rng):
    for alg in (H, M2, M2H):
        cert = decompose(al.random_element(alg, rng, 5))
        doc = json.loads(json.dumps(cert.to_json()))
        back = CommutatorCertificate.from_json(doc)
        assert not back.verified
        assert verify_certificate(back)
        assert back.path == cert.path


def test_tampered_certificate_fails():
    cert = decompose(q(1, 2, 3, 4))
    bad = CommutatorCertificate(cert.a, cert.b, cert.c * 2, cert.d, cert.e, cert.path)
    assert not verify_certificate(bad)
    assert not independent_check(bad)


def test_dispatcher_totality(rng):
    kinds = [H, al.quaternion_algebra(-2, -3), M2, M3, al.matrix_algebra(4), M2H]
    for i in range(120):
        alg = kinds[i % len(kinds)]
        a = al.random_element(alg, rng, 10) if i % 17 else al.zero(alg)
        _check(decompose(a, seed=i))

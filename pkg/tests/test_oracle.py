import importlib
import os
import subprocess
import sys

import pytest

from twocomm import algebra as al
from twocomm import kernels
from twocomm.errors import IsAField, TooLarge
from twocomm.kernels import _pykernels
from twocomm.oracle import cross_check, enumerate_products

BACKENDS = [_pykernels]
try:
    from twocomm.kernels import _ckernels

    BACKENDS.append(_ckernels)
except ImportError:
    _ckernels = None


def test_m2_f2():
    r = enumerate_products(2, 2)
    assert (r.total, r.covers_all, r.missing) == (16, True, ())
    assert r.commutator_set_size == 8 == r.trace_zero_count


def test_m2_f3():
    r = enumerate_products(3, 2)
    assert (r.total, r.product_set_size, r.covers_all) == (81, 81, True)
    assert r.commutator_set_size == 27


def test_m3_f2():
    r = enumerate_products(2, 3)
    assert r.total == 512 and r.covers_all


def test_refusals():
    with pytest.raises(IsAField):
        enumerate_products(2, 1)
    with pytest.raises(TooLarge):
        enumerate_products(3, 3)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_backend_commutators_match_direct_enumeration(mod):
    # independent recomputation with plain nested lists
    p, m = 3, 2
    comm = mod.commutator_bitmap(p, m)
    expect = set()
    mats = [_pykernels.decode(c, p, m) for c in range(p ** 4)]
    for x in mats:
        for y in mats:
            xy = [(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
                  (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p]
            yx = [(y[0] * x[0] + y[1] * x[2]) % p, (y[0] * x[1] + y[1] * x[3]) % p,
                  (y[2] * x[0] + y[3] * x[2]) % p, (y[2] * x[1] + y[3] * x[3]) % p]
            expect.add(_pykernels.encode([(a - b) % p for a, b in zip(xy, yx)], p))
    assert {c for c in range(len(comm)) if comm[c]} == expect


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (5, 2), (2, 3)])
def test_backends_agree(p, m):
    a = _pykernels.commutator_bitmap(p, m)
    assert a == _ckernels.commutator_bitmap(p, m)
    codes = [c for c in range(len(a)) if a[c]]
    assert _pykernels.product_bitmap(p, m, codes) == _ckernels.product_bitmap(p, m, codes)


def test_encoding_roundtrip():
    for c in range(81):
        assert _pykernels.encode(_pykernels.decode(c, 3, 2), 3) == c


def test_env_var_forces_fallback():
    code = "import twocomm.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, TWOCOMM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")


def test_cross_check_small():
    rep = cross_check(seed=5, trials=8)
    assert rep["all_verified"]
    assert rep["tamper_flagged"] is True
    for k in rep["kinds"]:
        assert k["verified"] == k["trials"] == 8 and k["within_caps"]
    assert rep["kinds"][0]["max_retries"] == 0


def test_cross_check_general_quaternion_kind():
    kinds = (("(-2,-3)", al.quaternion_algebra(-2, -3)), ("M2(-1,-3)", al.matrix_quaternion_algebra(2, -1, -3)))
    rep = cross_check(seed=1, trials=5, kinds=kinds)
    assert rep["all_verified"] and rep["tamper_flagged"]

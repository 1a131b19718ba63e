"""Enumeration kernels for the finite-ring oracle.

The compiled extension is used when it was built; otherwise, or when
``TWOCOMM_PURE_PYTHON`` is set to a nonempty value, the pure-Python
implementation is selected.  ``BACKEND`` names the active one.
"""
import os

from . import _pykernels

if os.environ.get("TWOCOMM_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

commutator_bitmap = _impl.commutator_bitmap
product_bitmap = _impl.product_bitmap
decode = _pykernels.decode
encode = _pykernels.encode

__all__ = ["BACKEND", "commutator_bitmap", "product_bitmap", "decode", "encode"]

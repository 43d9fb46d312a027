"""Search kernel backend, chosen at import.

The compiled extension is used when it was built; otherwise, or when the
environment variable SQORBITS_PURE_PYTHON is set to a non-empty value, the
pure-Python kernels take over.  Both return identical candidate lists.
"""
import os

from . import _kernels_py

if os.environ.get("SQORBITS_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"
MODULI = _kernels_py.MODULI

fixed_y_candidates = _impl.fixed_y_candidates
m_box_candidates = _impl.m_box_candidates

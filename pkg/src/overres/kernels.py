"""Backend selection for the hot modular-arithmetic kernels.

The compiled extension ``overres._ckernels`` is used when it was built;
otherwise (or when ``OVERRES_PURE_PYTHON=1`` is set) the numpy versions in
:mod:`overres._pykernels` are used.  Both backends return identical arrays.
"""
from __future__ import annotations

import os

from overres import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("OVERRES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from overres import _ckernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

matmul_mod = _impl.matmul_mod
batch_matmul_mod = _impl.batch_matmul_mod
rref_mod = _impl.rref_mod


def backends() -> dict:
    """Every importable backend keyed by name (used by tests and the benchmark)."""
    found = {"python": _pykernels}
    try:
        from overres import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found

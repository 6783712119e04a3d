"""Kernel selection: compiled Cython kernels when built, pure Python otherwise.

Set COMPUTADS_PURE_PYTHON=1 to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
coset_enumerate = _pykernels.coset_enumerate
integer_rank = _pykernels.integer_rank

if not os.environ.get("COMPUTADS_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        coset_enumerate = _ckernels.coset_enumerate
        integer_rank = _ckernels.integer_rank
        BACKEND = "cython"

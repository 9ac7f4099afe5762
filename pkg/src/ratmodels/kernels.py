"""Backend selection for the hot kernels.

The compiled module is used when it was built; otherwise the pure-Python
twin. Setting ``RATMODELS_PURE_PYTHON=1`` forces the fallback.
"""
import os

from ratmodels import _pykernels

BACKEND = "python"
echelon = _pykernels.echelon
word_product = _pykernels.word_product

if not os.environ.get("RATMODELS_PURE_PYTHON"):
    try:
        from ratmodels import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        echelon = _ckernels.echelon
        word_product = _ckernels.word_product

__all__ = ["BACKEND", "echelon", "word_product"]

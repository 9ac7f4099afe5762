"""Exact computations with Sullivan and Quillen models of rational spaces."""
from ratmodels.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]

"""Kernel backend selection.

The hot inner loops (per-node edge counting, connected components, the
threshold scan and the perceptron epoch loop) exist twice: as numba
@njit kernels and as pure-numpy equivalents. The EDGESIGN_BACKEND
environment variable picks the implementation at import time:

    auto    numba when importable, numpy otherwise (default)
    numba   require numba, raise if it cannot be imported
    numpy   force the pure-numpy fallback

Both backends produce bit-identical results; benchmarks/bench_backends.py
compares their speed.
"""
import os
import warnings

_choice = os.environ.get("EDGESIGN_BACKEND", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"EDGESIGN_BACKEND must be one of auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    from . import numpy_kernels as kernels
    BACKEND = "numpy"
else:
    try:
        from . import numba_kernels as kernels
        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        warnings.warn(
            "numba is not importable; falling back to pure-numpy kernels")
        from . import numpy_kernels as kernels
        BACKEND = "numpy"

observed_counts = kernels.observed_counts
component_labels = kernels.component_labels
boundary_mistakes = kernels.boundary_mistakes
perceptron_train = kernels.perceptron_train

"""Backend selection for the float kernels.

The compiled extension is used when it imports; otherwise the numpy fallback.
``use_backend`` switches explicitly (tests and the benchmark use it).
"""
from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_NAMES = (
    "oct_mul_batch",
    "cayley_curvature_batch",
    "cayley_sectional_batch",
    "cayley_jacobi_matrix",
    "jacobi_matrix",
    "jacobi_matrix_batch",
    "jacobi_traces_batch",
)

BACKEND = "python"


def available() -> list[str]:
    return ["compiled", "python"] if _ckernels is not None else ["python"]


def module(name: str) -> ModuleType:
    if name == "compiled":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def use_backend(name: str) -> str:
    """Route the module-level kernel functions to ``name``; returns the previous backend."""
    global BACKEND
    mod = module(name)
    previous = BACKEND
    for fn in _NAMES:
        globals()[fn] = getattr(mod, fn)
    BACKEND = name
    return previous


use_backend("compiled" if _ckernels is not None else "python")

"""Sampling kernels with a compiled backend and a numpy fallback.

The compiled extension is used when it was built and importable; setting
``EFIXLAB_PURE_PYTHON=1`` forces the fallback.  Both backends return
identical results, including witness order.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("EFIXLAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = "cython" if compiled_backend is not None else "python"
triangle_scan = _active.triangle_scan
ladder_diameters = _active.ladder_diameters

__all__ = ["BACKEND", "triangle_scan", "ladder_diameters", "python_backend", "compiled_backend"]

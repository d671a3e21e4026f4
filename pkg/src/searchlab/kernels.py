"""Backend selection for the RK4 kernels.

The compiled Cython extension is used when it imports; otherwise the
pure-Python versions take over. Set ``SEARCHLAB_PURE_PYTHON=1`` to force
the fallback.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("SEARCHLAB_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

rk4_sampled = backend.rk4_sampled
rk4_structured = backend.rk4_structured
apply_structured = backend.apply_structured


def available_backends():
    """Map backend name to module for every importable backend."""
    found = {"python": python_backend}
    if compiled_backend is not None:
        found["cython"] = compiled_backend
    return found

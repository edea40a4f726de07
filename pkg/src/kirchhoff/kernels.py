"""Backend selection for the radial integrator.

The compiled extension is used when it was built; otherwise the pure-Python
implementation is loaded.  Setting ``KIRCHHOFF_PURE_PYTHON=1`` forces the
fallback.
"""
import os

from . import _kernels_py
from ._kernels_py import BLOWUP, CROSSES, DECAYS, INCONCLUSIVE, UNDERSHOOT

python_integrate_radial = _kernels_py.integrate_radial

try:
    from ._kernels import integrate_radial as compiled_integrate_radial
except ImportError:  # extension not built
    compiled_integrate_radial = None

if compiled_integrate_radial is not None and not os.environ.get("KIRCHHOFF_PURE_PYTHON"):
    integrate_radial = compiled_integrate_radial
    BACKEND = "cython"
else:
    integrate_radial = python_integrate_radial
    BACKEND = "python"

__all__ = [
    "integrate_radial", "python_integrate_radial", "compiled_integrate_radial",
    "BACKEND", "INCONCLUSIVE", "CROSSES", "UNDERSHOOT", "DECAYS", "BLOWUP",
]

"""Kernel backend selection.

The compiled extension covers the hot paths (per-step Mamdani aggregation
and the circuit loop); the numpy fallback keeps the package importable
from a source tree without a C toolchain.  Both expose the same entry
points, so callers only see ``impl``.
"""

try:
    from . import core as impl

    BACKEND = "compiled"
except ImportError:  # extension not built
    from . import pure as impl

    BACKEND = "pure"

__all__ = ["impl", "BACKEND"]

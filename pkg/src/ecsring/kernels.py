"""Backend selection for the integer kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``ECSRING_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python implementation is used.
"""

import os

from . import _kernels_py

_force_py = os.environ.get("ECSRING_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

residues = _impl.residues
scan_grid = _impl.scan_grid
orbit_closure = _impl.orbit_closure

__all__ = ["BACKEND", "residues", "scan_grid", "orbit_closure", "available_backends"]


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels as compiled  # type: ignore[attr-defined]

        out["cython"] = compiled
    except ImportError:
        pass
    return out

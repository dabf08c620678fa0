"""Kernel backend selection.

The compiled extension is preferred when it built; `QFTARITH_PURE_PYTHON=1`
forces the numpy fallback (used by the kernel benchmark and for debugging).
"""

import os

if os.environ.get("QFTARITH_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Which kernel implementation is active: "cython" or "numpy"."""
    return kernels.BACKEND

"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
implementation is a drop-in replacement. Set BRINKFRONT_PURE_PYTHON=1 to
force the fallback (used by the equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("BRINKFRONT_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels

    BACKEND_NAME = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND_NAME = "compiled"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND_NAME = "python"


def backend_name() -> str:
    """Which kernel implementation this process is running on."""
    return BACKEND_NAME

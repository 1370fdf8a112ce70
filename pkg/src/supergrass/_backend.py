"""Select the term-kernel implementation at import time.

The compiled extension is used when it was built; otherwise the pure-Python
module is used. ``SUPERGRASS_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("SUPERGRASS_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]

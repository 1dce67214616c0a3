"""Backend selection for the elimination kernel.

The compiled extension is preferred when it imported cleanly; setting
``BIHAM_PURE=1`` in the environment forces the pure-Python kernel (useful
for benchmarking and for debugging the extension itself).
"""

import os

if os.environ.get("BIHAM_PURE"):
    from . import _pure_kernels as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure_kernels as _impl

BACKEND = _impl.BACKEND
row_echelon_ff = _impl.row_echelon_ff
rank_int = _impl.rank_int

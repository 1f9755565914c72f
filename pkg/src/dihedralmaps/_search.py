"""Search kernel selection: compiled extension if present, else pure Python.

Set DIHEDRALMAPS_PURE=1 to force the pure-Python kernel (the benchmark uses
this to compare the two).  Both kernels implement the same DFS in the same
order and must return identical results.
"""

from __future__ import annotations

import os

if os.environ.get("DIHEDRALMAPS_PURE") == "1":
    from . import _search_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _search_py as _impl

search_regular_cycles = _impl.search_regular_cycles
KERNEL_COMPILED = bool(getattr(_impl, "IS_COMPILED", False))

__all__ = ["search_regular_cycles", "KERNEL_COMPILED"]

"""Kernel dispatch: compiled core when available, NumPy fallback otherwise.

Set PERRONLAB_PURE=1 to force the fallback.  `BACKEND` reports which
implementation is active ("cython" or "python").
"""

from __future__ import annotations

import os

from perronlab import _pure

if os.environ.get("PERRONLAB_PURE"):
    _impl = _pure
else:
    try:
        from perronlab import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = "python" if _impl is _pure else "cython"

bfs_distances = _impl.bfs_distances
csr_matvec = _impl.csr_matvec
power_iteration = _impl.power_iteration

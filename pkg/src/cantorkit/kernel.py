"""Kernel backend selection.

The compiled extension is preferred; the pure-Python kernel is the fallback.
Set CANTORKIT_PURE=1 to force the fallback (used by the benchmark and by
cross-backend tests).  `eval_point` (arbitrary oracles, with tracing) always
runs in Python: its cost is dominated by the oracle callback either way.
"""

from __future__ import annotations

import os

from . import _kernel_py
from ._kernel_py import eval_point  # noqa: F401

if os.environ.get("CANTORKIT_PURE") == "1":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

BACKEND: str = _impl.BACKEND

eval_word = _impl.eval_word
values_on_words = _impl.values_on_words
values_on_grid = _impl.values_on_grid
least_constant_depth = _impl.least_constant_depth
grid_least_constant_depth = _impl.grid_least_constant_depth

pure = _kernel_py

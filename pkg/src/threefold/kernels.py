"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``THREEFOLD_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by the tests that check both implementations agree).
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("THREEFOLD_PURE_PYTHON", "") != "1":
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

canonical_key = _impl.canonical_key
dominates = _impl.dominates
dominates_any = _impl.dominates_any

"""Kernel selection: compiled Cython ops when available, numpy/pure fallback otherwise.

Set ``GROUPGEO_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

import os

from . import _ops_py

if os.environ.get("GROUPGEO_PURE_PYTHON") == "1":
    ops = _ops_py
    HAVE_COMPILED = False
else:
    try:
        from . import _ops_cy as ops  # type: ignore[no-redef]

        HAVE_COMPILED = True
    except ImportError:
        ops = _ops_py
        HAVE_COMPILED = False

__all__ = ["ops", "HAVE_COMPILED"]

"""Kernel dispatch: the compiled extension when it imports, else pure Python.

Set ``WEBSPELL_PURE_PYTHON=1`` to force the fallback.
"""

import os

from webspell import _pykernels

if os.environ.get("WEBSPELL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from webspell import _kernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

levenshtein = _impl.levenshtein
osa_distance = _impl.osa_distance
lcs = _impl.lcs
search_row = _impl.search_row

__all__ = ["BACKEND", "levenshtein", "osa_distance", "lcs", "search_row"]

"""Kernel backend selection.

The compiled ``_core`` extension is used when importable; setting
``QPTRIPLES_PURE_PYTHON=1`` forces the pure Python fallback.
"""

import os

from . import _pycore

if os.environ.get("QPTRIPLES_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _pycore

BACKEND = "python" if _impl is _pycore else "cython"

max_cliques = _impl.max_cliques
act_table = _impl.act_table
count_levels = _impl.count_levels
qp2_violations = _impl.qp2_violations


def backend(name):
    """Return the kernel module for ``"python"`` or ``"cython"`` (ImportError if not built)."""
    if name == "python":
        return _pycore
    if name == "cython":
        from . import _core

        return _core
    raise ValueError(name)

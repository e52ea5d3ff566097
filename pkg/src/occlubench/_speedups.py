"""Backend selection for the hot kernels.

The compiled extension (occlubench._native) is preferred when importable;
set OCCLUBENCH_PURE_PYTHON=1 to force the pure-Python kernels. Both
backends are bit-identical by construction; tests cross-check them.
"""

import os

from occlubench import _rng

FORCE_PYTHON = bool(os.environ.get("OCCLUBENCH_PURE_PYTHON"))

try:
    if FORCE_PYTHON:
        raise ImportError("pure-Python backend forced via OCCLUBENCH_PURE_PYTHON")
    from occlubench import _native
except ImportError:
    _native = None

BACKEND = "python" if _native is None else "native"


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a, compiled when available (the pure loop is slow on
    megabyte-sized pixel buffers)."""
    if _native is not None:
        return _native.fnv1a_64(data)
    return _rng.fnv1a_64(data)

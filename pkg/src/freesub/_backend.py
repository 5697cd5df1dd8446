"""Kernel selection.

The compiled kernels are used when the extension was built; otherwise the
pure-Python twin is used.  ``FREESUB_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("FREESUB_PURE_PYTHON"):
    kernels: ModuleType = _ckernels
else:
    kernels = _pykernels


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def current_backend() -> str:
    return kernels.BACKEND


def set_backend(name: str) -> None:
    global kernels
    try:
        kernels = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}") from None

"""Backend selection for the search kernels.

The compiled extension is used when importable; setting the environment
variable ``MAXMINSUM_PURE_PYTHON`` to a non-empty value forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pycore


def _load_compiled() -> ModuleType | None:
    try:
        from . import _core
    except ImportError:
        return None
    return _core


_compiled = None if os.environ.get("MAXMINSUM_PURE_PYTHON") else _load_compiled()

BACKEND = "cython" if _compiled is not None else "python"
_active: ModuleType = _compiled if _compiled is not None else _pycore


def available_backends() -> list[str]:
    names = ["python"]
    if _load_compiled() is not None:
        names.insert(0, "cython")
    return names


def get_backend(name: str | None = None) -> ModuleType:
    """Kernel module by name ('cython' or 'python'); the active one by default."""
    if name is None:
        return _active
    if name == "python":
        return _pycore
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise RuntimeError("compiled kernels are not available in this install")
        return mod
    raise ValueError(f"unknown backend {name!r}")

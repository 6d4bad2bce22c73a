"""First-fit position search, with a compiled kernel when available.

The compiled extension is built at install time; a pure-numpy fallback with
identical semantics is selected at import when the extension is missing.
Set DWTM_PACKING_BACKEND=python|cython to force a backend, or call
use_backend() at runtime (the benchmark does this to compare the two).
"""

from __future__ import annotations

import logging
import os
from typing import Callable, Optional

import numpy as np

from . import _scan_py

logger = logging.getLogger(__name__)

ScanFn = Callable[[np.ndarray, int, int], Optional[tuple[int, int]]]

_BACKENDS: dict[str, ScanFn] = {"python": _scan_py.find_first_fit}
try:
    from . import _fastscan

    _BACKENDS["cython"] = _fastscan.find_first_fit
except ImportError:  # pragma: no cover - depends on build environment
    logger.debug("compiled packing kernel unavailable; using pure-Python scan")

_active = os.environ.get("DWTM_PACKING_BACKEND") or (
    "cython" if "cython" in _BACKENDS else "python"
)
if _active not in _BACKENDS:
    raise ImportError(
        f"DWTM_PACKING_BACKEND={_active!r} requested but that backend is not available"
    )


def backends() -> dict[str, ScanFn]:
    """All importable scan implementations, keyed by name."""
    return dict(_BACKENDS)


def active_backend() -> str:
    return _active


def use_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown packing backend {name!r}; have {sorted(_BACKENDS)}")
    _active = name


def find_first_fit(occ: np.ndarray, height: int, length: int) -> Optional[tuple[int, int]]:
    """Lexicographically smallest free (row, col) for a height x length block."""
    return _BACKENDS[_active](occ, height, length)

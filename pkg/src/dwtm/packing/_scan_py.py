"""Pure-Python (numpy) first-fit scan over an occupancy grid.

Fallback used when the compiled kernel is unavailable.  Semantics are the
contract both backends must honor: return the lexicographically smallest
(row, col) whose height x length block is entirely free, or None.
"""

from __future__ import annotations

from typing import Optional

import numpy as np


def find_first_fit(occ: np.ndarray, height: int, length: int) -> Optional[tuple[int, int]]:
    n, m = occ.shape
    if height <= 0 or length <= 0 or height > n or length > m:
        return None
    # Summed-area table; a window is free iff its occupied-cell count is 0.
    sat = np.zeros((n + 1, m + 1), dtype=np.int64)
    np.cumsum(np.cumsum(occ, axis=0), axis=1, out=sat[1:, 1:])
    win = (
        sat[height:, length:]
        - sat[: n - height + 1, length:]
        - sat[height:, : m - length + 1]
        + sat[: n - height + 1, : m - length + 1]
    )
    flat = np.flatnonzero(win.ravel() == 0)  # C order == row-major scan
    if flat.size == 0:
        return None
    row, col = divmod(int(flat[0]), win.shape[1])
    return row, col

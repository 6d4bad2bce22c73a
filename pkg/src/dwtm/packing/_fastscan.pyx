# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled first-fit scan over an occupancy grid.

Same contract as the pure-Python fallback: lexicographically smallest
(row, col) whose height x length block is free, else None.  Builds a
summed-area table once per call, then scans candidates with O(1) window
checks and bails out at the first hit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def find_first_fit(occ, int height, int length):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2, mode="c"] grid = np.ascontiguousarray(occ, dtype=np.uint8)
    cdef int n = grid.shape[0]
    cdef int m = grid.shape[1]
    if height <= 0 or length <= 0 or height > n or length > m:
        return None

    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] sat = np.zeros((n + 1, m + 1), dtype=np.int64)
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(m):
            sat[i + 1, j + 1] = grid[i, j] + sat[i, j + 1] + sat[i + 1, j] - sat[i, j]

    cdef Py_ssize_t r, c
    cdef cnp.int64_t occupied
    for r in range(n - height + 1):
        for c in range(m - length + 1):
            occupied = (
                sat[r + height, c + length]
                - sat[r, c + length]
                - sat[r + height, c]
                + sat[r, c]
            )
            if occupied == 0:
                return int(r), int(c)
    return None

"""Numpy fallback for the statevector kernels in ``_kernels.pyx``."""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=512)
def _pair_indices(n, controls, target):
    idx = np.arange(1 << n)
    tbit = 1 << (n - 1 - target)
    mask = tbit
    want = 0
    for c in controls:
        b = 1 << (n - 1 - c)
        mask |= b
        want |= b
    lo = idx[(idx & mask) == want]
    return lo, lo | tbit


def apply_controlled_1q(state, n, controls, target, m):
    """Apply 2x2 ``m`` to ``target`` on rows where all ``controls`` are 1.

    ``state`` has shape (2**n, batch); qubit 0 is the most significant bit.
    Modified in place.
    """
    lo, hi = _pair_indices(n, tuple(controls), target)
    a0 = state[lo]
    a1 = state[hi]
    state[lo] = m[0, 0] * a0 + m[0, 1] * a1
    state[hi] = m[1, 0] * a0 + m[1, 1] * a1

"""Sobol low-discrepancy sequence for up to seven dimensions.

Direction numbers are the Joe–Kuo set (new-joe-kuo-6.21201); generation uses
the usual Gray-code update, 32 bits of precision.  The index-0 point (all
zeros) is never emitted: it maps onto a corner of any parameter box and
degrades uniformity for small samples, so the first point delivered is the
all-0.5 point at index 1.

The implementation is intentionally self-contained; the test suite checks it
against an independent reference implementation.
"""

from __future__ import annotations

import numpy as np

_BITS = 32
_SCALE = 2.0 ** -_BITS

# (degree s, polynomial coefficients a, initial direction numbers m_1..m_s)
# for dimensions 2..7; dimension 1 uses m_k = 1 for every k.
_JOE_KUO = (
    (1, 0, (1,)),
    (2, 1, (1, 3)),
    (3, 1, (1, 3, 1)),
    (3, 2, (1, 1, 1)),
    (4, 1, (1, 1, 3, 3)),
    (4, 4, (1, 3, 5, 13)),
)

MAX_DIM = len(_JOE_KUO) + 1


def _direction_integers(dim_index: int) -> np.ndarray:
    """Direction integers V_1..V_BITS for one dimension (already bit-shifted)."""
    v = np.zeros(_BITS + 1, dtype=np.uint64)
    if dim_index == 0:
        for k in range(1, _BITS + 1):
            v[k] = 1 << (_BITS - k)
        return v
    s, a, m = _JOE_KUO[dim_index - 1]
    for k in range(1, min(s, _BITS) + 1):
        v[k] = m[k - 1] << (_BITS - k)
    for k in range(s + 1, _BITS + 1):
        v[k] = v[k - s] ^ (v[k - s] >> np.uint64(s))
        for i in range(1, s):
            if (a >> (s - 1 - i)) & 1:
                v[k] ^= v[k - i]
    return v


class SobolSequence:
    """Stateful Sobol generator over [0, 1)^dim, skip-zero convention."""

    def __init__(self, dim: int):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dim {dim} unsupported; have direction numbers "
                             f"for 1..{MAX_DIM}")
        self.dim = dim
        self._v = np.stack([_direction_integers(j) for j in range(dim)])
        self._x = np.zeros(dim, dtype=np.uint64)
        self._index = 0  # index of the last emitted point

    def next_point(self) -> np.ndarray:
        """Emit the next point of the sequence."""
        # Gray-code step: flip the direction of the lowest zero bit of the
        # previous index.
        c = 1
        n = self._index
        while n & 1:
            n >>= 1
            c += 1
        self._x ^= self._v[:, c]
        self._index += 1
        return self._x.astype(np.float64) * _SCALE

    def take(self, n: int) -> np.ndarray:
        """Emit the next ``n`` points as an (n, dim) array."""
        out = np.empty((n, self.dim))
        for i in range(n):
            out[i] = self.next_point()
        return out


def sobol_points(n: int, dim: int) -> np.ndarray:
    """First ``n`` points of the skip-zero Sobol sequence in [0, 1)^dim."""
    return SobolSequence(dim).take(n)

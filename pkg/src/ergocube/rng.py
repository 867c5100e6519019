"""Noise sources with a frozen bit generator and inverse-CDF normal deviates.

The package standardises on one 64-bit PRNG (NumPy's PCG64) and draws normal
deviates through the inverse normal CDF.  Inverse-CDF sampling consumes
exactly one uniform per normal, so the stream position after ``n`` deviates
is well defined.  Two consequences the rest of the package relies on:

- extending a simulation (same seed, larger ``t_len``) reproduces the shorter
  run bit for bit as a prefix;
- the per-step draw order fixed by each simulator is also the raw stream
  order, which keeps reproducibility independent of vectorisation details.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

# Shifts 53-bit uniforms from [0, 1) onto the open interval (0, 1) so the
# inverse CDF never sees 0 or 1.  Exact in binary64: u*2^53 is an integer.
_OPEN_OFFSET = 2.0 ** -54


class PcgNormals:
    """Stream of standard normal deviates seeded by a 64-bit integer."""

    def __init__(self, seed: int):
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def normals(self, n: int) -> np.ndarray:
        """Return the next ``n`` deviates, consuming one uniform each."""
        u = self._gen.random(n) + _OPEN_OFFSET
        return ndtri(u)


class ZeroNoise:
    """Test hook: a noise source whose every deviate is exactly zero."""

    def normals(self, n: int) -> np.ndarray:
        return np.zeros(n)

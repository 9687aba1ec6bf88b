"""Counter-based uniform streams (splitmix64 hashing).

The reflex encoder draws fresh uniforms every control tick.  Hashing
``(seed, stream, tick, lane)`` gives reproducible, seekable randomness
with no sequential state to keep in sync across modules.
"""

from __future__ import annotations

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(z):
    """splitmix64 finalizer (vectorized over uint64 arrays)."""
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _absorb(h, word: int):
    return _mix(h ^ (np.uint64(word & 0xFFFFFFFFFFFFFFFF) * _GOLDEN))


class CounterRng:
    """Stateless uniform generator keyed by (seed, stream, tick, lane)."""

    def __init__(self, seed: int):
        self._base = _absorb(np.uint64(0), seed)

    def uniforms(self, stream: int, tick: int, n: int) -> np.ndarray:
        """n uniforms in [0, 1) for one (stream, tick) pair."""
        h = _absorb(self._base, stream)
        h = _absorb(h, tick)
        lanes = np.arange(1, n + 1, dtype=np.uint64)
        bits = _mix(h + lanes * _GOLDEN)
        return (bits >> np.uint64(11)) * float(2.0**-53)

    def uniform_block(self, streams: np.ndarray, tick: int, n: int) -> np.ndarray:
        """(len(streams), n) uniforms; row i equals uniforms(streams[i], tick, n)."""
        hs = _mix(self._base ^ (streams.astype(np.uint64) * _GOLDEN))
        hs = _mix(hs ^ (np.uint64(tick & 0xFFFFFFFFFFFFFFFF) * _GOLDEN))
        lanes = np.arange(1, n + 1, dtype=np.uint64)
        bits = _mix(hs[:, None] + lanes[None, :] * _GOLDEN)
        return (bits >> np.uint64(11)) * float(2.0**-53)

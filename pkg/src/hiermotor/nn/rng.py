"""Counter-based deterministic RNG.

A splitmix64 hash of (key, counter) produces the raw 64-bit stream, so any
draw is a pure function of (seed, stream label, counter).  Rollouts replay
bit-exactly from a seed regardless of how many other streams were consumed
in between, and derived streams never collide with their parents.

Gaussian variates use Box-Muller on consecutive counter pairs.
"""

from __future__ import annotations

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = float(2.0 ** -53)


def _splitmix(x: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer over uint64 arrays."""
    with np.errstate(over="ignore"):
        z = (x + _GOLDEN) & _MASK
        z = ((z ^ (z >> np.uint64(30))) * _MIX1) & _MASK
        z = ((z ^ (z >> np.uint64(27))) * _MIX2) & _MASK
        return z ^ (z >> np.uint64(31))


def _hash_label(label: str) -> int:
    h = 1469598103934665603  # FNV-1a 64
    for byte in label.encode("utf8"):
        h = ((h ^ byte) * 1099511628211) & 0xFFFFFFFFFFFFFFFF
    return h


class CounterRng:
    """Deterministic stream of uniforms/normals indexed by an explicit counter."""

    def __init__(self, seed: int, stream: int = 0):
        base = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        with np.errstate(over="ignore"):
            key = _splitmix(np.asarray([base], dtype=np.uint64))[0]
            key = _splitmix(np.asarray([key ^ np.uint64(stream & 0xFFFFFFFFFFFFFFFF)],
                                       dtype=np.uint64))[0]
        self._key = key
        self._counter = 0

    def split(self, label: str) -> "CounterRng":
        """Derive an independent child stream; does not advance this stream."""
        child = CounterRng(0)
        with np.errstate(over="ignore"):
            child._key = _splitmix(
                np.asarray([self._key ^ np.uint64(_hash_label(label))], dtype=np.uint64))[0]
        child._counter = 0
        return child

    def _raw(self, n: int) -> np.ndarray:
        ctrs = np.arange(self._counter, self._counter + n, dtype=np.uint64)
        self._counter += n
        with np.errstate(over="ignore"):
            return _splitmix(ctrs ^ self._key)

    def uniform(self, size=None) -> np.ndarray | float:
        """Uniforms in [0, 1) with 53-bit resolution."""
        n = 1 if size is None else int(np.prod(size))
        u = (self._raw(n) >> np.uint64(11)).astype(np.float64) * _INV53
        if size is None:
            return float(u[0])
        return u.reshape(size)

    def normal(self, size=None) -> np.ndarray | float:
        """Standard normals via Box-Muller on counter pairs."""
        n = 1 if size is None else int(np.prod(size))
        pairs = (n + 1) // 2
        u = (self._raw(2 * pairs) >> np.uint64(11)).astype(np.float64) * _INV53
        u1 = u[:pairs]
        u2 = u[pairs:]
        r = np.sqrt(-2.0 * np.log1p(-u1))  # 1-u1 in (0,1], avoids log(0)
        theta = 2.0 * np.pi * u2
        z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]
        if size is None:
            return float(z[0])
        return z.reshape(size)

    def integers(self, low: int, high: int, size=None):
        """Uniform integers in [low, high)."""
        span = high - low
        if span <= 0:
            raise ValueError("empty integer range")
        n = 1 if size is None else int(np.prod(size))
        vals = low + (self._raw(n) % np.uint64(span)).astype(np.int64)
        if size is None:
            return int(vals[0])
        return vals.reshape(size)

    def choice_p(self, probs) -> int:
        """Single categorical draw by inverse CDF."""
        p = np.asarray(probs, dtype=np.float64)
        u = self.uniform() * p.sum()
        return int(min(np.searchsorted(np.cumsum(p), u, side="right"), len(p) - 1))

    def shuffle(self, items: list) -> list:
        """Fisher-Yates; returns a new list."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.integers(0, i + 1)
            out[i], out[j] = out[j], out[i]
        return out

"""Portable deterministic random number generation.

Everything that must reproduce bit-for-bit across runs and implementations
(train/test splits, forest bootstraps, simulated telemetry) draws from
splitmix64 rather than a platform RNG. The derivations below are the
normative definitions; any port that follows them reproduces identical
streams.

    next_u64     one splitmix64 step (Vigna's reference constants)
    next_double  (next_u64 >> 11) * 2**-53, uniform in [0, 1)
    randrange(n) next_u64() % n
    shuffle      Fisher-Yates, i from len-1 down to 1, j = randrange(i+1)
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_DOUBLE_UNIT = 2.0 ** -53


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * _DOUBLE_UNIT

    def randrange(self, n: int) -> int:
        """Integer in [0, n). Plain modulo; the tiny bias is irrelevant here
        and the simplicity keeps the derivation portable."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, population: int, count: int) -> list[int]:
        """First `count` entries of a partial Fisher-Yates over range(population),
        returned in ascending order."""
        pool = list(range(population))
        for i in range(count):
            j = i + self.randrange(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:count])


def stream_seed(seed: int, step: int) -> int:
    """Seed for an independent per-step stream, e.g. one simulated message."""
    return (seed + step * GOLDEN_GAMMA) & MASK64

"""SplitMix64: a tiny seedable generator whose output is fixed by its definition.

The samplers depend on this exact stream so that a (params, seed) pair names
the same witness in every implementation.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def coeff(self, bound: int) -> int:
        """Integer in [-bound, bound]."""
        return self.next_u64() % (2 * bound + 1) - bound

    def nonzero_coeff(self, bound: int) -> int:
        """Integer in [-bound, bound] \\ {0}."""
        v = self.next_u64() % (2 * bound) - bound
        return v + 1 if v >= 0 else v

"""Perfect matchings of the 2k edge positions in the trace expansion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_K = 5


@dataclass(frozen=True, order=True)
class Pairing:
    """A fixed-point-free involution on ``0..2k-1``.

    ``partner[m] == n`` means edges ``m`` and ``n`` carry the same diagonal
    (positions are zero-based; edge ``m`` joins indices ``i_m`` and ``i_{m+1}``).
    """

    partner: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.partner)
        object.__setattr__(self, "partner", p)
        size = len(p)
        if size == 0 or size % 2:
            raise ValueError("a pairing needs an even, nonzero number of positions")
        for m, n in enumerate(p):
            if not 0 <= n < size or n == m or p[n] != m:
                raise ValueError(f"not a fixed-point-free involution: {p}")

    @classmethod
    def from_pairs(cls, pairs, one_based: bool = False) -> "Pairing":
        shift = 1 if one_based else 0
        flat = [(a - shift, b - shift) for a, b in pairs]
        partner = [-1] * (2 * len(flat))
        for a, b in flat:
            partner[a], partner[b] = b, a
        return cls(tuple(partner))

    @property
    def k(self) -> int:
        return len(self.partner) // 2

    def pairs(self) -> list[tuple[int, int]]:
        return [(m, n) for m, n in enumerate(self.partner) if m < n]

    def rotate(self, shift: int) -> "Pairing":
        size = len(self.partner)
        out = [0] * size
        for m, n in enumerate(self.partner):
            out[(m + shift) % size] = (n + shift) % size
        return Pairing(tuple(out))

    def reflect(self) -> "Pairing":
        size = len(self.partner)
        out = [0] * size
        for m, n in enumerate(self.partner):
            out[size - 1 - m] = size - 1 - n
        return Pairing(tuple(out))

    def canonical(self) -> "Pairing":
        """Smallest representative of the pairing's orbit under rotations and reflection."""
        size = len(self.partner)
        orbit = [self.rotate(s) for s in range(size)]
        orbit += [q.reflect() for q in orbit]
        return min(orbit)


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def enumerate_pairings(k: int) -> list[Pairing]:
    """All ``(2k-1)!!`` pairings of ``2k`` positions in a fixed order."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k={k} outside supported range 1..{MAX_K}")
    return [Pairing.from_pairs(m) for m in _matchings(list(range(2 * k)))]


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def crossing_class(pairing: Pairing) -> int:
    """Number of crossing chord pairs when the positions sit on a circle."""
    pairs = pairing.pairs()
    crossings = 0
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1:]:
            if (a < c < b < d) or (c < a < d < b):
                crossings += 1
    return crossings

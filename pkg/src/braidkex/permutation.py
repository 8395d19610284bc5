"""
Permutations of {0, ..., n-1} stored as image tables.

Composition follows ordinary function notation: ``(p @ q)(i) == p(q(i))``.
The braid projection in :mod:`braidkex.braid` is a homomorphism for this
product, ``pi(u v) == pi(u) @ pi(v)``; see there for how a table is read
off a braid.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from math import lcm


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation table: {image!r}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def reversal(cls, n: int) -> Permutation:
        """The order-reversing permutation i -> n-1-i (image of the half twist)."""
        return cls(tuple(range(n - 1, -1, -1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        image = list(range(n))
        image[i], image[j] = j, i
        return cls(tuple(image))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        image = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, [*cycle[1:], cycle[0]]):
                image[a] = b
        return cls(tuple(image))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __len__(self) -> int:
        return len(self.image)

    def __matmul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        mine = self.image
        return Permutation(tuple(mine[j] for j in other.image))

    def inverse(self) -> Permutation:
        return Permutation(tuple(invert_table(self.image)))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, fixed points included, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.image[i]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return lcm(*cycle_type(self)) if self.n else 1

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)


def cycle_type(p: Permutation) -> list[int]:
    """Sorted cycle lengths of ``p``, counting fixed points as 1-cycles."""
    return sorted(len(c) for c in p.cycles())


def invert_table(table: Sequence[int]) -> list[int]:
    inv = [0] * len(table)
    for i, x in enumerate(table):
        inv[x] = i
    return inv


def left_meet(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """
    Greatest common left divisor of two permutation braids.

    Both arguments and the result are strand tables: ``t[i]`` is the bottom
    position of the strand that starts at position ``i``. A permutation
    braid ``c`` left-divides ``a`` exactly when every pair of strands that
    crosses in ``c`` also crosses in ``a``, so the meet is the largest
    crossing set allowed by both. It is built by a merge sort over starting
    positions: while merging a lower block into an upper block, a strand from
    the upper block may overtake the remaining lower strands only if it ends
    left of all of them in both ``a`` and ``b``. O(n log n).
    """
    n = len(a)
    runs = [[i] for i in range(n)]
    while len(runs) > 1:
        merged = []
        for r in range(0, len(runs) - 1, 2):
            left, right = runs[r], runs[r + 1]
            size = len(left)
            # suffix minima of bottom positions over the lower strands not yet emitted
            min_a = [n] * (size + 1)
            min_b = [n] * (size + 1)
            ca = cb = n
            for k in range(size - 1, -1, -1):
                x = left[k]
                if a[x] < ca:
                    ca = a[x]
                if b[x] < cb:
                    cb = b[x]
                min_a[k] = ca
                min_b[k] = cb
            out = []
            li = 0
            for x in right:
                ax, bx = a[x], b[x]
                while li < size and (ax > min_a[li] or bx > min_b[li]):
                    out.append(left[li])
                    li += 1
                out.append(x)
            if li < size:
                out.extend(left[li:])
            merged.append(out)
        if len(runs) % 2:
            merged.append(runs[-1])
        runs = merged
    meet = [0] * n
    if runs:
        for pos, strand in enumerate(runs[0]):
            meet[strand] = pos
    return meet

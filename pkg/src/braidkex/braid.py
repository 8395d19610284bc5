"""
Words in the Artin generators of the braid group B_n.

A letter ``i > 0`` stands for the generator x_i crossing strands i-1 and i
(0-indexed positions), and ``-i`` for its inverse. Words are kept freely
reduced at all times. Deciding equality of words needs the Garside normal
form, see :mod:`braidkex.garside`.

The projection to the symmetric group reads a braid top to bottom and
records, for every bottom position ``j``, the top position of the strand
that ends there. With that reading ``permutation_of(u * v)`` equals
``permutation_of(u) @ permutation_of(v)``: the left word's letters act first
on the arrangement of strands.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .permutation import Permutation


class BraidError(ValueError):
    pass


class WordSyntaxError(BraidError):
    pass


class GeneratorRangeError(BraidError):
    pass


class StrandMismatchError(BraidError):
    pass


def check_strands(n: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise BraidError(f"strand count must be an integer >= 2, got {n!r}")
    return n


def same_strands(*items) -> int:
    ns = {x.n for x in items}
    if len(ns) != 1:
        raise StrandMismatchError(f"strand counts differ: {sorted(ns)}")
    return ns.pop()


def free_reduce(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for g in letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return out


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        check_strands(self.n)
        for g in self.letters:
            if not isinstance(g, int) or g == 0:
                raise GeneratorRangeError(f"bad letter {g!r}")
            if abs(g) >= self.n:
                raise GeneratorRangeError(
                    f"generator index {abs(g)} out of range 1..{self.n - 1}"
                )
        object.__setattr__(self, "letters", tuple(free_reduce(self.letters)))

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n)

    @classmethod
    def generator(cls, n: int, i: int) -> BraidWord:
        return cls(n, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return invert_word(self)

    def permutation(self) -> Permutation:
        return permutation_of(self)

    def __str__(self) -> str:
        return format_word(self)


def parse_word(text: str, n: int) -> BraidWord:
    """Parse whitespace-separated signed generator indices, e.g. ``"1 -2 1"``."""
    check_strands(n)
    letters = []
    for token in text.split():
        body = token[1:] if token.startswith("-") else token
        if not body.isdigit():
            raise WordSyntaxError(f"bad token {token!r}")
        i = int(body)
        if not 1 <= i <= n - 1:
            raise GeneratorRangeError(f"generator index {i} out of range 1..{n - 1}")
        letters.append(-i if token.startswith("-") else i)
    return BraidWord(n, tuple(letters))


def format_word(u: BraidWord) -> str:
    return " ".join(str(g) for g in u.letters)


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    n = same_strands(u, v)
    return BraidWord(n, u.letters + v.letters)


def invert_word(u: BraidWord) -> BraidWord:
    return BraidWord(u.n, tuple(-g for g in reversed(u.letters)))


def permutation_of(u) -> Permutation:
    """
    Image of a braid under the projection onto S_n.

    Accepts a :class:`BraidWord` or a :class:`~braidkex.garside.CanonicalForm`.
    """
    if not isinstance(u, BraidWord):
        return u.permutation()
    table = list(range(u.n))
    for g in u.letters:
        i = abs(g)
        table[i - 1], table[i] = table[i], table[i - 1]
    return Permutation(tuple(table))


def is_pure(u) -> bool:
    return permutation_of(u).is_identity()


def delta(n: int) -> BraidWord:
    """The half twist (x_1 ... x_{n-1})(x_1 ... x_{n-2}) ... (x_1)."""
    check_strands(n)
    letters = [i for top in range(n - 1, 0, -1) for i in range(1, top + 1)]
    return BraidWord(n, tuple(letters))


def artin_generators(n: int) -> list[BraidWord]:
    return [BraidWord.generator(n, i) for i in range(1, n)]

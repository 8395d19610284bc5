"""Shared oracles and generators for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from braidkex.braid import BraidWord
from braidkex.garside import CanonicalForm, to_canonical
from braidkex.keygen import random_word

# ---------------------------------------------------------------------------
# Burau representation, evaluated exactly at a few rational points.
# Equal braids always give equal matrices; on three strands the
# representation is faithful, so there it also separates distinct braids.

BURAU_POINTS = (Fraction(2), Fraction(3), Fraction(-5, 7))


def _burau_letter(n: int, g: int, t: Fraction) -> list[list[Fraction]]:
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    i = abs(g) - 1
    if g > 0:
        block = [[1 - t, t], [Fraction(1), Fraction(0)]]
    else:
        block = [[Fraction(0), Fraction(1)], [1 / t, 1 - 1 / t]]
    for r in range(2):
        for c in range(2):
            m[i + r][i + c] = block[r][c]
    return m


def _matmul(a, b):
    n = len(a)
    return [[sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def burau(word: BraidWord) -> tuple:
    out = []
    for t in BURAU_POINTS:
        m = [[Fraction(int(r == c)) for c in range(word.n)] for r in range(word.n)]
        for g in word.letters:
            m = _matmul(m, _burau_letter(word.n, g, t))
        out.append(tuple(tuple(row) for row in m))
    return tuple(out)


# ---------------------------------------------------------------------------
# permutation braids by brute force. Strand tables: t[i] is where the strand
# starting at i ends. c left-divides a iff lengths add: |c| + |c^-1 a| = |a|.


def crossings(t) -> int:
    n = len(t)
    return sum(1 for i in range(n) for j in range(i + 1, n) if t[i] > t[j])


def left_divides(c, a) -> bool:
    cinv = [0] * len(c)
    for i, x in enumerate(c):
        cinv[x] = i
    rest = [a[cinv[x]] for x in range(len(a))]
    return crossings(c) + crossings(rest) == crossings(a)


def brute_meet(a, b) -> list[int]:
    n = len(a)
    common = [c for c in itertools.permutations(range(n)) if left_divides(c, a) and left_divides(c, b)]
    best = max(common, key=crossings)
    assert all(left_divides(c, best) for c in common), "meet is not a greatest lower bound"
    return list(best)


# ---------------------------------------------------------------------------
# relator insertion


def relators(n: int) -> list[tuple[int, ...]]:
    rels = []
    for i in range(1, n):
        rels.append((i, -i))
        rels.append((-i, i))
        if i + 1 < n:
            j = i + 1
            rels.append((i, j, i, -j, -i, -j))
        for j in range(i + 2, n):
            rels.append((i, j, -i, -j))
    return rels


def insert_relators(word: BraidWord, count: int, rng: random.Random) -> BraidWord:
    """Same braid, different spelling: splice ``count`` relators (or their inverses) in."""
    rels = relators(word.n)
    letters = list(word.letters)
    for _ in range(count):
        r = rng.choice(rels)
        if rng.random() < 0.5:
            r = tuple(-g for g in reversed(r))
        pos = rng.randint(0, len(letters))
        letters[pos:pos] = r
    return BraidWord(word.n, tuple(letters))


def random_form(n: int, length: int, rng: random.Random) -> CanonicalForm:
    return to_canonical(random_word(n, length, rng))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


# ---------------------------------------------------------------------------
# acceptance reporting: one line per criterion in the terminal summary

ACCEPTANCE: list[str] = []


def report(criterion: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

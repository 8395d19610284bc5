"""
Garside left normal form in B_n.

Every braid has a unique expression Delta^p A_1 ... A_k where the A_i are
permutation braids (positive braids in which each pair of strands crosses at
most once), none equal to 1 or Delta, and every adjacent pair is
left-weighted: the finishing set of A_i contains the starting set of A_{i+1}.

Public factors are :class:`Permutation` objects read the same way as
:func:`braidkex.braid.permutation_of`, so a factor is the projection of the
permutation braid it stands for. Internally the engine works on *strand
tables* (``t[i]`` = bottom position of the strand starting at ``i``), which
is the inverse table.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cached_property

from .braid import (
    BraidError,
    BraidWord,
    StrandMismatchError,
    check_strands,
    delta,
    same_strands,
)
from .permutation import Permutation, invert_table, left_meet

# words longer than this are normalised by splitting and multiplying the halves
_CHUNK = 48

try:
    import numpy as _np

    from . import _accel
except ImportError:  # pragma: no cover - numba is a declared dependency
    _accel = None

ENGINES = ("numba", "python") if _accel is not None else ("python",)
_engine = os.environ.get("BRAIDKEX_ENGINE", ENGINES[0])
if _engine not in ENGINES:
    raise ImportError(f"BRAIDKEX_ENGINE={_engine!r} is not one of {ENGINES}")


def get_engine() -> str:
    return _engine


def set_engine(name: str) -> None:
    """Select the normal form engine: "numba" (compiled) or "python"."""
    global _engine
    if name not in ENGINES:
        raise ValueError(f"unknown engine {name!r}; available: {ENGINES}")
    _engine = name


@contextmanager
def engine(name: str):
    old = _engine
    set_engine(name)
    try:
        yield
    finally:
        set_engine(old)


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    delta_power: int = 0
    factors: tuple[Permutation, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        problem = self.violation()
        if problem:
            raise BraidError(f"invalid canonical form: {problem}")

    @classmethod
    def identity(cls, n: int) -> CanonicalForm:
        return cls(check_strands(n))

    @classmethod
    def _trusted(cls, n: int, power: int, factors: tuple[Permutation, ...]) -> CanonicalForm:
        form = object.__new__(cls)
        object.__setattr__(form, "n", n)
        object.__setattr__(form, "delta_power", power)
        object.__setattr__(form, "factors", factors)
        return form

    def violation(self) -> str | None:
        """Describe the first broken invariant, or return None for a valid form."""
        if not isinstance(self.n, int) or self.n < 2:
            return f"strand count {self.n!r}"
        if not isinstance(self.delta_power, int):
            return f"delta power {self.delta_power!r}"
        n = self.n
        for k, f in enumerate(self.factors):
            if not isinstance(f, Permutation) or f.n != n:
                return f"factor {k} is not a permutation of {n} points"
            if f.is_identity():
                return f"factor {k} is the identity"
            if f.image == tuple(range(n - 1, -1, -1)):
                return f"factor {k} is Delta"
        for k in range(len(self.factors) - 1):
            if not is_left_weighted(self.factors[k], self.factors[k + 1]):
                return f"factors {k}, {k + 1} are not left-weighted"
        return None

    @cached_property
    def _strand_tables(self) -> list[list[int]]:
        return [invert_table(f.image) for f in self.factors]

    @cached_property
    def _strand_array(self):
        arr = _np.empty((len(self.factors), self.n), _np.int64)
        for r, f in enumerate(self.factors):
            arr[r, list(f.image)] = range(self.n)
        return arr

    def __len__(self) -> int:
        return len(self.factors)

    def __mul__(self, other: CanonicalForm) -> CanonicalForm:
        return canonical_multiply(self, other)

    def inverse(self) -> CanonicalForm:
        return canonical_invert(self)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    def permutation(self) -> Permutation:
        table = list(range(self.n))
        if self.delta_power % 2:
            table.reverse()
        for f in self.factors:
            table = [table[j] for j in f.image]
        return Permutation(tuple(table))

    def to_word(self) -> BraidWord:
        return canonical_to_word(self)

    def __str__(self) -> str:
        body = " ".join("[" + ",".join(map(str, f.image)) + "]" for f in self.factors)
        return f"D^{self.delta_power}" + (f" {body}" if body else "")


def starting_set(f: Permutation) -> frozenset[int]:
    """Generators x_i that can begin the permutation braid ``f`` (1-based)."""
    inv = invert_table(f.image)
    return frozenset(i + 1 for i in range(f.n - 1) if inv[i] > inv[i + 1])


def finishing_set(f: Permutation) -> frozenset[int]:
    """Generators x_i that can end the permutation braid ``f`` (1-based)."""
    t = f.image
    return frozenset(i + 1 for i in range(f.n - 1) if t[i] > t[i + 1])


def is_left_weighted(a: Permutation, b: Permutation) -> bool:
    return finishing_set(a) >= starting_set(b)


# ---------------------------------------------------------------------------
# strand-table kernels


def _tau(t: list[int], top: int) -> list[int]:
    # conjugation by Delta: x_i -> x_{n-i}
    return [top - t[top - i] for i in range(top + 1)]


def _left_weight(a: list[int], b: list[int]) -> tuple[list[int], list[int]] | None:
    """
    Rewrite the pair of permutation braids (a, b) as (a t, t^-1 b) with t the
    largest left divisor of b that still fits on a. Returns None if the pair
    is already left-weighted.
    """
    n = len(a)
    ainv = invert_table(a)
    for i in range(n - 1):
        if b[i] > b[i + 1] and ainv[i] < ainv[i + 1]:
            break
    else:
        return None
    top = n - 1
    complement = [top - x for x in ainv]
    t = left_meet(complement, b)
    tinv = invert_table(t)
    return [t[x] for x in a], [b[x] for x in tinv]


def _positive_word(t: list[int]) -> list[int]:
    """A positive word for the permutation braid with strand table ``t``."""
    t = list(t)
    n = len(t)
    word = []
    stack = [i for i in range(n - 1) if t[i] > t[i + 1]]
    while stack:
        i = stack.pop()
        if t[i] <= t[i + 1]:
            continue
        word.append(i + 1)
        t[i], t[i + 1] = t[i + 1], t[i]
        stack.extend(j for j in (i + 1, i - 1) if 0 <= j < n - 1 and t[j] > t[j + 1])
    return word


class _Normalizer:
    """
    Mutable left normal form under right multiplication.

    Factors are stored up to a pending Delta-conjugation: the actual i-th
    factor is tau(stored[i]) when ``flipped`` is set. Right multiplication
    by Delta therefore costs O(1).
    """

    __slots__ = ("n", "top", "power", "stored", "flipped", "_identity", "_delta")

    def __init__(self, n: int, power: int = 0, factors: list[list[int]] | None = None):
        self.n = n
        self.top = n - 1
        self.power = power
        self.stored = [list(f) for f in factors] if factors else []
        self.flipped = False
        self._identity = list(range(n))
        self._delta = list(range(n - 1, -1, -1))

    @classmethod
    def from_form(cls, form: CanonicalForm) -> _Normalizer:
        return cls(form.n, form.delta_power, form._strand_tables)

    def actual(self, k: int) -> list[int]:
        f = self.stored[k]
        return _tau(f, self.top) if self.flipped else f

    def times_delta(self, k: int) -> None:
        # X Delta^k = Delta^k tau^k(X)
        self.power += k
        if k % 2:
            self.flipped = not self.flipped

    def append(self, t: list[int]) -> None:
        """Right-multiply by the permutation braid with strand table ``t``."""
        if t == self._identity:
            return
        if t == self._delta:
            self.times_delta(1)
            return
        f = self.stored
        f.append(_tau(t, self.top) if self.flipped else t)
        j = len(f) - 1
        while j > 0:
            pair = _left_weight(f[j - 1], f[j])
            if pair is None:
                return
            a, b = pair
            if b == self._identity:
                del f[j]
            else:
                f[j] = b
            if a == self._delta:
                self._extract_delta(j - 1)
                return
            f[j - 1] = a
            j -= 1

    def _extract_delta(self, pos: int) -> None:
        # ... F_{pos-1} Delta R ... = Delta tau(... F_{pos-1}) R ...
        f = self.stored
        del f[pos]
        self.power += 1
        if pos <= len(f) - pos:
            for k in range(pos):
                f[k] = _tau(f[k], self.top)
        else:
            self.flipped = not self.flipped
            for k in range(pos, len(f)):
                f[k] = _tau(f[k], self.top)

    def apply_letter(self, g: int) -> None:
        i = abs(g)
        if g > 0:
            t = list(self._identity)
            t[i - 1], t[i] = i, i - 1
            self.append(t)
            return
        if self.stored:
            last = self.actual(-1)
            inv = invert_table(last)
            if inv[i - 1] > inv[i]:
                # x_i is a right divisor of the last factor; cancel in place
                last = list(last)
                last[inv[i - 1]], last[inv[i]] = i, i - 1
                if last == self._identity:
                    self.stored.pop()
                else:
                    self.stored[-1] = _tau(last, self.top) if self.flipped else last
                return
        # x_i^-1 = Delta^-1 (Delta x_i^-1)
        self.times_delta(-1)
        t = [self.top - j for j in range(self.n)]
        for k, x in enumerate(t):
            if x == i - 1:
                t[k] = i
            elif x == i:
                t[k] = i - 1
        self.append(t)

    def absorb(self, other: _Normalizer) -> None:
        self.times_delta(other.power)
        for k in range(len(other.stored)):
            self.append(other.actual(k))

    def form(self) -> CanonicalForm:
        factors = tuple(
            Permutation(tuple(invert_table(self.actual(k)))) for k in range(len(self.stored))
        )
        return CanonicalForm._trusted(self.n, self.power, factors)


def _normalize_letters(n: int, letters: tuple[int, ...]) -> _Normalizer:
    if len(letters) <= _CHUNK:
        norm = _Normalizer(n)
        for g in letters:
            norm.apply_letter(g)
        return norm
    mid = len(letters) // 2
    left = _normalize_letters(n, letters[:mid])
    left.absorb(_normalize_letters(n, letters[mid:]))
    return left


# ---------------------------------------------------------------------------
# public operations


class _Buffer:
    """State of the compiled engine: stored tables F[:k], Delta power, flip flag."""

    __slots__ = ("F", "k", "power", "flipped")

    def __init__(self, n: int, capacity: int):
        self.F = _np.empty((max(capacity, 1), n), _np.int64)
        self.k = 0
        self.power = 0
        self.flipped = False

    def reserve(self, extra: int) -> None:
        need = self.k + extra
        if need > len(self.F):
            grown = _np.empty((max(need, 2 * len(self.F)), self.F.shape[1]), _np.int64)
            grown[: self.k] = self.F[: self.k]
            self.F = grown

    def letters(self, letters) -> None:
        self.reserve(len(letters))
        arr = _np.fromiter(letters, _np.int64, len(letters))
        self.k, self.power, self.flipped = _accel.apply_letters(
            self.F, self.k, self.power, self.flipped, arr
        )

    def absorb(self, G, kg: int, pg: int, fg: bool) -> None:
        self.reserve(kg)
        self.k, self.power, self.flipped = _accel.absorb(
            self.F, self.k, self.power, self.flipped, G, kg, pg, fg
        )

    def absorb_form(self, form: CanonicalForm) -> None:
        self.absorb(form._strand_array, len(form.factors), form.delta_power, False)

    def form(self) -> CanonicalForm:
        n = self.F.shape[1]
        rows = _accel.images(self.F, self.k, self.flipped).tolist()
        factors = tuple(Permutation(tuple(r)) for r in rows)
        return CanonicalForm._trusted(n, self.power, factors)


def _buffer_letters(n: int, letters: tuple[int, ...]) -> _Buffer:
    if len(letters) <= _CHUNK:
        buf = _Buffer(n, len(letters))
        buf.letters(letters)
        return buf
    mid = len(letters) // 2
    left = _buffer_letters(n, letters[:mid])
    right = _buffer_letters(n, letters[mid:])
    left.absorb(right.F, right.k, right.power, right.flipped)
    return left


def to_canonical(u: BraidWord) -> CanonicalForm:
    if isinstance(u, CanonicalForm):
        return u
    if _engine == "numba":
        return _buffer_letters(u.n, u.letters).form()
    return _normalize_letters(u.n, u.letters).form()


def canonical_to_word(form: CanonicalForm) -> BraidWord:
    letters: list[int] = []
    p = form.delta_power
    if p:
        d = delta(form.n).letters
        letters.extend((d if p > 0 else tuple(-g for g in reversed(d))) * abs(p))
    for t in form._strand_tables:
        letters.extend(_positive_word(t))
    return BraidWord(form.n, tuple(letters))


def canonical_multiply(f: CanonicalForm, g: CanonicalForm) -> CanonicalForm:
    same_strands(f, g)
    if g.is_identity():
        return f
    if f.is_identity():
        return g
    return canonical_product((f, g), f.n)


def canonical_product(forms, n: int) -> CanonicalForm:
    """Left-to-right product of canonical forms (identity when empty)."""
    check_strands(n)
    forms = list(forms)
    for f in forms:
        if f.n != n:
            raise StrandMismatchError(f"strand counts differ: {f.n} vs {n}")
    if _engine == "numba":
        buf = _Buffer(n, sum(len(f.factors) for f in forms))
        for f in forms:
            buf.absorb_form(f)
        return buf.form()
    norm = _Normalizer(n)
    for f in forms:
        norm.absorb(_Normalizer.from_form(f))
    return norm.form()


def canonical_invert(form: CanonicalForm) -> CanonicalForm:
    """
    (Delta^p A_1 ... A_k)^-1 = Delta^(-p-k) tau^(p+k)(A_k*) ... tau^(p+1)(A_1*),
    where A* = A^-1 Delta is the right complement.
    """
    n, top = form.n, form.n - 1
    p, tables = form.delta_power, form._strand_tables
    k = len(tables)
    norm = _Normalizer(n, -p - k)
    for j in range(k, 0, -1):
        inv = invert_table(tables[j - 1])
        comp = [top - x for x in inv]
        norm.append(_tau(comp, top) if (p + j) % 2 else comp)
    return norm.form()


def equals(u, v) -> bool:
    """Word problem: do ``u`` and ``v`` (words or forms) represent the same braid?"""
    same_strands(u, v)
    return to_canonical(u) == to_canonical(v)


def commutes(u, v) -> bool:
    fu, fv = to_canonical(u), to_canonical(v)
    return canonical_multiply(fu, fv) == canonical_multiply(fv, fu)


def canonical_length(form: CanonicalForm) -> int:
    return len(form.factors)


def delta_form(n: int, power: int = 1) -> CanonicalForm:
    return CanonicalForm(check_strands(n), power)

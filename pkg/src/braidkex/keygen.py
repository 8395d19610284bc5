"""
Key material: random braids, commuting pairs and subgroup elements.

A commuting pair is built from two parabolic subgroups on disjoint blocks of
strands. With h = n // 2, generators x_1 .. x_{h-1} only touch strands
0 .. h-1 and x_{h+1} .. x_{n-1} only touch strands h .. n-1, so words over
the two ranges commute. Conjugating both by the same secret z keeps them
commuting while hiding the block structure:

    private = z u z^-1          u over one half
    gens_j  = z v_j z^-1        v_j over the other half
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from .braid import BraidError, BraidWord, check_strands
from .garside import CanonicalForm, canonical_product, to_canonical

Side = Literal["left", "right"]


@dataclass(frozen=True)
class SamplerConfig:
    n: int = 64
    l: int = 1024
    gen_count: int = 5
    gen_len: int | None = None
    conj_len: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        check_strands(self.n)
        if self.gen_len is None:
            object.__setattr__(self, "gen_len", max(1, self.l // 4))
        if self.conj_len is None:
            object.__setattr__(self, "conj_len", max(1, self.l // 2))
        if min(self.l, self.gen_len, self.conj_len) < 1:
            raise ValueError("sampler lengths must be >= 1")
        if self.gen_count < 2:
            raise ValueError("need at least two published generators")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class CommutingPair:
    private_elem: BraidWord
    subgroup_gens: tuple[BraidWord, ...]
    # kept for tests only: never published
    conjugator: BraidWord
    core: BraidWord
    gen_cores: tuple[BraidWord, ...]

    def gen_forms(self) -> tuple[CanonicalForm, ...]:
        return tuple(to_canonical(g) for g in self.subgroup_gens)


def half_indices(n: int, side: Side) -> range:
    h = n // 2
    if side == "left":
        return range(1, h)
    if side == "right":
        return range(h + 1, n)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def other_side(side: Side) -> Side:
    return "right" if side == "left" else "left"


def random_word(
    n: int, length: int, rng: random.Random, indices: Sequence[int] | None = None
) -> BraidWord:
    """
    Uniform signed-generator walk of exactly ``length`` letters that never
    steps back onto the inverse of the previous letter.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    indices = list(range(1, n) if indices is None else indices)
    if not indices:
        raise BraidError("no generators to draw from")
    letters: list[int] = []
    while len(letters) < length:
        g = rng.choice(indices) * rng.choice((1, -1))
        if letters and letters[-1] == -g:
            continue
        letters.append(g)
    return BraidWord(n, tuple(letters))


def generate_commuting_pair(cfg: SamplerConfig, side: Side, rng: random.Random) -> CommutingPair:
    n = cfg.n
    if n < 4:
        raise BraidError(f"commuting pairs need n >= 4, got {n}")
    own, other = half_indices(n, side), half_indices(n, other_side(side))
    z = random_word(n, cfg.conj_len, rng)
    zi = z.inverse()
    u = random_word(n, cfg.l, rng, own)
    cores = tuple(random_word(n, cfg.gen_len, rng, other) for _ in range(cfg.gen_count))
    return CommutingPair(
        private_elem=z * u * zi,
        subgroup_gens=tuple(z * v * zi for v in cores),
        conjugator=z,
        core=u,
        gen_cores=cores,
    )


def choose_subgroup_factors(count: int, factor_budget: int, rng: random.Random) -> list[tuple[int, int]]:
    """Pick ``factor_budget`` (generator index, sign) pairs uniformly."""
    if count < 1:
        raise BraidError("empty generator list")
    if factor_budget < 1:
        raise ValueError("factor_budget must be >= 1")
    return [(rng.randrange(count), rng.choice((1, -1))) for _ in range(factor_budget)]


def sample_subgroup_element(
    gens: Sequence[BraidWord], factor_budget: int, rng: random.Random
) -> BraidWord:
    choice = choose_subgroup_factors(len(gens), factor_budget, rng)
    letters: list[int] = []
    for idx, sign in choice:
        g = gens[idx] if sign > 0 else gens[idx].inverse()
        letters.extend(g.letters)
    return BraidWord(gens[0].n, tuple(letters))


def subgroup_product(
    gens: Sequence[CanonicalForm], choice: Sequence[tuple[int, int]]
) -> CanonicalForm:
    inverses: dict[int, CanonicalForm] = {}
    picked = []
    for idx, sign in choice:
        if sign > 0:
            picked.append(gens[idx])
        else:
            if idx not in inverses:
                inverses[idx] = gens[idx].inverse()
            picked.append(inverses[idx])
    return canonical_product(picked, gens[0].n)


def sample_subgroup_form(
    gens: Sequence[CanonicalForm], factor_budget: int, rng: random.Random
) -> CanonicalForm:
    """Same draw as :func:`sample_subgroup_element`, computed on normal forms."""
    return subgroup_product(gens, choose_subgroup_factors(len(gens), factor_budget, rng))

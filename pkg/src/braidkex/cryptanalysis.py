"""
Adversary tools against the decomposition key exchange.

An eavesdropper sees w, the published subgroups A and B, and the
transmissions P_A = a1 w a2, P_B = b1 w b2. Recovering any pair (a1', a2')
with P_A = a1' w a2', a1' commuting with A and a2' in <B> gives the key:

    a1' P_B a2' = a1' b1 w b2 a2' = b1 a1' w a2' b2 = b1 P_A b2 = K

Search spaces are products of explicit generators, so membership in a
subgroup is only ever decided for elements built that way.

The distinguisher uses the identity K = P_A a2^-1 (w^-1 P_B) a2. Projecting
to S_n, pi(P_A)^-1 pi(K) is a conjugate of rho_B = pi(w^-1 P_B), so a true
key always shows the same cycle type as rho_B.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Union

from .braid import BraidWord, StrandMismatchError, artin_generators
from .garside import CanonicalForm, canonical_product, canonical_to_word, commutes, to_canonical
from .keygen import random_word
from .permutation import Permutation, cycle_type
from .protocol import execute_handshake

Element = Union[BraidWord, CanonicalForm]
Choice = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DecompositionInstance:
    """
    Find a in <left_gens>, b in <right_gens> with w1 = a w b.

    ``commute_with`` optionally lists elements the left factor must commute
    with (the published subgroup on the attacked side); candidates that fail
    it are not useful for key recovery and are skipped.
    """

    w: Element
    w1: Element
    left_gens: tuple[Element, ...]
    right_gens: tuple[Element, ...]
    commute_with: tuple[Element, ...] = ()

    def __post_init__(self) -> None:
        for name in ("left_gens", "right_gens", "commute_with"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        items = [self.w, self.w1, *self.left_gens, *self.right_gens, *self.commute_with]
        if len({x.n for x in items}) != 1:
            raise StrandMismatchError("instance elements disagree on strand count")

    @property
    def n(self) -> int:
        return self.w.n


@dataclass(frozen=True)
class RecoveredPair:
    left: BraidWord
    right: BraidWord
    left_choice: Choice = ()
    right_choice: Choice = ()
    iterations: int = 0


@dataclass(frozen=True)
class DistinguisherVerdict:
    rho_b: Permutation
    candidate_residue: Permutation
    consistent: bool


class _Side:
    """Generator forms and their inverses for one side of an instance."""

    def __init__(self, gens: Sequence[Element], n: int):
        self.n = n
        self.forms = [to_canonical(g) for g in gens]
        self.inverses = [f.inverse() for f in self.forms]

    def element(self, idx: int, sign: int) -> CanonicalForm:
        return self.forms[idx] if sign > 0 else self.inverses[idx]

    def product(self, choice: Choice) -> CanonicalForm:
        return canonical_product([self.element(i, s) for i, s in choice], self.n)

    def moves(self) -> list[tuple[int, int]]:
        return [(i, s) for i in range(len(self.forms)) for s in (1, -1)]


def reduced_choices(count: int, depth: int) -> Iterator[Choice]:
    """All (index, sign) sequences of length <= depth with no g g^-1, shortest first."""
    moves = [(i, s) for i in range(count) for s in (1, -1)]
    for length in range(depth + 1):
        for seq in itertools.product(moves, repeat=length):
            if all(seq[k][0] != seq[k + 1][0] or seq[k][1] == seq[k + 1][1] for k in range(length - 1)):
                yield seq


def _commutes_with_all(x: CanonicalForm, others: Sequence[CanonicalForm]) -> bool:
    return all(commutes(x, y) for y in others)


def _pair(left: _Side, right: _Side, lc: Choice, rc: Choice, iterations: int) -> RecoveredPair:
    return RecoveredPair(
        canonical_to_word(left.product(lc)),
        canonical_to_word(right.product(rc)),
        lc,
        rc,
        iterations,
    )


def brute_force_decompose(
    inst: DecompositionInstance, max_left_factors: int, max_right_factors: int
) -> RecoveredPair | None:
    """
    Exhaustive meet-in-the-middle search: tabulate w b for every right
    candidate, then look up a^-1 w1 for each left candidate in order.
    ``iterations`` counts left candidates examined.
    """
    if max_left_factors < 0 or max_right_factors < 0:
        raise ValueError("factor bounds must be >= 0")
    n = inst.n
    w, w1 = to_canonical(inst.w), to_canonical(inst.w1)
    left, right = _Side(inst.left_gens, n), _Side(inst.right_gens, n)
    guard = [to_canonical(c) for c in inst.commute_with]

    table: dict[CanonicalForm, Choice] = {}
    for rc in reduced_choices(len(right.forms), max_right_factors):
        table.setdefault(canonical_product([w, right.product(rc)], n), rc)

    for count, lc in enumerate(reduced_choices(len(left.forms), max_left_factors), 1):
        a = left.product(lc)
        rc = table.get(canonical_product([a.inverse(), w1], n))
        if rc is None or not _commutes_with_all(a, guard):
            continue
        return _pair(left, right, lc, rc, count)
    return None


def canonical_weight(form: CanonicalForm) -> int:
    """|p| (n-1) + k: canonical length with Delta powers counted in letters of Delta."""
    return abs(form.delta_power) * (form.n - 1) + len(form.factors)


def length_attack(
    inst: DecompositionInstance, beam_width: int, max_iters: int
) -> RecoveredPair | None:
    """
    Beam search peeling generators off both ends of w1. A state holds choices
    (a, b) and the residue a^-1 w1 b^-1; extending a by g replaces the residue
    with g^-1 r, extending b on the left by g replaces it with r g^-1. The
    beam keeps the ``beam_width`` residues of least canonical weight.
    """
    if beam_width <= 0 or max_iters < 0:
        return None
    n = inst.n
    w, w1 = to_canonical(inst.w), to_canonical(inst.w1)
    left, right = _Side(inst.left_gens, n), _Side(inst.right_gens, n)
    guard = [to_canonical(c) for c in inst.commute_with]

    def solved(lc: Choice, residue: CanonicalForm) -> bool:
        return residue == w and _commutes_with_all(left.product(lc), guard)

    beam: list[tuple[Choice, Choice, CanonicalForm]] = [((), (), w1)]
    seen = {w1}
    if solved((), w1):
        return _pair(left, right, (), (), 0)
    for it in range(1, max_iters + 1):
        scored = []
        order = 0
        for lc, rc, r in beam:
            for idx, sign in left.moves():
                nr = canonical_product([left.element(idx, -sign), r], n)
                scored.append((canonical_weight(nr), order, lc + ((idx, sign),), rc, nr))
                order += 1
            for idx, sign in right.moves():
                nr = canonical_product([r, right.element(idx, -sign)], n)
                scored.append((canonical_weight(nr), order, lc, ((idx, sign),) + rc, nr))
                order += 1
        beam = []
        for _, _, lc, rc, nr in sorted(scored, key=lambda e: e[:2]):
            if nr in seen:
                continue
            seen.add(nr)
            if solved(lc, nr):
                return _pair(left, right, lc, rc, it)
            beam.append((lc, rc, nr))
            if len(beam) == beam_width:
                break
        if not beam:
            return None
    return None


def check_equivalent_pair(inst: DecompositionInstance, pair: RecoveredPair, peer_private: Element) -> bool:
    """
    True when the pair solves the instance and its left factor commutes with
    ``peer_private`` (the peer's element drawn from the attacked side's
    published subgroup), which is what substituting it into the key needs.
    """
    n = inst.n
    lhs = canonical_product([to_canonical(pair.left), to_canonical(inst.w), to_canonical(pair.right)], n)
    if lhs != to_canonical(inst.w1):
        return False
    return commutes(pair.left, peer_private)


def recover_key(pair: RecoveredPair, peer_transmission: Element) -> CanonicalForm:
    """a1' P_B a2': the shared key computed from an equivalent pair."""
    n = pair.left.n
    return canonical_product(
        [to_canonical(pair.left), to_canonical(peer_transmission), to_canonical(pair.right)], n
    )


# ---------------------------------------------------------------------------
# permutation distinguisher


def _perm(x: Element) -> Permutation:
    return x.permutation()


def rho_of(w: Element, P_B: Element) -> Permutation:
    """pi(w^-1 P_B)."""
    if w.n != P_B.n:
        raise StrandMismatchError(f"strand counts differ: {w.n} vs {P_B.n}")
    return _perm(w).inverse() @ _perm(P_B)


def distinguisher(w: Element, P_A: Element, P_B: Element, candidate: Element) -> DistinguisherVerdict:
    if len({w.n, P_A.n, P_B.n, candidate.n}) != 1:
        raise StrandMismatchError("distinguisher inputs disagree on strand count")
    rho = rho_of(w, P_B)
    residue = _perm(P_A).inverse() @ _perm(candidate)
    return DistinguisherVerdict(rho, residue, cycle_type(residue) == cycle_type(rho))


@dataclass(frozen=True)
class DistinguisherSummary:
    n: int
    l: int
    trials: int
    seed: int
    accepted: int
    rejected: int
    pure: int

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.trials

    @property
    def rejection_rate(self) -> float:
        return self.rejected / self.trials

    @property
    def pure_rate(self) -> float:
        return self.pure / self.trials

    @property
    def all_pure(self) -> bool:
        return self.pure == self.trials

    def lines(self) -> list[str]:
        return [
            f"n={self.n}",
            f"l={self.l}",
            f"trials={self.trials}",
            f"seed={self.seed}",
            f"acceptance={self.acceptance_rate!r}",
            f"rejection={self.rejection_rate!r}",
            f"pure_incidence={self.pure_rate!r}",
            f"all_pure={str(self.all_pure).lower()}",
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def distinguisher_experiment(n: int, l: int, trials: int, seed: int) -> DistinguisherSummary:
    """
    For each trial run a handshake, test the true key, and test one random
    candidate a w b with a, b uniform words of length l. A trial is pure when
    both pi(P_A) and rho_B are trivial, where the test carries no signal.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    accepted = rejected = pure = 0
    for _ in range(trials):
        hs = execute_handshake(n, l, rng.getrandbits(64))
        w = hs.params.public.w
        P_A, P_B = hs.alice.transmission, hs.bob.transmission
        if distinguisher(w, P_A, P_B, hs.key_a).consistent:
            accepted += 1
        a, b = random_word(n, l, rng), random_word(n, l, rng)
        fake = canonical_product([to_canonical(a), w, to_canonical(b)], n)
        if not distinguisher(w, P_A, P_B, fake).consistent:
            rejected += 1
        if P_A.permutation().is_identity() and rho_of(w, P_B).is_identity():
            pure += 1
    return DistinguisherSummary(n, l, trials, seed, accepted, rejected, pure)


# ---------------------------------------------------------------------------
# instances


def instance_from_transcript(messages) -> tuple[DecompositionInstance, CanonicalForm]:
    """
    Attack Alice's transmission from public data only. The left factor a1 is
    searched over all Artin generators (the centralizer of A is not computed)
    and must commute with A; the right factor lies in <B>. Returns the
    instance and P_B, needed to turn a solution into the key.
    """
    from .wire import MessageKind

    by_kind = {m.kind: m.payload for m in messages}
    needed = (MessageKind.PARAMS, MessageKind.SUBGROUP_A, MessageKind.SUBGROUP_B,
              MessageKind.TRANSMISSION_A, MessageKind.TRANSMISSION_B)
    missing = [k.name for k in needed if k not in by_kind]
    if missing:
        raise ValueError(f"transcript lacks {', '.join(missing)}")
    params = by_kind[MessageKind.PARAMS]
    n = params.n
    inst = DecompositionInstance(
        w=params.w,
        w1=by_kind[MessageKind.TRANSMISSION_A],
        left_gens=tuple(to_canonical(g) for g in artin_generators(n)),
        right_gens=by_kind[MessageKind.SUBGROUP_B],
        commute_with=by_kind[MessageKind.SUBGROUP_A],
    )
    return inst, by_kind[MessageKind.TRANSMISSION_B]


@dataclass(frozen=True)
class PlantedInstance:
    instance: DecompositionInstance
    left: BraidWord
    right: BraidWord


def planted_length_instance(
    n: int, rng: random.Random, *, key_len: int = 3, base_len: int = 4, concealed: bool = False
) -> PlantedInstance:
    """
    w1 = a w b with a over x_1..x_{h-1} and b over x_{h+1}..x_{n-1}, no
    conjugation. When ``concealed`` the attacker gets every Artin generator
    for the left side instead of the true lower-half subgroup; the left
    factor must still commute with the upper-half generators.
    """
    h = n // 2
    lower, upper = list(range(1, h)), list(range(h + 1, n))
    gens = artin_generators(n)
    a = random_word(n, key_len, rng, lower)
    b = random_word(n, key_len, rng, upper)
    w = random_word(n, base_len, rng)
    left_gens = gens if concealed else [gens[i - 1] for i in lower]
    inst = DecompositionInstance(
        w=w,
        w1=a * w * b,
        left_gens=tuple(left_gens),
        right_gens=tuple(gens[i - 1] for i in upper),
        commute_with=tuple(gens[i - 1] for i in upper),
    )
    return PlantedInstance(inst, a, b)


TOY_SAMPLER = dict(gen_count=2, gen_len=1, conj_len=1)
TOY_BUDGET = 2


def planted_protocol_instance(seed: int, n: int = 4, l: int = 2):
    """
    A toy handshake whose left search space is planted: the left generators
    are z x_i z^-1 for Alice's own half, i.e. step A1 is assumed solved. Both
    keys are then products of at most two generators per side. Returns the
    instance and the handshake for checking recovered keys.
    """
    hs = execute_handshake(n, l, seed, factor_budget=TOY_BUDGET, **TOY_SAMPLER)
    pair = hs.alice.pair
    z, zi = pair.conjugator, pair.conjugator.inverse()
    own = sorted({abs(g) for g in pair.core.letters})
    inst = DecompositionInstance(
        w=hs.params.public.w,
        w1=hs.alice.transmission,
        left_gens=tuple(z * BraidWord.generator(n, i) * zi for i in own),
        right_gens=hs.alice.peer_gens,
        commute_with=hs.bob.peer_gens,
    )
    return inst, hs

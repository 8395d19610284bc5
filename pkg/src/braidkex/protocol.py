"""
Two-party key establishment on the decomposition problem in B_n.

Alice holds a1 and publishes A, a finite subset of the centralizer of a1;
Bob holds b2 and publishes B inside the centralizer of b2. Then

    Alice: a2 in <B>,  sends P_A = N(a1 w a2),  key K_A = a1 P_B a2
    Bob:   b1 in <A>,  sends P_B = N(b1 w b2),  key K_B = b1 P_A b2

and K_A == K_B because a1 commutes with b1 and a2 with b2.

Parties are immutable :class:`PartyState` values; each step returns a new
state, so a rejected message leaves the caller's state untouched. Messages
flow in the fixed order Params, SubgroupA, SubgroupB, TransmissionA,
TransmissionB.
"""

from __future__ import annotations

import enum
import hashlib
import random
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property

from .braid import BraidError, BraidWord
from .garside import CanonicalForm, canonical_product, to_canonical
from .keygen import (
    CommutingPair,
    SamplerConfig,
    choose_subgroup_factors,
    generate_commuting_pair,
    random_word,
    subgroup_product,
)
from .wire import HandshakeMessage, MessageKind, ParamsPayload, encode_braid

DEFAULT_N = 64
DEFAULT_L = 1024
DEFAULT_FACTOR_BUDGET = 16
SESSION_LABEL = b"BKEXK1"


class ProtocolError(Exception):
    pass


class PhaseError(ProtocolError):
    pass


class UnexpectedMessage(ProtocolError):
    pass


class Role(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


class Phase(enum.IntEnum):
    INIT = 0
    PUBLISHED_SUBGROUP = 1
    RECEIVED_SUBGROUP = 2
    SENT_TRANSMISSION = 3
    COMPLETE = 4


_OWN_SUBGROUP = {Role.ALICE: MessageKind.SUBGROUP_A, Role.BOB: MessageKind.SUBGROUP_B}
_OWN_TRANSMISSION = {Role.ALICE: MessageKind.TRANSMISSION_A, Role.BOB: MessageKind.TRANSMISSION_B}
_PEER = {Role.ALICE: Role.BOB, Role.BOB: Role.ALICE}


@dataclass(frozen=True)
class ProtocolParams:
    n: int
    l: int
    w: BraidWord
    alice_seed: int
    bob_seed: int

    def __post_init__(self) -> None:
        if self.w.n != self.n:
            raise BraidError(f"base element has {self.w.n} strands, expected {self.n}")

    @cached_property
    def public(self) -> ParamsPayload:
        return ParamsPayload(self.n, self.l, to_canonical(self.w))


def make_params(n: int = DEFAULT_N, l: int = DEFAULT_L, seed: int = 0) -> ProtocolParams:
    if n < 4:
        raise ValueError(f"protocol needs n >= 4, got {n}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    rng = random.Random(seed)
    w = random_word(n, l, rng)
    return ProtocolParams(n, l, w, rng.getrandbits(64), rng.getrandbits(64))


@dataclass(frozen=True)
class PartyState:
    role: Role
    phase: Phase = Phase.INIT
    pair: CommutingPair | None = None
    own_form: CanonicalForm | None = None  # N(a1) for Alice, N(b2) for Bob
    second_key: CanonicalForm | None = None  # a2 or b1
    second_key_choice: tuple[tuple[int, int], ...] = ()
    peer_gens: tuple[CanonicalForm, ...] = ()
    transmission: CanonicalForm | None = None
    peer_transmission: CanonicalForm | None = None
    shared_key: CanonicalForm | None = None

    @property
    def left_private(self) -> CanonicalForm | None:
        return self.own_form if self.role is Role.ALICE else self.second_key

    @property
    def right_private(self) -> CanonicalForm | None:
        return self.second_key if self.role is Role.ALICE else self.own_form

    def second_key_word(self) -> BraidWord:
        """a2 / b1 as an explicit word over the peer's generators (toy sizes only)."""
        n = self.own_form.n
        letters: list[int] = []
        for idx, sign in self.second_key_choice:
            g = self.peer_gens[idx].to_word()
            letters.extend(g.letters if sign > 0 else g.inverse().letters)
        return BraidWord(n, tuple(letters))


def _require_phase(state: PartyState, phase: Phase) -> None:
    if state.phase is not phase:
        raise PhaseError(f"{state.role.value} is in {state.phase.name}, expected {phase.name}")


def _require_kind(state: PartyState, msg: HandshakeMessage, kind: MessageKind) -> None:
    if msg.kind is not kind:
        raise UnexpectedMessage(f"{state.role.value} expected {kind.name}, got {msg.kind.name}")


def _require_strands(n: int, forms) -> None:
    for f in forms:
        if f.n != n:
            raise UnexpectedMessage(f"peer element on {f.n} strands, expected {n}")


def sampler_for(state: PartyState, params: ProtocolParams, **overrides) -> SamplerConfig:
    seed = params.alice_seed if state.role is Role.ALICE else params.bob_seed
    return SamplerConfig(n=params.n, l=params.l, seed=seed, **overrides)


def publish_subgroup(
    state: PartyState, cfg: SamplerConfig, rng: random.Random
) -> tuple[PartyState, HandshakeMessage]:
    _require_phase(state, Phase.INIT)
    side = "left" if state.role is Role.ALICE else "right"
    pair = generate_commuting_pair(cfg, side, rng)
    new = replace(
        state,
        phase=Phase.PUBLISHED_SUBGROUP,
        pair=pair,
        own_form=to_canonical(pair.private_elem),
    )
    return new, HandshakeMessage(_OWN_SUBGROUP[state.role], pair.gen_forms())


def receive_subgroup(state: PartyState, msg: HandshakeMessage) -> PartyState:
    _require_phase(state, Phase.PUBLISHED_SUBGROUP)
    _require_kind(state, msg, _OWN_SUBGROUP[_PEER[state.role]])
    if not msg.payload:
        raise UnexpectedMessage("peer published no generators")
    _require_strands(state.own_form.n, msg.payload)
    return replace(state, phase=Phase.RECEIVED_SUBGROUP, peer_gens=tuple(msg.payload))


def send_transmission(
    state: PartyState,
    public: ParamsPayload,
    rng: random.Random,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
) -> tuple[PartyState, HandshakeMessage]:
    _require_phase(state, Phase.RECEIVED_SUBGROUP)
    _require_strands(state.own_form.n, [public.w])
    choice = tuple(choose_subgroup_factors(len(state.peer_gens), factor_budget, rng))
    second = subgroup_product(state.peer_gens, choice)
    n = public.n
    if state.role is Role.ALICE:
        sent = canonical_product([state.own_form, public.w, second], n)
    else:
        sent = canonical_product([second, public.w, state.own_form], n)
    new = replace(
        state,
        phase=Phase.SENT_TRANSMISSION,
        second_key=second,
        second_key_choice=choice,
        transmission=sent,
    )
    return new, HandshakeMessage(_OWN_TRANSMISSION[state.role], sent)


def compute_shared_key(state: PartyState, msg: HandshakeMessage) -> PartyState:
    _require_phase(state, Phase.SENT_TRANSMISSION)
    _require_kind(state, msg, _OWN_TRANSMISSION[_PEER[state.role]])
    peer = msg.payload
    _require_strands(state.own_form.n, [peer])
    key = canonical_product([state.left_private, peer, state.right_private], peer.n)
    return replace(state, phase=Phase.COMPLETE, peer_transmission=peer, shared_key=key)


def derive_session_key(key: CanonicalForm) -> bytes:
    return hashlib.sha256(SESSION_LABEL + encode_braid(key)).digest()


# ---------------------------------------------------------------------------
# in-process driver


@dataclass
class Channel:
    """Reliable ordered channel between the two parties that also keeps a transcript."""

    transcript: list[HandshakeMessage] = field(default_factory=list)
    _queues: dict[Role, deque] = field(
        default_factory=lambda: {Role.ALICE: deque(), Role.BOB: deque()}
    )

    def broadcast(self, msg: HandshakeMessage) -> None:
        self.transcript.append(msg)

    def send(self, sender: Role, msg: HandshakeMessage) -> None:
        self.transcript.append(msg)
        self._queues[_PEER[sender]].append(msg)

    def receive(self, role: Role) -> HandshakeMessage:
        return self._queues[role].popleft()


@dataclass(frozen=True)
class Handshake:
    params: ProtocolParams
    alice: PartyState
    bob: PartyState
    transcript: tuple[HandshakeMessage, ...]

    @property
    def key_a(self) -> CanonicalForm:
        return self.alice.shared_key

    @property
    def key_b(self) -> CanonicalForm:
        return self.bob.shared_key


def execute_handshake(
    n: int = DEFAULT_N,
    l: int = DEFAULT_L,
    seed: int = 0,
    *,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
    **sampler_overrides,
) -> Handshake:
    """
    Run both parties to completion. ``sampler_overrides`` (gen_count,
    gen_len, conj_len) adjust key generation, e.g. for toy attack targets.
    """
    params = make_params(n, l, seed)
    public = params.public
    chan = Channel()
    chan.broadcast(HandshakeMessage(MessageKind.PARAMS, public))

    alice, bob = PartyState(Role.ALICE), PartyState(Role.BOB)
    cfg_a = sampler_for(alice, params, **sampler_overrides)
    cfg_b = sampler_for(bob, params, **sampler_overrides)
    rng_a, rng_b = cfg_a.rng(), cfg_b.rng()

    alice, msg = publish_subgroup(alice, cfg_a, rng_a)
    chan.send(Role.ALICE, msg)
    bob, msg = publish_subgroup(bob, cfg_b, rng_b)
    chan.send(Role.BOB, msg)
    alice = receive_subgroup(alice, chan.receive(Role.ALICE))
    bob = receive_subgroup(bob, chan.receive(Role.BOB))

    alice, msg = send_transmission(alice, public, rng_a, factor_budget)
    chan.send(Role.ALICE, msg)
    bob, msg = send_transmission(bob, public, rng_b, factor_budget)
    chan.send(Role.BOB, msg)
    alice = compute_shared_key(alice, chan.receive(Role.ALICE))
    bob = compute_shared_key(bob, chan.receive(Role.BOB))
    return Handshake(params, alice, bob, tuple(chan.transcript))


def run_handshake(
    n: int = DEFAULT_N, l: int = DEFAULT_L, seed: int = 0
) -> tuple[CanonicalForm, CanonicalForm, list[HandshakeMessage]]:
    hs = execute_handshake(n, l, seed)
    return hs.key_a, hs.key_b, list(hs.transcript)

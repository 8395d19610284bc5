"""
Byte-level encoding of braids, handshake frames and transcripts.

All integers are fixed-width big-endian.

BraidBlob::

    n            u16
    delta_power  i32
    factor_count u32
    factors      factor_count tables of n bytes; byte j = image of j

Frame::

    "BKEX" | version u8 (=1) | kind u8 | length u32 | payload

A transcript file is the concatenation of frames in protocol order.
"""

from __future__ import annotations

import enum
import struct
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .braid import BraidError
from .garside import CanonicalForm
from .permutation import Permutation

MAGIC = b"BKEX"
VERSION = 1
MAX_STRANDS = 255

_BLOB_HEAD = struct.Struct(">HiI")
_FRAME_HEAD = struct.Struct(">4sBBI")
_PARAMS_HEAD = struct.Struct(">HI")
_COUNT = struct.Struct(">H")


class WireError(ValueError):
    pass


class MessageKind(enum.IntEnum):
    SUBGROUP_A = 0x01
    SUBGROUP_B = 0x02
    TRANSMISSION_A = 0x03
    TRANSMISSION_B = 0x04
    PARAMS = 0x05


PROTOCOL_ORDER = (
    MessageKind.PARAMS,
    MessageKind.SUBGROUP_A,
    MessageKind.SUBGROUP_B,
    MessageKind.TRANSMISSION_A,
    MessageKind.TRANSMISSION_B,
)


@dataclass(frozen=True)
class ParamsPayload:
    n: int
    l: int
    w: CanonicalForm


Payload = Union[ParamsPayload, tuple[CanonicalForm, ...], CanonicalForm]


@dataclass(frozen=True)
class HandshakeMessage:
    kind: MessageKind
    payload: Payload

    def __post_init__(self) -> None:
        kind, payload = MessageKind(self.kind), self.payload
        object.__setattr__(self, "kind", kind)
        if kind is MessageKind.PARAMS:
            ok = isinstance(payload, ParamsPayload)
        elif kind in (MessageKind.SUBGROUP_A, MessageKind.SUBGROUP_B):
            if isinstance(payload, list):
                payload = tuple(payload)
                object.__setattr__(self, "payload", payload)
            ok = isinstance(payload, tuple) and all(isinstance(g, CanonicalForm) for g in payload)
        else:
            ok = isinstance(payload, CanonicalForm)
        if not ok:
            raise TypeError(f"payload {type(payload).__name__} does not fit {kind.name}")


# ---------------------------------------------------------------------------
# braids


def encode_braid(form: CanonicalForm) -> bytes:
    n = form.n
    if n > MAX_STRANDS:
        raise WireError(f"n={n} exceeds the {MAX_STRANDS}-strand limit of the wire format")
    if not -(2**31) <= form.delta_power < 2**31:
        raise WireError("delta power does not fit in 32 bits")
    parts = [_BLOB_HEAD.pack(n, form.delta_power, len(form.factors))]
    parts.extend(bytes(f.image) for f in form.factors)
    return b"".join(parts)


def _take(data: bytes, offset: int, size: int, what: str) -> int:
    end = offset + size
    if end > len(data):
        raise WireError(f"truncated {what}: need {size} bytes at offset {offset}")
    return end


def read_braid(data: bytes, offset: int = 0) -> tuple[CanonicalForm, int]:
    """Decode one blob starting at ``offset``; return it and the offset just past it."""
    end = _take(data, offset, _BLOB_HEAD.size, "braid header")
    n, power, count = _BLOB_HEAD.unpack_from(data, offset)
    if not 2 <= n <= MAX_STRANDS:
        raise WireError(f"strand count {n} outside 2..{MAX_STRANDS}")
    start = end
    end = _take(data, start, count * n, "factor tables")
    factors = []
    for k in range(count):
        table = tuple(data[start + k * n : start + (k + 1) * n])
        try:
            factors.append(Permutation(table))
        except ValueError:
            raise WireError(f"factor {k} is not a bijection") from None
    try:
        form = CanonicalForm(n, power, tuple(factors))
    except BraidError as exc:
        raise WireError(str(exc)) from None
    return form, end


def decode_braid(data: bytes) -> CanonicalForm:
    form, end = read_braid(data)
    if end != len(data):
        raise WireError(f"{len(data) - end} trailing bytes after braid")
    return form


# ---------------------------------------------------------------------------
# messages


def _encode_payload(msg: HandshakeMessage) -> bytes:
    p = msg.payload
    if msg.kind is MessageKind.PARAMS:
        if p.w.n != p.n:
            raise WireError("base element strand count differs from n")
        return _PARAMS_HEAD.pack(p.n, p.l) + encode_braid(p.w)
    if msg.kind in (MessageKind.SUBGROUP_A, MessageKind.SUBGROUP_B):
        if len(p) > 0xFFFF:
            raise WireError("too many generators")
        return _COUNT.pack(len(p)) + b"".join(encode_braid(g) for g in p)
    return encode_braid(p)


def _decode_payload(kind: MessageKind, data: bytes) -> Payload:
    if kind is MessageKind.PARAMS:
        _take(data, 0, _PARAMS_HEAD.size, "params header")
        n, l = _PARAMS_HEAD.unpack_from(data, 0)
        w, end = read_braid(data, _PARAMS_HEAD.size)
        if w.n != n:
            raise WireError(f"base element has {w.n} strands, params say {n}")
        payload: Payload = ParamsPayload(n, l, w)
    elif kind in (MessageKind.SUBGROUP_A, MessageKind.SUBGROUP_B):
        _take(data, 0, _COUNT.size, "generator count")
        (count,) = _COUNT.unpack_from(data, 0)
        end = _COUNT.size
        gens = []
        for _ in range(count):
            g, end = read_braid(data, end)
            gens.append(g)
        if len({g.n for g in gens}) > 1:
            raise WireError("generators disagree on strand count")
        payload = tuple(gens)
    else:
        payload, end = read_braid(data)
    if end != len(data):
        raise WireError(f"{len(data) - end} trailing bytes in {kind.name} payload")
    return payload


def encode_message(msg: HandshakeMessage) -> bytes:
    payload = _encode_payload(msg)
    return _FRAME_HEAD.pack(MAGIC, VERSION, int(msg.kind), len(payload)) + payload


def read_message(data: bytes, offset: int = 0) -> tuple[HandshakeMessage, int]:
    start = _take(data, offset, _FRAME_HEAD.size, "frame header")
    magic, version, kind, length = _FRAME_HEAD.unpack_from(data, offset)
    if magic != MAGIC:
        raise WireError(f"bad magic {magic!r}")
    if version != VERSION:
        raise WireError(f"unsupported version {version}")
    try:
        kind = MessageKind(kind)
    except ValueError:
        raise WireError(f"unknown message kind 0x{kind:02x}") from None
    end = _take(data, start, length, "frame payload")
    return HandshakeMessage(kind, _decode_payload(kind, data[start:end])), end


def decode_message(data: bytes) -> HandshakeMessage:
    msg, end = read_message(data)
    if end != len(data):
        raise WireError(f"{len(data) - end} trailing bytes after frame")
    return msg


# ---------------------------------------------------------------------------
# transcripts


def _check_order(kinds: Sequence[MessageKind]) -> None:
    if tuple(kinds) != PROTOCOL_ORDER[: len(kinds)]:
        names = ", ".join(k.name for k in kinds)
        raise WireError(f"messages out of protocol order: {names}")


def encode_transcript(messages: Iterable[HandshakeMessage]) -> bytes:
    messages = list(messages)
    _check_order([m.kind for m in messages])
    return b"".join(encode_message(m) for m in messages)


def decode_transcript(data: bytes) -> list[HandshakeMessage]:
    messages = []
    offset = 0
    while offset < len(data):
        msg, offset = read_message(data, offset)
        messages.append(msg)
    _check_order([m.kind for m in messages])
    return messages


def write_transcript(path: str | Path, messages: Iterable[HandshakeMessage]) -> None:
    Path(path).write_bytes(encode_transcript(messages))


def read_transcript(path: str | Path) -> list[HandshakeMessage]:
    return decode_transcript(Path(path).read_bytes())

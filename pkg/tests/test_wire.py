import random
import struct
from pathlib import Path

import pytest

from braidkex.braid import BraidWord, parse_word
from braidkex.garside import CanonicalForm, to_canonical
from braidkex.protocol import execute_handshake
from braidkex.wire import (
    MAGIC,
    PROTOCOL_ORDER,
    HandshakeMessage,
    MessageKind,
    ParamsPayload,
    WireError,
    decode_braid,
    decode_message,
    decode_transcript,
    encode_braid,
    encode_message,
    encode_transcript,
    read_braid,
    read_transcript,
    write_transcript,
)

from conftest import random_form

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize(
    "name, word",
    [("identity_b3.bin", ""), ("x1_b3.bin", "1"), ("x1inv_b3.bin", "-1")],
)
def test_golden_blobs(name, word):
    expected = (GOLDEN / name).read_bytes()
    form = to_canonical(parse_word(word, 3))
    assert encode_braid(form) == expected
    assert decode_braid(expected) == form


def test_round_trip_random():
    rng = random.Random(2)
    seen = {}
    for _ in range(1000):
        n = rng.randint(2, 12)
        f = random_form(n, rng.randint(0, 60), rng)
        blob = encode_braid(f)
        assert decode_braid(blob) == f
        assert seen.setdefault(blob, f) == f


def _blob(n, p, tables):
    return struct.pack(">HiI", n, p, len(tables)) + b"".join(bytes(t) for t in tables)


@pytest.mark.parametrize(
    "data",
    [
        b"",
        b"\x00\x03\x00",
        _blob(3, 0, [[1, 0, 2]])[:-1],  # truncated table
        _blob(3, 0, [[1, 1, 2]]),  # not a bijection
        _blob(3, 0, [[0, 1, 2]]),  # identity factor
        _blob(3, 0, [[2, 1, 0]]),  # Delta factor
        _blob(3, 0, [[1, 0, 2], [0, 2, 1]]),  # x1 x2 is not left-weighted
        _blob(3, 0, [[1, 0, 2]]) + b"\x00",  # trailing byte
        _blob(1, 0, []),  # too few strands
        _blob(3, 0, [[1, 0, 5]]),  # value out of range
    ],
)
def test_malformed_blobs_rejected(data):
    with pytest.raises(WireError):
        decode_braid(data)


def test_read_braid_offset():
    a, b = to_canonical(parse_word("1", 3)), to_canonical(parse_word("-2 1", 4))
    data = encode_braid(a) + encode_braid(b)
    got_a, off = read_braid(data)
    got_b, end = read_braid(data, off)
    assert (got_a, got_b, end) == (a, b, len(data))


def test_encode_rejects_large_n():
    with pytest.raises(WireError):
        encode_braid(CanonicalForm(256, 1))


@pytest.fixture(scope="module")
def handshake():
    return execute_handshake(8, 32, 4)


def test_transcript_round_trip(handshake, tmp_path):
    msgs = list(handshake.transcript)
    assert [m.kind for m in msgs] == list(PROTOCOL_ORDER)
    path = tmp_path / "t.bin"
    write_transcript(path, msgs)
    assert read_transcript(path) == msgs
    for m in msgs:
        assert decode_message(encode_message(m)) == m


def test_empty_transcript(tmp_path):
    path = tmp_path / "empty.bin"
    path.write_bytes(b"")
    assert read_transcript(path) == []


def test_frame_layout():
    form = to_canonical(parse_word("1", 3))
    frame = encode_message(HandshakeMessage(MessageKind.TRANSMISSION_A, form))
    assert frame[:4] == MAGIC
    assert frame[4:6] == b"\x01\x03"
    assert frame[6:10] == struct.pack(">I", len(frame) - 10)
    assert frame[10:] == encode_braid(form)


def test_params_payload_layout():
    w = to_canonical(parse_word("1 2", 3))
    frame = encode_message(HandshakeMessage(MessageKind.PARAMS, ParamsPayload(3, 2, w)))
    assert frame[10:16] == b"\x00\x03\x00\x00\x00\x02"
    assert frame[16:] == encode_braid(w)


def test_malformed_frames(handshake):
    good = encode_message(handshake.transcript[1])
    cases = [
        b"X" + good[1:],  # flipped magic
        good[:4] + b"\x02" + good[5:],  # version
        good[:5] + b"\x09" + good[6:],  # unknown kind
        good[:-1],  # truncated
        good + b"\x00",  # trailing garbage
        good[:6] + struct.pack(">I", len(good) - 9) + good[10:] + b"\x00",  # payload trailing
    ]
    for data in cases:
        with pytest.raises(WireError):
            decode_message(data)


def test_transcript_order_enforced(handshake):
    msgs = list(handshake.transcript)
    with pytest.raises(WireError):
        encode_transcript([msgs[1], msgs[0]])
    data = encode_message(msgs[0]) + encode_message(msgs[2])
    with pytest.raises(WireError):
        decode_transcript(data)
    assert decode_transcript(encode_transcript(msgs[:3])) == msgs[:3]


def test_payload_type_checked():
    with pytest.raises(TypeError):
        HandshakeMessage(MessageKind.PARAMS, CanonicalForm(3))
    with pytest.raises(TypeError):
        HandshakeMessage(MessageKind.TRANSMISSION_B, (CanonicalForm(3),))


def test_subgroup_strand_disagreement_rejected():
    gens = (CanonicalForm(3, 1), CanonicalForm(4, 1))
    frame = encode_message(HandshakeMessage(MessageKind.SUBGROUP_A, gens))
    with pytest.raises(WireError):
        decode_message(frame)

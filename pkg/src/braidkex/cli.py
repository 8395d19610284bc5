"""Command-line entry point: normal forms, handshakes, attacks and the distinguisher."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .braid import BraidError, parse_word
from .cryptanalysis import (
    TOY_BUDGET,
    TOY_SAMPLER,
    brute_force_decompose,
    distinguisher_experiment,
    instance_from_transcript,
    length_attack,
    recover_key,
)
from .garside import to_canonical
from .protocol import DEFAULT_FACTOR_BUDGET, DEFAULT_L, DEFAULT_N, derive_session_key, execute_handshake
from .wire import WireError, read_transcript, write_transcript


@dataclass
class CliConfig:
    command: str
    n: int = DEFAULT_N
    l: int = DEFAULT_L
    seed: int = 0
    transcript: str | None = None
    word: str = ""
    trials: int = 20
    beam: int = 32
    max_iters: int = 10
    depth_left: int = 4
    depth_right: int = 2
    kind: str = "brute"
    toy: bool = False


def cmd_nf(cfg: CliConfig) -> int:
    form = to_canonical(parse_word(cfg.word, cfg.n))
    print(f"n={form.n}")
    print(f"p={form.delta_power}")
    print(f"factors={len(form.factors)}")
    for k, f in enumerate(form.factors, 1):
        print(f"A{k}=" + ",".join(map(str, f.image)))
    return 0


def cmd_handshake(cfg: CliConfig) -> int:
    extra = dict(TOY_SAMPLER, factor_budget=TOY_BUDGET) if cfg.toy else {}
    extra.setdefault("factor_budget", DEFAULT_FACTOR_BUDGET)
    hs = execute_handshake(cfg.n, cfg.l, cfg.seed, **extra)
    if cfg.transcript:
        write_transcript(cfg.transcript, hs.transcript)
    ka, kb = derive_session_key(hs.key_a), derive_session_key(hs.key_b)
    print(f"alice={ka.hex()}")
    print(f"bob={kb.hex()}")
    print("MATCH" if hs.key_a == hs.key_b else "MISMATCH")
    return 0


def cmd_attack(cfg: CliConfig) -> int:
    if not cfg.transcript:
        raise ValueError("attack needs --transcript")
    messages = read_transcript(cfg.transcript)
    inst, p_b = instance_from_transcript(messages)
    if cfg.kind == "brute":
        pair = brute_force_decompose(inst, cfg.depth_left, cfg.depth_right)
    else:
        pair = length_attack(inst, cfg.beam, cfg.max_iters)
    print(f"attack={cfg.kind}")
    print(f"n={inst.n}")
    if pair is None:
        print("result=failure")
        return 0
    print("result=success")
    print(f"iterations={pair.iterations}")
    print("left=" + " ".join(map(str, pair.left.letters)))
    print("right=" + " ".join(map(str, pair.right.letters)))
    print(f"session_key={derive_session_key(recover_key(pair, p_b)).hex()}")
    return 0


def cmd_distinguish(cfg: CliConfig) -> int:
    print(distinguisher_experiment(cfg.n, cfg.l, cfg.trials, cfg.seed))
    return 0


COMMANDS = {
    "nf": cmd_nf,
    "handshake": cmd_handshake,
    "attack": cmd_attack,
    "distinguish": cmd_distinguish,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidkex", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="print the left normal form of a word")
    p.add_argument("word", help='generator word, e.g. "1 -2 1"')
    p.add_argument("--n", type=int, default=DEFAULT_N)

    p = sub.add_parser("handshake", help="run one key exchange")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--l", type=int, default=DEFAULT_L)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transcript", help="write the transcript here")
    p.add_argument("--toy", action="store_true", help="tiny keys (2 generators, depth 2) for attack demos")

    p = sub.add_parser("attack", help="attack Alice's transmission in a transcript")
    p.add_argument("kind", choices=("brute", "length"))
    p.add_argument("--transcript", required=True)
    p.add_argument("--beam", type=int, default=32)
    p.add_argument("--max-iters", type=int, default=10)
    p.add_argument("--depth-left", type=int, default=4)
    p.add_argument("--depth-right", type=int, default=2)
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; attacks are deterministic")

    p = sub.add_parser("distinguish", help="cycle-type distinguisher experiment")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--l", type=int, default=DEFAULT_L)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(**vars(args))
    try:
        return COMMANDS[cfg.command](cfg)
    except (BraidError, WireError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

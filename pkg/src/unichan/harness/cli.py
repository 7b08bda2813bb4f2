"""Command-line front end.  Exit codes: 0 pass, 1 fail or bound violation, 2 bad configuration."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..bitlinalg import BitVector
from ..codes.base import DecodeFailure, RateBoundViolation
from .bounds import check_rate_bound
from .experiment import (DEFAULT_SEED, ConfigError, ExperimentSpec, build_graph, build_noise_set,
                         default_model, load_code, run_attack, run_experiment, substream)
from .sweep import sweep_rows, to_csv

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _load_json(text: str) -> dict:
    """Accept either a path to a JSON file or inline JSON."""
    path = Path(text)
    try:
        raw = path.read_text() if path.exists() else text
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {text!r}: {exc}") from exc


def _seed_rho(code, seed: int):
    return code.sample_seed(substream(seed, 0, 0))


def _parse_int(text: str) -> int:
    return int(text, 0)


def cmd_encode(args) -> int:
    code = load_code(_load_json(args.code))
    m = args.message
    try:
        code.check_message(m)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    x = code.encode(m, _seed_rho(code, args.seed))
    print(BitVector(code.n, x).to_hex())
    return EXIT_PASS


def cmd_decode(args) -> int:
    code = load_code(_load_json(args.code))
    try:
        word = BitVector.from_hex(args.word)
    except ValueError as exc:
        raise ConfigError(f"bad word: {exc}") from exc
    if word.n != code.n:
        raise ConfigError(f"word has {word.n} bits, code has {code.n}")
    channel = _load_json(args.channel) if args.channel else {}
    model = channel.get("model", default_model(code))
    if model in ("hamming", "piecewise"):
        decode = code.decoder_for(build_graph(channel, code))
    else:
        decode = code.decoder_for(build_noise_set(channel, code, args.seed))
    try:
        m = decode(word.value, _seed_rho(code, args.seed))
    except DecodeFailure as exc:
        print(json.dumps({"decoded": None, "failure": str(exc)}))
        return EXIT_FAIL
    print(json.dumps({"decoded": m}))
    return EXIT_PASS


def cmd_simulate(args) -> int:
    spec = ExperimentSpec.from_json(_load_json(args.spec))
    report = run_experiment(spec)
    _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_attack(args) -> int:
    attack = {"kind": args.kind}
    if args.kind == "oblivious":
        attack["D"] = args.D
        if args.messages:
            attack["messages"] = [int(v, 0) for v in args.messages.split(",")]
        code = _load_json(args.code) if args.code else {"scheme": "random-toy", "n": 12, "t": 3, "k": 2,
                                                        "epsilon": 0.25, "R": 64}
    else:
        attack.update(T=args.T, N=args.N or 4 * args.T, encoder=args.encoder)
        code = _load_json(args.code) if args.code else {"scheme": "hash", "n": 16, "t": 6, "epsilon": 0.0625}
    spec = ExperimentSpec(code=code, attack=attack, master_seed=args.seed, trials=1)
    report = run_attack(spec)
    _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    desc = _load_json(args.code)
    try:
        code = load_code(desc)
    except RateBoundViolation as exc:
        print(json.dumps({"violation": True, "error": str(exc)}))
        return EXIT_FAIL
    rep = check_rate_bound(code)
    print(json.dumps(rep.to_json()))
    return EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    template = _load_json(args.spec)
    values = [_number(v) for v in args.values.split(",") if v.strip()] if args.values else []
    rows = sweep_rows(template, args.axis, values)
    text = to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if any(r["error"] for r in rows) else EXIT_PASS


def _number(text: str):
    text = text.strip()
    try:
        return int(text, 0)
    except ValueError:
        return float(text)


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if out:
        Path(out).write_text(text + "\n")
    print(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unichan", description="Universal channel codes with shared randomness.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="encode one message under the seed derived from --seed")
    e.add_argument("--code", required=True, help="code descriptor: JSON file or inline JSON")
    e.add_argument("--message", required=True, type=_parse_int)
    e.add_argument("--seed", type=_parse_int, default=DEFAULT_SEED)
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="decode a hex word for a given channel")
    d.add_argument("--code", required=True)
    d.add_argument("--word", required=True, help='hex wire format, e.g. "48:0d0a..."')
    d.add_argument("--channel", help="channel spec JSON (defaults follow the code)")
    d.add_argument("--seed", type=_parse_int, default=DEFAULT_SEED)
    d.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", help="run a Monte Carlo experiment from a spec file")
    s.add_argument("--spec", required=True)
    s.add_argument("--out", help="also write the JSON report here")
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("attack", help="run a lower-bound attack")
    a.add_argument("--kind", required=True, choices=["oblivious", "hamming"])
    a.add_argument("--code", help="code descriptor to attack")
    a.add_argument("--D", type=int, default=4, help="seeds the oblivious attack enumerates")
    a.add_argument("--messages", help="two comma-separated messages for the oblivious attack")
    a.add_argument("--T", type=int, default=4)
    a.add_argument("--N", type=int, default=0)
    a.add_argument("--encoder", choices=["random", "constant", "code"], default="random")
    a.add_argument("--seed", type=_parse_int, default=DEFAULT_SEED)
    a.add_argument("--out")
    a.set_defaults(func=cmd_attack)

    b = sub.add_parser("bounds", help="check k/n against the rate bound")
    b.add_argument("--code", required=True)
    b.set_defaults(func=cmd_bounds)

    w = sub.add_parser("sweep", help="one experiment per axis value, CSV out")
    w.add_argument("--spec", required=True, help="template spec")
    w.add_argument("--axis", required=True)
    w.add_argument("--values", default="", help="comma-separated list")
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RateBoundViolation as exc:
        print(f"rate bound violation: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

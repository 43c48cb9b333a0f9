"""Command-line entry points: urb (build/verify/growth), sidon, f2.

All numeric output is decimal strings inside compact JSON with a fixed key
order, so identical argv yields byte-identical output. Rationals are entered
as num/den — float parsing would blur the exact threshold semantics.
"""

from __future__ import annotations

import argparse
import gzip
import json
import sys
from fractions import Fraction
from typing import Optional

from .builder import BuilderConfig, BuilderTranscript, InvariantViolation, build
from .intset import IntegerSet
from .sidon import (
    bose_construction,
    greedy_sidon,
    is_modular_sidon,
    is_sidon,
    max_sidon_exact,
    max_sidon_naive,
)
from .split import EpsilonOutOfRange, split_construction, verify_split

# transcripts at least this many JSON bytes are gzip-compressed when --gzip
GZIP_THRESHOLD = 1 << 20


def _fraction(text: str) -> Fraction:
    """Rationals only as num/den or a plain integer; no float forms."""
    parts = text.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            return Fraction(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError):
        pass
    raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}")


def _emit(data: dict) -> None:
    sys.stdout.write(json.dumps(data, separators=(",", ":")) + "\n")


def _write_transcript(transcript: BuilderTranscript, path: str, use_gzip: bool) -> None:
    text = transcript.dumps()
    if use_gzip and len(text) >= GZIP_THRESHOLD:
        # mtime=0 keeps the compressed bytes deterministic
        with open(path, "wb") as raw:
            with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as gz:
                gz.write(text.encode("ascii"))
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _read_transcript(path: str) -> BuilderTranscript:
    opener = gzip.open if path.endswith(".gz") or _is_gzip(path) else open
    with opener(path, "rt", encoding="ascii") as fh:
        return BuilderTranscript.loads(fh.read())


def _is_gzip(path: str) -> bool:
    with open(path, "rb") as fh:
        return fh.read(2) == b"\x1f\x8b"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urb", description="unique representation basis construction"
    )
    parser.add_argument("--threads", type=int, default=None, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="run the inductive construction")
    p_build.add_argument("--epsilon", type=_fraction, required=True)
    p_build.add_argument("--rounds", type=int, required=True)
    p_build.add_argument("--mode", choices=("paper", "toy"), required=True)
    p_build.add_argument("--force-p", type=int, default=None)
    p_build.add_argument("--sample-seed", type=int, default=None)
    p_build.add_argument("--sample-size", type=int, default=None)
    p_build.add_argument("--out", required=True)
    p_build.add_argument("--gzip", action="store_true")

    p_verify = sub.add_parser("verify", help="replay and re-check a transcript")
    p_verify.add_argument("transcript")
    group = p_verify.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--sample", type=int, default=None, metavar="K")
    p_verify.add_argument("--sample-seed", type=int, default=None)

    p_growth = sub.add_parser("growth", help="growth checkpoints of a transcript")
    p_growth.add_argument("transcript")
    p_growth.add_argument("--csv", action="store_true")

    return parser


def _sidon_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sidon", description="Sidon set tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bose = sub.add_parser("bose", help="Bose modular Sidon set for a prime")
    p_bose.add_argument("-p", type=int, required=True)
    p_bose.add_argument("--json", action="store_true")

    p_lemma = sub.add_parser("lemma1", help="two-band split of the Bose set")
    p_lemma.add_argument("-p", type=int, required=True)
    p_lemma.add_argument("--epsilon", type=_fraction, required=True)

    p_check = sub.add_parser("check", help="Sidon verdict for explicit elements")
    p_check.add_argument("elements", nargs="+", type=int)

    return parser


def _f2_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="f2", description="max Sidon subset of [1, N]")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument(
        "--method", choices=("exact", "greedy", "naive"), default="exact"
    )
    return parser


def run_urb(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "build":
        kwargs = {}
        if args.sample_size is not None:
            kwargs["sample_size"] = args.sample_size
        try:
            config = BuilderConfig(
                epsilon=args.epsilon,
                rounds=args.rounds,
                mode=args.mode,
                forced_p=args.force_p,
                sample_seed=args.sample_seed,
                **kwargs,
            )
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        try:
            transcript = build(config)
        except InvariantViolation as err:
            print(f"invariant violation: {err}", file=sys.stderr)
            return 1
        _write_transcript(transcript, args.out, args.gzip)
        last = transcript.checkpoints[-1]
        _emit(
            {
                "out": args.out,
                "stages": len(transcript.stages),
                "final_size": str(len(transcript.final_set)),
                "x": str(last.x),
                "count": str(last.count),
                "ratio_decimal": last.ratio_decimal(),
            }
        )
        return 0
    if args.command == "verify":
        from .verify import verify_transcript

        transcript = _read_transcript(args.transcript)
        if args.sample is not None:
            if args.sample_seed is None:
                print(
                    "error: sampled verification requires --sample-seed",
                    file=sys.stderr,
                )
                return 2
            transcript = BuilderTranscript(
                config=_with_sampling(transcript.config, args.sample, args.sample_seed),
                initial_set=transcript.initial_set,
                x1=transcript.x1,
                stages=transcript.stages,
                final_set=transcript.final_set,
                checkpoints=transcript.checkpoints,
            )
        elif args.exhaustive:
            transcript = BuilderTranscript(
                config=_with_budget(transcript.config, 1 << 62),
                initial_set=transcript.initial_set,
                x1=transcript.x1,
                stages=transcript.stages,
                final_set=transcript.final_set,
                checkpoints=transcript.checkpoints,
            )
        report = verify_transcript(transcript)
        _emit(report.to_json_dict())
        return 0 if report.ok else 1
    if args.command == "growth":
        from .verify import growth_report

        transcript = _read_transcript(args.transcript)
        report = growth_report(transcript)
        if args.csv:
            sys.stdout.write(report.to_csv())
        else:
            _emit(report.to_json_dict())
        return 0
    raise AssertionError("unreachable")


def _with_budget(config: BuilderConfig, pair_budget: int) -> BuilderConfig:
    return BuilderConfig(
        epsilon=config.epsilon,
        rounds=config.rounds,
        mode=config.mode,
        forced_p=config.forced_p,
        pair_budget=pair_budget,
        sample_size=config.sample_size,
        sample_seed=config.sample_seed,
    )


def _with_sampling(config: BuilderConfig, size: int, seed: int) -> BuilderConfig:
    return BuilderConfig(
        epsilon=config.epsilon,
        rounds=config.rounds,
        mode=config.mode,
        forced_p=config.forced_p,
        pair_budget=config.pair_budget,
        sample_size=size,
        sample_seed=seed,
    )


def run_sidon(argv: Optional[list[str]] = None) -> int:
    args = _sidon_parser().parse_args(argv)
    if args.command == "bose":
        try:
            result = bose_construction(args.p)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        verified = (
            is_modular_sidon(result.elements, result.modulus) is None
            and is_sidon(result.as_integer_set()) is None
        )
        _emit(
            {
                "p": result.p,
                "modulus": result.modulus,
                "elements": [str(v) for v in result.elements],
                "verified": verified,
            }
        )
        return 0 if verified else 1
    if args.command == "lemma1":
        try:
            result = split_construction(bose_construction(args.p), args.epsilon)
        except (ValueError, EpsilonOutOfRange) as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        verdict = verify_split(result)
        _emit(
            {
                "p": result.p,
                "epsilon": str(result.epsilon),
                "l": result.l_index,
                "y": result.y_index,
                "elements": result.script_s.to_json_list(),
                "size_bound_holds": verdict.size_bound_holds,
            }
        )
        return 0 if verdict.invariants_ok else 1
    if args.command == "check":
        witness = is_sidon(IntegerSet(args.elements))
        verdict = {
            "sidon": witness is None,
            **(
                {"witness": [str(v) for v in witness.as_tuple()]}
                if witness is not None
                else {}
            ),
        }
        _emit(verdict)
        return 0 if witness is None else 1
    raise AssertionError("unreachable")


def run_f2(argv: Optional[list[str]] = None) -> int:
    args = _f2_parser().parse_args(argv)
    if args.n < 1:
        print("error: --n must be positive", file=sys.stderr)
        return 2
    if args.method == "exact":
        size, witness = max_sidon_exact(args.n)
    elif args.method == "naive":
        size, witness = max_sidon_naive(args.n)
    else:
        witness = greedy_sidon(args.n)
        size = len(witness)
    _emit(
        {
            "n": args.n,
            "size": size,
            "witness": witness.to_json_list(),
        }
    )
    return 0


def main_urb() -> None:
    sys.exit(run_urb())


def main_sidon() -> None:
    sys.exit(run_sidon())


def main_f2() -> None:
    sys.exit(run_f2())

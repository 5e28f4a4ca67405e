"""Command-line harness: ``onlinesearch {simulate,adversary,bounds,figure,certify}``.

Exit codes: 0 success, 1 certification failure, 2 configuration error,
3 input (sequence file) error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config
from .adversary import adaptive_lower_bound, build_staircase
from .analysis import certify, figure_data
from .errors import OnlineSearchError, SequenceFileError
from .formats import (
    curve_csv,
    curve_doc,
    dumps_doc,
    loads_sequence,
    parse_prices,
    sequence_doc,
    sequence_plain,
    staircase_doc,
    transcript_doc,
)
from .market import MarketBounds, PriceSequence, competitive_ratio, optimal_offline
from .oracle import oracle_optimal_day, oracle_threshold_index
from .strategies import (
    advice_player,
    expected_ratio_randomized,
    make_rpp,
    optimal_day_player,
    randomized_geometric_player,
    run_policy,
    threshold_family,
)

EXIT_OK, EXIT_CERTIFY, EXIT_CONFIG, EXIT_INPUT = 0, 1, 2, 3

DEFAULT_M, DEFAULT_UPPER = 1.0, 100.0


class ConfigError(Exception):
    pass


class InputError(Exception):
    pass


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 (numpy's default bit generator) seeded with a 64-bit unsigned integer."""
    return np.random.Generator(np.random.PCG64(seed))


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _bounds(args, default: tuple[float, float] | None = (DEFAULT_M, DEFAULT_UPPER)):
    m, M = args.m, args.M
    if m is None and M is None:
        if default is None:
            return None
        m, M = default
    elif m is None or M is None:
        raise ConfigError("--m and --M must be given together")
    try:
        return MarketBounds(m, M)
    except OnlineSearchError as exc:
        raise ConfigError(str(exc)) from exc


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _check_paths(args) -> None:
    inp = getattr(args, "input", None)
    if inp is not None and not Path(inp).is_file():
        raise InputError(f"input file not found: {inp}")
    out = getattr(args, "out", None)
    if out is not None and not Path(out).parent.is_dir():
        raise ConfigError(f"output directory does not exist: {Path(out).parent}")


def _render_record(record: dict, fmt: str) -> str:
    if fmt == "doc":
        return dumps_doc(record)
    if fmt == "csv":
        keys = list(record)
        return ",".join(keys) + "\n" + ",".join(_cell(record[k]) for k in keys) + "\n"
    return "".join(f"{k}: {_cell(v)}\n" for k, v in record.items())


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


# simulate


def _load_sequence(args) -> PriceSequence:
    bounds = _bounds(args, default=None)
    if args.input is not None:
        try:
            return loads_sequence(Path(args.input).read_text(), bounds)
        except (SequenceFileError, OSError) as exc:
            raise InputError(str(exc)) from exc
    if args.seq is not None:
        try:
            prices = parse_prices(args.seq)
        except SequenceFileError as exc:
            raise ConfigError(str(exc)) from exc
        if not prices:
            raise ConfigError("--seq is empty")
        if bounds is None:
            bounds = MarketBounds(min(prices), max(prices))
        try:
            return PriceSequence(tuple(prices), bounds)
        except OnlineSearchError as exc:
            raise ConfigError(str(exc)) from exc
    if bounds is None:
        bounds = MarketBounds(DEFAULT_M, DEFAULT_UPPER)
    if args.n < 1:
        raise ConfigError("--n must be at least 1")
    prices = make_rng(args.seed).uniform(bounds.m, bounds.M, size=args.n)
    return PriceSequence(tuple(float(p) for p in prices), bounds)


def cmd_simulate(args) -> int:
    seq = _load_sequence(args)
    bounds = seq.bounds
    record: dict = {"strategy": args.strategy}
    if args.strategy == "rpp":
        if args.p is None:
            raise ConfigError("--strategy rpp needs --p")
        policy = make_rpp(args.p)
    elif args.strategy == "advice":
        tape = args.tape if args.tape is not None else str(oracle_threshold_index(args.b, bounds, seq))
        record["tape"] = tape
        policy = advice_player(args.b, tape, bounds)
    elif args.strategy == "opt-day":
        n_known = None if args.unknown_n else seq.n
        tape = args.tape if args.tape is not None else str(oracle_optimal_day(seq, n_known=not args.unknown_n))
        record["tape"] = tape
        policy = optimal_day_player(tape, n_known)
    else:
        policy = randomized_geometric_player(bounds, make_rng(args.seed), strict=args.strict)
        record["expected_ratio"] = expected_ratio_randomized(bounds, seq, strict=args.strict)
    outcome = run_policy(policy, seq)
    opt = optimal_offline(seq)
    report = competitive_ratio(outcome, opt)
    record.update(
        policy=policy.label,
        m=bounds.m,
        M=bounds.M,
        n=seq.n,
        day=outcome.day,
        profit=outcome.profit,
        opt_day=opt.day,
        opt_profit=opt.profit,
        ratio=report.ratio,
    )
    _emit(_render_record(record, args.format or "plain"), args.out)
    return EXIT_OK


# adversary


def cmd_adversary(args) -> int:
    bounds = _bounds(args)
    fmt = args.format or "doc"
    if args.mode == "staircase":
        if args.n is None:
            raise ConfigError("--mode staircase needs --n")
        family = build_staircase(args.n, bounds)
        summary = f"staircase n={family.n} delta={family.delta!r} members={family.n}\n"
        if fmt == "plain":
            body = "\n".join(",".join(map(repr, s.prices)) for s in family.members) + "\n"
        else:
            body = dumps_doc(staircase_doc(family))
    else:
        b = args.b
        if args.n is None:
            raise ConfigError("--mode adaptive needs --n")
        if args.n < (1 << b) + 1:
            raise ConfigError(
                f"adaptive adversary needs b < log2(n), i.e. n >= 2**b + 1 = {(1 << b) + 1}; got n={args.n}"
            )
        if args.policies == "advice":
            policies = threshold_family(b, bounds).policies()
        else:
            thresholds = make_rng(args.seed).uniform(bounds.m, bounds.M, size=1 << b)
            policies = [make_rpp(float(t)) for t in thresholds]
        transcript = adaptive_lower_bound(b, args.n, bounds, policies)
        summary = (
            f"case={transcript.case_taken} rejected_at={_cell(transcript.rejected_at)} "
            f"forced_ratio={transcript.forced_ratio!r}\n"
        )
        if fmt == "plain":
            body = sequence_plain(transcript.sequence)
        else:
            body = dumps_doc(transcript_doc(transcript))
    sys.stdout.write(summary)
    if args.out is not None:
        args.out.write_text(body)
    elif args.format is not None:
        sys.stdout.write(body)
    return EXIT_OK


# bounds / figure


def _fluctuation(args) -> float:
    if args.ratio is not None:
        if args.ratio < 1:
            raise ConfigError(f"fluctuation ratio must be >= 1, got {args.ratio!r}")
        return args.ratio
    return _bounds(args).fluctuation


def cmd_curve(args) -> int:
    fluctuation = _fluctuation(args)
    curve = figure_data(fluctuation, args.b_max, args.grid_step)
    if args.format == "doc":
        text = dumps_doc(curve_doc(curve))
    else:
        text = curve_csv(curve, dense=args.dense)
    _emit(text, args.out)
    return EXIT_OK


# certify


def cmd_certify(args) -> int:
    bounds = _bounds(args)
    if args.b_max > config.max_bits():
        raise ConfigError(f"--b-max exceeds the cap of {config.max_bits()} bits")
    n = args.n if args.n is not None else (1 << args.b_max) + 1
    if n < (1 << args.b_max) + 1:
        raise ConfigError(f"certify needs n >= 2**b_max + 1 = {(1 << args.b_max) + 1}; got n={n}")
    rows = certify(bounds, args.b_max, n, tol=args.tol, perturb=args.perturb)
    lines = []
    for row in rows:
        verdict = "PASS" if row.passed else "FAIL"
        witness = "-" if row.witness is None else f"sigma_{row.witness}"
        line = (
            f"{verdict} b={row.b} closed_form={row.closed_form!r} measured={row.measured!r} "
            f"probe_max={row.probe_max!r} transcript_ratio={row.transcript_ratio!r} witness={witness}"
        )
        for failure in row.failures:
            line += f"\n  delta: {failure}"
        lines.append(line)
    ok = all(row.passed for row in rows)
    lines.append(f"{'PASS' if ok else 'FAIL'} overall ({len(rows)} budgets, tol={args.tol!r})")
    if args.format == "doc":
        text = dumps_doc(
            {
                "passed": ok,
                "tol": args.tol,
                "rows": [
                    {
                        "b": r.b,
                        "closed_form": r.closed_form,
                        "measured": r.measured,
                        "probe_max": r.probe_max,
                        "transcript_ratio": r.transcript_ratio,
                        "witness": r.witness,
                        "failures": list(r.failures),
                    }
                    for r in rows
                ],
            }
        )
    else:
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_CERTIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=float, help="lower price bound")
    common.add_argument("--M", type=float, help="upper price bound")
    common.add_argument("--format", choices=["csv", "doc", "plain"], help="output format (doc = JSON)")
    common.add_argument("--out", type=Path, help="write output to PATH instead of stdout")
    common.add_argument(
        "--seed", type=_seed, default=0, help="seed for the PCG64 generator (default 0)"
    )
    common.add_argument(
        "--tol",
        type=float,
        default=config.default_tol(),
        help=f"relative tolerance (default {config.DEFAULT_TOL}, env {config.TOL_ENV})",
    )

    parser = argparse.ArgumentParser(
        prog="onlinesearch",
        description="Advice, adversaries and bounds for the online search problem.",
        epilog=(
            f"Environment: {config.TOL_ENV} overrides the default tolerance, "
            f"{config.MAX_BITS_ENV} the advice-bit cap (default {config.DEFAULT_MAX_BITS})."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", parents=[common], help="run one strategy on one sequence")
    sim.add_argument("--strategy", choices=["rpp", "advice", "opt-day", "random-geo"], required=True)
    sim.add_argument("--b", type=int, default=1, help="advice bits for --strategy advice")
    sim.add_argument("--p", type=float, help="reservation price for --strategy rpp")
    sim.add_argument("--seq", help="comma-separated prices")
    sim.add_argument("--input", help="sequence file (JSON doc, or plain lines with --m/--M)")
    sim.add_argument("--n", type=int, default=10, help="length of a generated sequence")
    sim.add_argument("--tape", help="override the oracle's advice (0/1 string)")
    sim.add_argument("--unknown-n", action="store_true", help="opt-day: self-delimiting advice")
    sim.add_argument("--strict", action="store_true", help="random-geo: require M/m = 2**k")
    sim.set_defaults(func=cmd_simulate)

    adv = sub.add_parser("adversary", parents=[common], help="build lower-bound instances")
    adv.add_argument("--mode", choices=["staircase", "adaptive"], required=True)
    adv.add_argument("--b", type=int, default=1)
    adv.add_argument("--n", type=int)
    adv.add_argument(
        "--policies",
        choices=["advice", "random"],
        default="advice",
        help="adaptive: play against the advice family or seeded random reservation prices",
    )
    adv.set_defaults(func=cmd_adversary)

    for name, ratio, help_text in (
        ("bounds", None, "bound table for given bounds"),
        ("figure", 100.0, "data for the advice-vs-randomization plot"),
    ):
        cur = sub.add_parser(name, parents=[common], help=help_text)
        cur.add_argument("--ratio", type=float, default=ratio, help="fluctuation ratio M/m")
        cur.add_argument("--b-max", type=int, default=10)
        cur.add_argument("--dense", action="store_true", help="emit the real-valued grid instead")
        cur.add_argument("--grid-step", type=float, default=0.05)
        cur.set_defaults(func=cmd_curve)

    cert = sub.add_parser("certify", parents=[common], help="certify bound tightness per b")
    cert.add_argument("--b-max", type=int, default=8)
    cert.add_argument("--n", type=int)
    cert.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    cert.set_defaults(func=cmd_certify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_paths(args)
        if getattr(args, "b", 0) < 0:
            raise ConfigError("--b must be nonnegative")
        if getattr(args, "b", 0) > config.max_bits():
            raise ConfigError(f"--b exceeds the cap of {config.max_bits()} bits")
        return args.func(args)
    except InputError as exc:
        print(f"onlinesearch: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, OnlineSearchError) as exc:
        print(f"onlinesearch: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

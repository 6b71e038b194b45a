"""Command-line front end.

Exit status: 0 on success / pass, 1 on a failed or inconclusive reproduction,
2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .abelian import StabilizationPolicy, abelian_complexity_profile, balance_profile
from .export import (
    balance_to_csv,
    balance_to_json,
    cover_to_json,
    power_report_to_csv,
    profile_to_csv,
    profile_to_json,
)
from .factors import factor_complexity_profile, right_special_factors, tribonacci_central_check
from .powers import abelian_power_violation, position_coverage_report, two_period_cover
from .reproduce import TARGETS, run_reproduce
from .wordgen import CapacityError, WordError, format_word, materialize, parse_spec


class UsageError(Exception):
    pass


def _write(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for '{args.command}'")


def _policy(args) -> StabilizationPolicy:
    return StabilizationPolicy(cap=args.cap)


def cmd_gen(args):
    _require(args, "spec", "length")
    buf = materialize(parse_spec(args.spec), args.length, args.cap)
    _write(format_word(buf.letters), args.out)


def cmd_abelian(args):
    _require(args, "spec", "nmax")
    profile = abelian_complexity_profile(parse_spec(args.spec), args.nmax, _policy(args))
    _write(profile_to_json(profile) if args.format == "json" else profile_to_csv(profile), args.out)


def cmd_balance(args):
    _require(args, "spec", "nmax")
    profile = balance_profile(parse_spec(args.spec), args.nmax, _policy(args))
    _write(balance_to_json(profile) if args.format == "json" else balance_to_csv(profile), args.out)


def cmd_factors(args):
    if args.central is not None:
        report = tribonacci_central_check(args.central, _policy(args))
        _write(json.dumps(report.to_json()), args.out)
        return
    _require(args, "spec")
    spec = parse_spec(args.spec)
    if args.special is not None:
        found = right_special_factors(spec, args.special, _policy(args))
        data = [
            {"factor": format_word(u), "extensions": sorted(ext)}
            for u, ext in sorted(found.items())
        ]
        _write(json.dumps({"spec": str(spec), "n": args.special, "right_special": data}), args.out)
        return
    _require(args, "nmax")
    profile = factor_complexity_profile(spec, args.nmax, _policy(args))
    _write(profile_to_json(profile) if args.format == "json" else profile_to_csv(profile), args.out)


def cmd_powers(args):
    _require(args, "spec", "k", "mmax")
    spec = parse_spec(args.spec)
    if args.violation:
        length = args.length or ((args.positions or 0) + args.k * args.mmax)
        finite = spec.finite_length
        buf = materialize(spec, length if finite is None else min(length, finite), args.cap)
        hit = abelian_power_violation(buf, args.k, args.mmax)
        data = None if hit is None else {"pos": hit.position, "m": hit.period, "k": hit.exponent}
        _write(json.dumps({"spec": str(spec), "length": buf.length, "hit": data}), args.out)
        return
    _require(args, "positions")
    report = position_coverage_report(spec, args.k, args.positions, args.mmax, args.cap)
    _write(power_report_to_csv(report), args.out)


def cmd_cover(args):
    _require(args, "spec", "k", "positions", "mmax")
    report = position_coverage_report(parse_spec(args.spec), args.k, args.positions, args.mmax, args.cap)
    _write(cover_to_json(two_period_cover(report, args.reading)), args.out)


def cmd_reproduce(args) -> int:
    targets = list(TARGETS) if not args.targets or args.targets == ["all"] else args.targets
    unknown = [t for t in targets if t not in TARGETS]
    if unknown:
        raise UsageError(f"unknown target(s): {', '.join(unknown)}")
    reports = [run_reproduce(t, args.cap) for t in targets]
    if args.format == "json":
        _write(json.dumps([r.to_json() for r in reports], indent=1), args.out)
    else:
        _write("\n".join(r.line() for r in reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


COMMANDS = {
    "gen": cmd_gen,
    "abelian": cmd_abelian,
    "balance": cmd_balance,
    "factors": cmd_factors,
    "powers": cmd_powers,
    "cover": cmd_cover,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--spec", help="word spec, e.g. 'fix(mu,0)' or 'tribonacci'")
    shared.add_argument("--nmax", type=int, help="largest window length")
    shared.add_argument("--mmax", type=int, help="largest abelian period searched")
    shared.add_argument("--k", type=int, help="abelian power exponent")
    shared.add_argument("--positions", type=int, help="number of positions surveyed")
    shared.add_argument("--format", choices=["csv", "json"], default="csv")
    shared.add_argument("--out", help="output file (default stdout)")
    shared.add_argument("--cap", type=int, help="capacity cap in letters (env ABELWORDS_CAP)")

    parser = argparse.ArgumentParser(prog="abelwords", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("gen", parents=[shared], help="print a prefix of a word")
    gen.add_argument("--length", type=int)
    sub.add_parser("abelian", parents=[shared], help="abelian complexity profile")
    sub.add_parser("balance", parents=[shared], help="per-letter balance spreads")
    factors = sub.add_parser("factors", parents=[shared], help="subword complexity and special factors")
    factors.add_argument("--special", type=int, metavar="N", help="list right special factors of length N")
    factors.add_argument("--central", type=int, metavar="N", help="Central(N) report for the Tribonacci word")
    powers = sub.add_parser("powers", parents=[shared], help="minimal abelian k-power period per position")
    powers.add_argument("--violation", action="store_true", help="report the first abelian k-power")
    powers.add_argument("--length", type=int, help="prefix length scanned with --violation")
    cover = sub.add_parser("cover", parents=[shared], help="two-period cover of surveyed positions")
    cover.add_argument("--reading", choices=["start", "cover"], default="start")
    repro = sub.add_parser("reproduce", parents=[shared], help="run reproduction targets")
    repro.add_argument("targets", nargs="*", metavar="TARGET", help=f"'all' or any of: {', '.join(TARGETS)}")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status = COMMANDS[args.command](args)
    except (UsageError, WordError, ValueError, KeyError) as exc:
        print(f"abelwords: error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"abelwords: capacity: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())

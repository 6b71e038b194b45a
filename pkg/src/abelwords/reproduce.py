"""Scripted reproduction targets with embedded expected values.

Each target compares exact integers; a run that hits the capacity cap or
cannot stabilize a prefix is reported as ``inconclusive`` rather than ``fail``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .abelian import (
    StabilizationPolicy,
    abelian_complexity_profile,
    balance_profile,
    prefix_factor_balance,
)
from .factors import tribonacci_central_checks
from .powers import abelian_power_violation, position_coverage_report
from .wordgen import (
    CapacityError,
    dekking_word,
    extremal_word,
    materialize,
    parse_spec,
    thue_morse,
    tribonacci,
)

# Abelian complexity of the Tribonacci word for n = 1..42.
TRIBONACCI_SEQUENCE = [
    3, 3, 4, 3, 4, 4, 4, 3, 4, 4, 4, 4, 4, 4, 3, 4, 4, 4, 4, 4, 4,
    4, 4, 4, 4, 4, 4, 3, 4, 5, 5, 4, 4, 4, 4, 4, 5, 5, 4, 4, 4, 4,
]
# First lengths where the Tribonacci abelian complexity reaches 5, 6 and 7,
# then the next four lengths with value 7.
TRIBONACCI_FIRSTS = {"5": 30, "6": 342, "7": 3914, "next7": [4063, 4841, 4990, 7199]}
TRIBONACCI_RANGE_N = 7500

STURMIAN_DIRECTIVES = ["sturmian(1)", "sturmian(2,1)", "sturmian(1,2,3)"]
RAUZY_WORDS = ["img(rauzy,fix(mu,0))", "pre(2,sturmian(1))"]

TM_SIXPOWER_POSITIONS = 5000
TM_SIXPOWER_MMAX = 4096
DEKKING_LENGTH = 20000
DEKKING_MMAX = 5000


class Inconclusive(Exception):
    pass


@dataclass
class RunReport:
    target: str
    status: str
    observed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "status": self.status,
            "observed": self.observed,
            "expected": self.expected,
            "runtime": round(self.runtime, 3),
        }

    def line(self) -> str:
        return f"{self.target}: {self.status.upper()} ({self.runtime:.2f}s)"


def _values(spec, n_max, policy):
    profile = abelian_complexity_profile(spec, n_max, policy)
    if not profile.stabilized:
        raise Inconclusive(f"{spec}: prefix did not stabilize by {profile.entries[0].L_used}")
    return profile.values


def _tribonacci_sequence(policy):
    return {"values": _values(tribonacci(), 42, policy)}, {"values": TRIBONACCI_SEQUENCE}


def _tribonacci_firsts(policy):
    values = _values(tribonacci(), TRIBONACCI_RANGE_N, policy)
    sevens = [n for n, v in enumerate(values, 1) if v == 7]
    observed = {
        "5": values.index(5) + 1 if 5 in values else None,
        "6": values.index(6) + 1 if 6 in values else None,
        "7": sevens[0] if sevens else None,
        "next7": sevens[1:5],
        "range": sorted(set(values)),
    }
    return observed, {**TRIBONACCI_FIRSTS, "range": [3, 4, 5, 6, 7]}


def _parity(values):
    return {
        "odd": sorted({v for n, v in enumerate(values, 1) if n % 2}),
        "even": sorted({v for n, v in enumerate(values, 1) if not n % 2}),
    }


def _tm_parity(policy):
    return _parity(_values(thue_morse(), 2000, policy)), {"odd": [2], "even": [3]}


def _sturmian_two(policy):
    observed, expected = {}, {}
    for text in STURMIAN_DIRECTIVES:
        spec = parse_spec(text)
        balance = balance_profile(spec, 2000, policy)
        observed[text] = {
            "values": sorted(set(_values(spec, 2000, policy))),
            "C": balance.C_estimate,
        }
        expected[text] = {"values": [2], "C": 1}
    return observed, expected


def _rauzy_three(policy):
    observed = {text: sorted(set(_values(parse_spec(text), 1000, policy))) for text in RAUZY_WORDS}
    return observed, {text: [3] for text in RAUZY_WORDS}


def _dekking_free(policy):
    buf = materialize(dekking_word(), DEKKING_LENGTH, policy.cap)
    hit = abelian_power_violation(buf, 4, DEKKING_MMAX)
    observed = None if hit is None else [hit.position, hit.period]
    return {"hit": observed}, {"hit": None}


def _tm_sixpower(policy):
    report = position_coverage_report(
        thue_morse(), 6, TM_SIXPOWER_POSITIONS, TM_SIXPOWER_MMAX, policy.cap
    )
    return {"uncovered": report.uncovered}, {"uncovered": []}


def _balance_185(policy):
    profile = prefix_factor_balance(tribonacci(), 185, policy)
    if not profile.stabilized:
        raise Inconclusive("prefix deviation did not stabilize")
    values = profile.values
    return (
        {"max_upto_184": max(values[:184]), "at_185": values[184]},
        {"max_upto_184": 1, "at_185": 2},
    )


def _central_check(policy):
    reports = tribonacci_central_checks(2000, policy)
    if not all(r.verified for r in reports):
        raise Inconclusive("central reports not verified")
    return {"failing": [r.n for r in reports if not r.ok]}, {"failing": []}


def _max_binary(policy):
    values = _values(extremal_word(), 100, policy)
    return (
        {"mismatches": [n for n, v in enumerate(values, 1) if v != n + 1]},
        {"mismatches": []},
    )


TARGETS: dict[str, Callable] = {
    "tribonacci-sequence": _tribonacci_sequence,
    "tribonacci-firsts": _tribonacci_firsts,
    "tm-parity": _tm_parity,
    "sturmian-two": _sturmian_two,
    "rauzy-three": _rauzy_three,
    "dekking-free": _dekking_free,
    "tm-sixpower": _tm_sixpower,
    "balance-185": _balance_185,
    "central-check": _central_check,
    "max-binary": _max_binary,
}


def run_reproduce(target: str, cap: int | None = None) -> RunReport:
    if target not in TARGETS:
        raise KeyError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    policy = StabilizationPolicy(cap=cap)
    start = time.perf_counter()
    try:
        observed, expected = TARGETS[target](policy)
    except (CapacityError, Inconclusive) as exc:
        return RunReport(target, "inconclusive", {"reason": str(exc)}, {}, time.perf_counter() - start)
    status = "pass" if observed == expected else "fail"
    return RunReport(target, status, observed, expected, time.perf_counter() - start)

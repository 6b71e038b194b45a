"""CSV / JSON serialization of profiles and power reports."""
from __future__ import annotations

import csv
import io
import json

from .abelian import BalanceEntry, BalanceProfile, ComplexityProfile, ProfileEntry
from .powers import CoverResult, PositionPowerReport


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _parse_flag(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"expected true/false, got {s!r}")
    return s == "true"


def _csv(header, rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def profile_to_csv(profile: ComplexityProfile) -> str:
    return _csv(
        ["n", "value", "stabilized", "L_used"],
        ([e.n, e.value, _flag(e.stabilized), e.L_used] for e in profile.entries),
    )


def profile_from_csv(text: str, spec: str = "", measure: str = "abelian") -> ComplexityProfile:
    reader = csv.DictReader(io.StringIO(text))
    entries = [
        ProfileEntry(int(r["n"]), int(r["value"]), _parse_flag(r["stabilized"]), int(r["L_used"]))
        for r in reader
    ]
    return ComplexityProfile(spec, entries, measure)


def profile_to_json(profile: ComplexityProfile) -> str:
    data = {
        "spec": profile.spec,
        "entries": [
            {"n": e.n, "value": e.value, "stabilized": e.stabilized, "L_used": e.L_used}
            for e in profile.entries
        ],
    }
    return json.dumps(data)


def profile_from_json(text: str, measure: str = "abelian") -> ComplexityProfile:
    data = json.loads(text)
    entries = [ProfileEntry(e["n"], e["value"], e["stabilized"], e["L_used"]) for e in data["entries"]]
    return ComplexityProfile(data["spec"], entries, measure)


def balance_to_csv(profile: BalanceProfile) -> str:
    k = len(profile.entries[0].spreads) if profile.entries else 0
    header = ["n", *(f"spread_{a}" for a in range(k)), "stabilized", "L_used"]
    return _csv(
        header,
        ([e.n, *e.spreads, _flag(e.stabilized), e.L_used] for e in profile.entries),
    )


def balance_from_csv(text: str, spec: str = "") -> BalanceProfile:
    reader = csv.DictReader(io.StringIO(text))
    entries = []
    for r in reader:
        spreads = tuple(int(v) for key, v in r.items() if key.startswith("spread_"))
        entries.append(
            BalanceEntry(int(r["n"]), spreads, _parse_flag(r["stabilized"]), int(r["L_used"]))
        )
    return BalanceProfile(spec, entries)


def balance_to_json(profile: BalanceProfile) -> str:
    data = {
        "spec": profile.spec,
        "C_estimate": profile.C_estimate,
        "entries": [
            {"n": e.n, "spreads": list(e.spreads), "stabilized": e.stabilized, "L_used": e.L_used}
            for e in profile.entries
        ],
    }
    return json.dumps(data)


def balance_from_json(text: str) -> BalanceProfile:
    data = json.loads(text)
    entries = [
        BalanceEntry(e["n"], tuple(e["spreads"]), e["stabilized"], e["L_used"])
        for e in data["entries"]
    ]
    return BalanceProfile(data["spec"], entries)


def power_report_to_csv(report: PositionPowerReport) -> str:
    return _csv(
        ["pos", "min_period", "k", "truncated"],
        ([pos, "" if m is None else m, k, _flag(t)] for pos, m, k, t in report.rows()),
    )


def power_report_from_csv(text: str, spec: str = "", m_max: int = 0) -> PositionPowerReport:
    rows = list(csv.DictReader(io.StringIO(text)))
    k = int(rows[0]["k"]) if rows else 0
    periods = tuple(int(r["min_period"]) if r["min_period"] else None for r in rows)
    truncated = tuple(_parse_flag(r["truncated"]) for r in rows)
    return PositionPowerReport(spec, k, len(rows), m_max, periods, truncated)


def cover_to_json(result: CoverResult) -> str:
    return json.dumps(result.to_json())


def cover_from_json(text: str) -> CoverResult:
    return CoverResult.from_json(json.loads(text))

"""Abelian powers: detection at a position, freeness scans, per-position surveys,
two-period covers and the fixed-period probe.

An abelian k-power of period m at ``pos`` is ``k`` consecutive length-``m``
blocks starting at ``pos`` that share one Parikh vector.  Every search takes an
explicit period bound; "not found" always means "not found within the bound".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .abelian import _encode, _window_columns
from .wordgen import (
    MORPHISMS,
    MorphicImage,
    PrefixBuffer,
    WordSpec,
    as_spec,
    materialize,
)


@dataclass(frozen=True)
class PowerHit:
    position: int
    period: int
    exponent: int


class PowerRun(NamedTuple):
    k: int
    truncated: bool


def block_codes(buf: PrefixBuffer, m: int) -> np.ndarray:
    """One integer per start ``i`` identifying the Parikh vector of ``w[i:i+m]``."""
    columns = _window_columns(buf, m)
    if not columns:
        return np.zeros(buf.length - m + 1, dtype=np.int64)
    encoded = _encode(columns)
    if encoded is None:
        _, inverse = np.unique(np.stack(columns, axis=1), axis=0, return_inverse=True)
        return inverse.ravel()
    return encoded[0]


def power_starts(buf: PrefixBuffer, m: int, k: int, codes: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask over ``pos in [0, L - k*m]``: an abelian k-power of period m starts there."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    n_pos = buf.length - k * m + 1
    if n_pos <= 0:
        return np.zeros(0, dtype=bool)
    codes = block_codes(buf, m) if codes is None else codes
    hits = np.ones(n_pos, dtype=bool)
    first = codes[:n_pos]
    for j in range(1, k):
        hits &= codes[j * m : j * m + n_pos] == first
    return hits


def max_abelian_power_at(buf: PrefixBuffer, pos: int, m: int) -> PowerRun:
    """Largest k with k abelian-equivalent length-m blocks from ``pos``.

    ``truncated`` is set when the run is cut by the end of the buffer rather
    than by a mismatching block.
    """
    if pos < 0 or m < 1 or pos + m > buf.length:
        raise ValueError(f"block [{pos}, {pos + m}) outside buffer of length {buf.length}")
    table = buf.prefix_sums.table
    idx = pos + m * np.arange((buf.length - pos) // m + 1)
    blocks = table[idx[1:]] - table[idx[:-1]]
    same = np.all(blocks == blocks[0], axis=1)
    if same.all():
        return PowerRun(len(blocks), True)
    return PowerRun(int(np.argmin(same)), False)


def has_power_at(buf: PrefixBuffer, pos: int, m: int, k: int) -> bool:
    if pos + k * m > buf.length:
        return False
    table = buf.prefix_sums.table
    blocks = np.diff(table[pos + m * np.arange(k + 1)], axis=0)
    return bool(np.all(blocks == blocks[0]))


def min_period_for_k(buf: PrefixBuffer, pos: int, k: int, m_max: int) -> int | None:
    """Smallest period ``m <= m_max`` of an abelian k-power starting at ``pos``."""
    if k < 2 or m_max < 1:
        raise ValueError("need k >= 2 and m_max >= 1")
    if not 0 <= pos < buf.length:
        raise ValueError(f"position {pos} outside buffer")
    for m in range(1, min(m_max, (buf.length - pos) // k) + 1):
        if has_power_at(buf, pos, m, k):
            return m
    return None


def abelian_power_violation(buf: PrefixBuffer, k: int, m_max: int) -> PowerHit | None:
    """First abelian k-power in position-major, period-ascending order."""
    if k < 2:
        raise ValueError("k must be >= 2")
    best = None
    for m in range(1, min(m_max, buf.length // k) + 1):
        hits = power_starts(buf, m, k)
        if best is not None:
            hits = hits[: best.position]
        if hits.any():
            best = PowerHit(int(np.argmax(hits)), m, k)
            if best.position == 0:
                break
    return best


def _survey_buffer(spec: WordSpec, length: int, cap: int | None) -> PrefixBuffer:
    finite = spec.finite_length
    if finite is not None:
        length = min(length, finite)
    return materialize(spec, length, cap)


@dataclass(frozen=True)
class PositionPowerReport:
    spec: str
    k: int
    N: int
    m_max: int
    min_periods: tuple[int | None, ...]
    truncated: tuple[bool, ...]
    buffer: PrefixBuffer | None = field(default=None, repr=False, compare=False)

    @property
    def uncovered(self) -> list[int]:
        return [pos for pos, m in enumerate(self.min_periods) if m is None]

    @property
    def all_covered(self) -> bool:
        return not self.uncovered

    def rows(self):
        for pos, (m, trunc) in enumerate(zip(self.min_periods, self.truncated)):
            yield pos, m, self.k, trunc


def position_coverage_report(
    spec: WordSpec | str, k: int, N: int, m_max: int, cap: int | None = None
) -> PositionPowerReport:
    """Minimal abelian k-power period (``<= m_max``) at each position ``< N``."""
    if k < 2 or N < 1 or m_max < 1:
        raise ValueError("need k >= 2, N >= 1, m_max >= 1")
    spec = as_spec(spec)
    buf = _survey_buffer(spec, N + k * m_max, cap)
    N = min(N, buf.length)
    periods = np.zeros(N, dtype=np.int64)
    for m in range(1, m_max + 1):
        hits = power_starts(buf, m, k)[:N]
        fresh = (periods[: len(hits)] == 0) & hits
        periods[: len(hits)][fresh] = m
        if periods.all():
            break
    min_periods = tuple(int(m) if m else None for m in periods)
    truncated = tuple(pos + k * m_max > buf.length for pos in range(N))
    return PositionPowerReport(str(spec), k, N, m_max, min_periods, truncated, buf)


@dataclass(frozen=True)
class CoverResult:
    l1: int | None
    l2: int | None
    uncovered: tuple[int, ...] = ()

    @property
    def found(self) -> bool:
        return self.l1 is not None

    def to_json(self) -> dict:
        return {"l1": self.l1, "l2": self.l2, "uncovered": sorted(self.uncovered)}

    @classmethod
    def from_json(cls, data: dict) -> "CoverResult":
        return cls(data["l1"], data["l2"], tuple(sorted(data["uncovered"])))


def works_matrix(report: PositionPowerReport, reading: str = "start") -> np.ndarray:
    """``M[m-1, pos]``: an abelian k-power of period m starts at (``"start"``) or
    spans (``"cover"``) position ``pos``."""
    if reading not in ("start", "cover"):
        raise ValueError(f"unknown reading {reading!r}")
    buf, k, N = report.buffer, report.k, report.N
    if buf is None:
        raise ValueError("report carries no buffer")
    works = np.zeros((report.m_max, N), dtype=bool)
    for m in range(1, report.m_max + 1):
        hits = power_starts(buf, m, k)[:N]
        if reading == "start":
            works[m - 1, : len(hits)] = hits
        else:
            padded = np.zeros(N, dtype=bool)
            padded[: len(hits)] = hits
            counts = np.concatenate(([0], np.cumsum(padded)))
            pos = np.arange(N)
            lo = np.maximum(pos - k * m + 1, 0)
            works[m - 1] = counts[pos + 1] - counts[lo] > 0
    return works


def two_period_cover(report: PositionPowerReport, reading: str = "start") -> CoverResult:
    """Lexicographically least ``(l1, l2)``, ``l1 <= l2``, covering every position.

    Without a covering pair, returns ``None`` periods and the positions left
    uncovered by the best pair.
    """
    works = works_matrix(report, reading)
    candidates = np.flatnonzero(works.any(axis=1))
    if len(candidates) == 0:
        return CoverResult(None, None, tuple(range(report.N)))
    sub = works[candidates]
    for i, row in enumerate(sub):
        missing = ~row
        ok = sub[i:, missing].all(axis=1) if missing.any() else np.ones(len(sub) - i, bool)
        if ok.any():
            j = i + int(np.argmax(ok))
            return CoverResult(int(candidates[i]) + 1, int(candidates[j]) + 1, ())
    as_int = sub.astype(np.int64)
    both = as_int @ as_int.T
    single = as_int.sum(axis=1)
    union = single[:, None] + single[None, :] - both
    union[np.tril_indices(len(sub), -1)] = -1
    i, j = np.unravel_index(int(np.argmax(union)), union.shape)
    uncovered = np.flatnonzero(~(sub[i] | sub[j]))
    return CoverResult(None, None, tuple(int(p) for p in uncovered))


def fixed_period_falsifier(
    spec: WordSpec | str, m: int, N: int, k_cap: int, cap: int | None = None
) -> int | None:
    """First ``pos < N`` without an abelian ``k_cap``-power of period ``m``.

    ``None`` is inconclusive: every surveyed position reached ``k_cap``.
    """
    if m < 1 or k_cap < 2 or N < 1:
        raise ValueError("need m >= 1, k_cap >= 2, N >= 1")
    spec = as_spec(spec)
    buf = _survey_buffer(spec, N + k_cap * m, cap)
    hits = power_starts(buf, m, k_cap)[:N]
    if len(hits) < min(N, buf.length):
        return len(hits)
    misses = np.flatnonzero(~hits)
    return int(misses[0]) if len(misses) else None


@dataclass(frozen=True)
class DoublingReport:
    checked: int
    failures: tuple[tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.failures


def period_doubling_check(
    spec: WordSpec | str, k: int, N: int, m_max: int, cap: int | None = None
) -> DoublingReport:
    """Check that a k-power of period l at j maps to one of period 2l at 2j
    under ``0 -> 00, 1 -> 01``."""
    spec = as_spec(spec)
    if spec.alphabet_size > 2:
        raise ValueError("period doubling check needs a binary word")
    doubling = MORPHISMS["doubling"]
    x = _survey_buffer(spec, N + k * m_max, cap)
    image = doubling.apply(x.letters)
    y = PrefixBuffer(image, MorphicImage(spec, doubling), 2)
    checked, failures = 0, []
    for m in range(1, m_max + 1):
        hx = np.flatnonzero(power_starts(x, m, k)[:N])
        if not len(hx):
            continue
        hy = power_starts(y, 2 * m, k)
        ok = hy[2 * hx]
        checked += len(hx)
        failures.extend((int(j), m) for j in hx[~ok])
    return DoublingReport(checked, tuple(sorted(failures)))

"""Parikh vectors, window spectra and abelian complexity / balance profiles.

The abelian complexity of an infinite word is estimated from finite prefixes.
A :class:`StabilizationPolicy` starts at ``max(64, 8 * n_max)`` letters and
doubles the prefix until every per-length measurement repeats across two
successive rounds.  Each measurement here is monotone in the prefix (more
windows can only add Parikh classes or widen spreads), so equal values across
rounds means identical underlying sets.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

from .wordgen import CapacityError, PrefixBuffer, Word, WordSpec, as_letters, as_spec, default_cap, materialize

ParikhVector = tuple[int, ...]


def parikh(w: Word, k: int | None = None) -> ParikhVector:
    """Occurrence counts ``(|w|_0, ..., |w|_{k-1})``."""
    letters = as_letters(w)
    if k is None:
        k = max(letters) + 1 if letters else 1
    counts = Counter(letters)
    if counts and max(counts) >= k:
        raise ValueError(f"letter {max(counts)} outside alphabet of size {k}")
    return tuple(counts.get(a, 0) for a in range(k))


def abelian_equivalent(u: Word, v: Word) -> bool:
    u, v = as_letters(u), as_letters(v)
    return len(u) == len(v) and Counter(u) == Counter(v)


class ParikhPrefixSums:
    """Cumulative Parikh vectors: ``table[i]`` is the Parikh vector of ``w[:i]``."""

    def __init__(self, table: np.ndarray):
        self.table = table
        self.table.flags.writeable = False

    @classmethod
    def from_letters(cls, letters: bytes, k: int) -> "ParikhPrefixSums":
        arr = np.frombuffer(letters, dtype=np.uint8)
        table = np.zeros((len(arr) + 1, k), dtype=np.int32)
        if len(arr):
            if int(arr.max()) >= k:
                raise ValueError("letter outside alphabet")
            onehot = np.zeros((len(arr), k), dtype=np.int32)
            onehot[np.arange(len(arr)), arr] = 1
            np.cumsum(onehot, axis=0, out=table[1:])
        return cls(table)

    @property
    def length(self) -> int:
        return self.table.shape[0] - 1

    @cached_property
    def columns(self) -> list[np.ndarray]:
        """Per-letter cumulative counts as contiguous 1-d arrays."""
        return [np.ascontiguousarray(self.table[:, a]) for a in range(self.table.shape[1])]

    def window(self, i: int, j: int) -> ParikhVector:
        """Parikh vector of ``w[i:j]`` in O(k)."""
        if not 0 <= i <= j <= self.length:
            raise IndexError(f"window [{i}, {j}) outside [0, {self.length}]")
        return tuple(int(c) for c in self.table[j] - self.table[i])

    def windows(self, n: int) -> np.ndarray:
        """Parikh vectors of all length-``n`` windows, one row per start position."""
        if not 0 <= n <= self.length:
            raise ValueError(f"window length {n} outside [0, {self.length}]")
        return self.table[n:] - self.table[: self.length + 1 - n]


def _encode(columns: list[np.ndarray]):
    """Mixed-radix codes for the rows of a matrix given column-wise.

    Returns ``(codes, lows, spans)`` or ``None`` if the radix would overflow.
    """
    codes = np.zeros(len(columns[0]), dtype=np.int64)
    lows, spans, total = [], [], 1
    for col in columns:
        lo = int(col.min())
        span = int(col.max()) - lo + 1
        total *= span
        if total > 1 << 62:
            return None
        codes = codes * span + (col - lo)
        lows.append(lo)
        spans.append(span)
    return codes, lows, spans


def _distinct_codes(codes: np.ndarray, total: int) -> np.ndarray:
    if total <= max(1 << 16, 4 * len(codes)):
        seen = np.zeros(total, dtype=bool)
        seen[codes] = True
        return np.flatnonzero(seen)
    return np.unique(codes)


def _distinct_rows(columns: list[np.ndarray]) -> np.ndarray:
    """Distinct rows (sorted) of the matrix whose equal-length columns are given."""
    encoded = _encode(columns)
    if encoded is None:
        return np.unique(np.stack(columns, axis=1), axis=0)
    codes, lows, spans = encoded
    distinct = _distinct_codes(codes, math.prod(spans))
    rows = np.empty((len(distinct), len(columns)), dtype=np.int64)
    for j in range(len(columns) - 1, -1, -1):
        distinct, rows[:, j] = np.divmod(distinct, spans[j])
        rows[:, j] += lows[j]
    return rows


def _count_distinct(columns: list[np.ndarray]) -> int:
    if not columns:
        return 1
    encoded = _encode(columns)
    if encoded is None:
        return len(np.unique(np.stack(columns, axis=1), axis=0))
    codes, _, spans = encoded
    return len(_distinct_codes(codes, math.prod(spans)))


def _window_columns(buf: PrefixBuffer, n: int) -> list[np.ndarray]:
    # windows share one length, so the last letter's count is redundant
    return [col[n:] - col[: len(col) - n] for col in buf.prefix_sums.columns[:-1]]


def _check_n(buf: PrefixBuffer, n: int):
    if not 1 <= n <= buf.length:
        raise ValueError(f"window length {n} outside [1, {buf.length}]")


def window_spectrum(buf: PrefixBuffer, n: int) -> frozenset[ParikhVector]:
    """Set of Parikh vectors of the length-``n`` windows of ``buf``."""
    return frozenset(sorted_spectrum(buf, n))


def spectrum_size(buf: PrefixBuffer, n: int) -> int:
    """``len(window_spectrum(buf, n))`` without building the set."""
    _check_n(buf, n)
    return _count_distinct(_window_columns(buf, n))


def sorted_spectrum(buf: PrefixBuffer, n: int) -> list[ParikhVector]:
    _check_n(buf, n)
    columns = _window_columns(buf, n)
    if not columns:
        return [(n,)]
    rows = _distinct_rows(columns)
    return [(*map(int, row), n - int(row.sum())) for row in rows]


def max_abelian_complexity(n: int, k: int) -> int:
    """Number of Parikh vectors of length-``n`` words over ``k`` letters."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return math.comb(n + k - 1, k - 1)


def _all_window_columns(buf: PrefixBuffer, n: int) -> list[np.ndarray]:
    return [col[n:] - col[: len(col) - n] for col in buf.prefix_sums.columns]


def spreads(buf: PrefixBuffer, n: int) -> tuple[int, ...]:
    """Per-letter ``max |u|_a - min |u|_a`` over the length-``n`` windows."""
    _check_n(buf, n)
    return tuple(int(c.max() - c.min()) for c in _all_window_columns(buf, n))


def prefix_deviation(buf: PrefixBuffer, n: int) -> int:
    """Max ``||Psi(prefix_n) - Psi(V)||_inf`` over length-``n`` windows ``V``."""
    _check_n(buf, n)
    return max(int(max(c.max() - c[0], c[0] - c.min())) for c in _all_window_columns(buf, n))


# -- stabilization -------------------------------------------------------------


@dataclass(frozen=True)
class StabilizationPolicy:
    """Prefix-doubling policy; ``cap`` defaults to the global capacity cap."""

    start_length: int | None = None
    cap: int | None = None

    def initial_length(self, n_max: int) -> int:
        if self.start_length is not None:
            return self.start_length
        return max(64, 8 * n_max)

    def effective_cap(self) -> int:
        return default_cap() if self.cap is None else self.cap


@dataclass(frozen=True)
class Stabilized:
    values: list
    flags: list[bool]
    length: int

    @property
    def stabilized(self) -> bool:
        return all(self.flags)


def stabilize(
    spec: WordSpec,
    n_max: int,
    measure: Callable[[PrefixBuffer, int], Hashable],
    policy: StabilizationPolicy | None = None,
    ns: Sequence[int] | None = None,
) -> Stabilized:
    """Run ``measure(buf, n)`` for each ``n`` on doubling prefixes until it repeats.

    Finite words are measured once on the whole word.  When the cap stops the
    doubling, each entry is flagged by whether it repeated in the last round.
    """
    policy = policy or StabilizationPolicy()
    ns = list(range(1, n_max + 1)) if ns is None else list(ns)
    cap = policy.effective_cap()
    finite = spec.finite_length
    length = policy.initial_length(n_max)
    previous = None
    while True:
        used = min(length, cap) if finite is None else min(length, finite, cap)
        if ns and max(ns) > used:
            if finite is not None and used == finite:
                raise ValueError(f"{spec} has {finite} letters, cannot measure n={max(ns)}")
            length *= 2
            if length > cap:
                raise CapacityError(f"n={max(ns)} exceeds the capacity cap {cap}")
            continue
        buf = materialize(spec, used, cap)
        current = [measure(buf, n) for n in ns]
        if finite is not None and used == finite:
            return Stabilized(current, [True] * len(ns), used)
        if previous is not None and current == previous:
            return Stabilized(current, [True] * len(ns), used)
        if used >= cap:
            if previous is None:
                flags = [False] * len(ns)
            else:
                flags = [p == c for p, c in zip(previous, current)]
            return Stabilized(current, flags, used)
        previous = current
        length = used * 2


# -- profiles ------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileEntry:
    n: int
    value: int
    stabilized: bool
    L_used: int


@dataclass
class ComplexityProfile:
    """Per-length integer measurements; ``measure`` names what was counted."""

    spec: str
    entries: list[ProfileEntry] = field(default_factory=list)
    measure: str = "abelian"

    @property
    def values(self) -> list[int]:
        return [e.value for e in self.entries]

    @property
    def stabilized(self) -> bool:
        return all(e.stabilized for e in self.entries)

    def value(self, n: int) -> int:
        for e in self.entries:
            if e.n == n:
                return e.value
        raise KeyError(n)

    def as_dict(self) -> dict[int, int]:
        return {e.n: e.value for e in self.entries}


def _profile(spec, n_max, measure, policy, name) -> ComplexityProfile:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = as_spec(spec)
    result = stabilize(spec, n_max, measure, policy)
    entries = [
        ProfileEntry(n, value, flag, result.length)
        for n, value, flag in zip(range(1, n_max + 1), result.values, result.flags)
    ]
    return ComplexityProfile(str(spec), entries, name)


def abelian_complexity_profile(
    spec: WordSpec | str, n_max: int, policy: StabilizationPolicy | None = None
) -> ComplexityProfile:
    """Number of abelian classes of length-``n`` factors for ``n = 1..n_max``.

    Values are lower bounds for the infinite word, exact once the prefix holds
    every factor of the probed lengths.
    """
    return _profile(spec, n_max, spectrum_size, policy, "abelian")


def prefix_factor_balance(
    spec: WordSpec | str, n_max: int, policy: StabilizationPolicy | None = None
) -> ComplexityProfile:
    """Per-``n`` max infinity-norm distance from the prefix's Parikh vector to any factor's."""
    return _profile(spec, n_max, prefix_deviation, policy, "prefix_deviation")


@dataclass(frozen=True)
class BalanceEntry:
    n: int
    spreads: tuple[int, ...]
    stabilized: bool
    L_used: int


@dataclass
class BalanceProfile:
    spec: str
    entries: list[BalanceEntry] = field(default_factory=list)

    @property
    def C_estimate(self) -> int:
        return max((max(e.spreads) for e in self.entries), default=0)

    @property
    def stabilized(self) -> bool:
        return all(e.stabilized for e in self.entries)

    def spread(self, n: int, a: int) -> int:
        return self.entries[n - 1].spreads[a]


def balance_profile(
    spec: WordSpec | str, n_max: int, policy: StabilizationPolicy | None = None
) -> BalanceProfile:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = as_spec(spec)
    result = stabilize(spec, n_max, spreads, policy)
    entries = [
        BalanceEntry(n, s, flag, result.length)
        for n, s, flag in zip(range(1, n_max + 1), result.values, result.flags)
    ]
    return BalanceProfile(str(spec), entries)


def periodicity_probe(
    spec: WordSpec | str, p_max: int, policy: StabilizationPolicy | None = None
) -> int | None:
    """Least ``p <= p_max`` with a single abelian class at length ``p``.

    ``None`` only means no such ``p`` was found; it does not prove aperiodicity.
    """
    profile = abelian_complexity_profile(spec, p_max, policy)
    return next((e.n for e in profile.entries if e.value == 1), None)

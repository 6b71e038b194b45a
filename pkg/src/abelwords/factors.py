"""Classical factor analysis: factor spectra, subword complexity, right special
factors, and the Central(n) check for the Tribonacci word."""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations

import numpy as np

from .abelian import (
    ComplexityProfile,
    ParikhVector,
    ProfileEntry,
    StabilizationPolicy,
    parikh,
    sorted_spectrum,
    stabilize,
)
from .wordgen import PrefixBuffer, WordSpec, as_spec, format_word, tribonacci

_MODULI = (2_147_483_647, 2_147_483_629)
_BASES = (911_382_323, 972_663_749)


@dataclass(frozen=True)
class FactorSpectrum:
    n: int
    factors: frozenset[bytes]

    def __len__(self):
        return len(self.factors)


def factor_spectrum(buf: PrefixBuffer, n: int) -> FactorSpectrum:
    if not 0 <= n <= buf.length:
        raise ValueError(f"factor length {n} outside [0, {buf.length}]")
    w = buf.letters
    return FactorSpectrum(n, frozenset(w[i : i + n] for i in range(buf.length - n + 1)))


def factor_count(buf: PrefixBuffer, n: int) -> int:
    return len(factor_spectrum(buf, n))


def factor_complexity_profile(
    spec: WordSpec | str, n_max: int, policy: StabilizationPolicy | None = None
) -> ComplexityProfile:
    """Number of distinct length-``n`` factors of the stabilized prefix."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = as_spec(spec)
    result = stabilize(spec, n_max, factor_count, policy)
    entries = [
        ProfileEntry(n, v, f, result.length)
        for n, v, f in zip(range(1, n_max + 1), result.values, result.flags)
    ]
    return ComplexityProfile(str(spec), entries, "factor")


def _powers(base: int, n: int, p: int) -> np.ndarray:
    out = np.empty(max(n, 1), dtype=np.int64)
    out[0] = 1
    filled = 1
    while filled < n:
        step = min(filled, n - filled)
        out[filled : filled + step] = out[:step] * pow(base, filled, p) % p
        filled += step
    return out[:n]


class WindowHasher:
    """Double polynomial hashes of all windows of a buffer, O(1) per window.

    Hashes only bucket windows; callers confirm equality on the letters.
    """

    def __init__(self, buf: PrefixBuffer):
        self.buf = buf

    @cached_property
    def _tables(self):
        arr = self.buf.array.astype(np.int64) + 1
        n = len(arr)
        tables = []
        for base, p in zip(_BASES, _MODULI):
            pw = _powers(base, n, p)
            inv = _powers(pow(base, -1, p), n, p)
            sums = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(arr * pw % p, out=sums[1:])
            tables.append((sums % p, inv, p))
        return tables

    def keys(self, starts: np.ndarray, m: int) -> np.ndarray:
        key = np.zeros(len(starts), dtype=np.int64)
        for sums, inv, p in self._tables:
            h = (sums[starts + m] - sums[starts]) % p * inv[starts] % p
            key = key * p + h
        return key


def right_special_in(
    buf: PrefixBuffer, n: int, hasher: WindowHasher | None = None
) -> dict[bytes, frozenset[int]]:
    """Length-``n`` windows followed (inside ``buf``) by at least two distinct letters."""
    if not 0 <= n < buf.length:
        raise ValueError(f"factor length {n} outside [0, {buf.length})")
    w = buf.letters
    if n == 0:
        letters = frozenset(w)
        return {b"": letters} if len(letters) >= 2 else {}
    hasher = hasher or WindowHasher(buf)
    starts = np.arange(buf.length - n)
    keys = hasher.keys(starts, n)
    ext = buf.array[starts + n]
    order = np.lexsort((ext, keys))
    k_sorted, e_sorted = keys[order], ext[order]
    fresh = np.ones(len(order), dtype=bool)
    fresh[1:] = (k_sorted[1:] != k_sorted[:-1]) | (e_sorted[1:] != e_sorted[:-1])
    pair_keys = k_sorted[fresh]
    candidates = np.unique(pair_keys[1:][pair_keys[1:] == pair_keys[:-1]])
    if len(candidates) == 0:
        return {}
    extensions: dict[bytes, set[int]] = {}
    for i in starts[np.isin(keys, candidates)]:
        extensions.setdefault(w[i : i + n], set()).add(w[i + n])
    return {u: frozenset(e) for u, e in extensions.items() if len(e) >= 2}


def right_special_factors(
    spec: WordSpec | str, n: int, policy: StabilizationPolicy | None = None
) -> dict[bytes, frozenset[int]]:
    """Right special factors of length ``n`` with their extension letters."""
    spec = as_spec(spec)
    result = stabilize(
        spec, n + 1, lambda buf, _: right_special_in(buf, n), policy, ns=[n + 1]
    )
    return result.values[0]


def _inf_norm(u, v) -> int:
    return max(abs(a - b) for a, b in zip(u, v))


@dataclass(frozen=True)
class CentralReport:
    n: int
    special_factor: bytes | None
    central: tuple[ParikhVector, ...]
    spectrum: tuple[ParikhVector, ...]
    max_pairwise_norm: int
    verified: bool = True

    @property
    def central_included(self) -> bool:
        return len(self.central) == 3 and set(self.central) <= set(self.spectrum)

    @property
    def within_seven(self) -> bool:
        return len(self.spectrum) <= 7

    @property
    def diameter_ok(self) -> bool:
        return self.max_pairwise_norm <= 2

    @property
    def ok(self) -> bool:
        return self.central_included and self.within_seven and self.diameter_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "special_factor": None if self.special_factor is None else format_word(self.special_factor),
            "central": [list(v) for v in self.central],
            "spectrum": [list(v) for v in self.spectrum],
            "max_pairwise_norm": self.max_pairwise_norm,
            "central_included": self.central_included,
            "within_seven": self.within_seven,
            "diameter_ok": self.diameter_ok,
            "verified": self.verified,
        }


def central_report(buf: PrefixBuffer, n: int, hasher: WindowHasher | None = None) -> CentralReport:
    """Central(n) and the spectrum of length-``n`` windows of a ternary buffer."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = buf.alphabet_size
    special = right_special_in(buf, n - 1, hasher)
    spectrum = tuple(sorted_spectrum(buf, n))
    diameter = max((_inf_norm(u, v) for u, v in combinations(spectrum, 2)), default=0)
    if len(special) != 1:
        return CentralReport(n, None, (), spectrum, diameter, verified=False)
    (factor,) = special
    base = parikh(factor, k)
    central = tuple(
        sorted(tuple(c + (a == b) for b, c in enumerate(base)) for a in range(k))
    )
    return CentralReport(n, factor, central, spectrum, diameter)


def _stabilized_reports(ns, policy) -> list[CentralReport]:
    hashers: dict[int, WindowHasher] = {}

    def measure(buf, n):
        hasher = hashers.setdefault(buf.length, WindowHasher(buf))
        return central_report(buf, n, hasher)

    result = stabilize(tribonacci(), max(ns), measure, policy, ns=ns)
    return [
        r if flag else replace(r, verified=False) for r, flag in zip(result.values, result.flags)
    ]


def tribonacci_central_check(n: int, policy: StabilizationPolicy | None = None) -> CentralReport:
    return _stabilized_reports([n], policy)[0]


def tribonacci_central_checks(
    n_max: int, policy: StabilizationPolicy | None = None
) -> list[CentralReport]:
    """Central reports for ``n = 1..n_max`` over one shared stabilized prefix."""
    return _stabilized_reports(list(range(1, n_max + 1)), policy)

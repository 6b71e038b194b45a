"""Morphisms, word specifications and materialized prefixes of infinite words.

Letters are small integers ``0..k-1`` stored in :class:`bytes`.  Text I/O maps
each letter to one character: ``0-9`` then ``a-z`` then ``A-Z``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import count
from typing import Iterable, Sequence, Union

import numpy as np

DEFAULT_CAP = 10**8
CAP_ENV_VAR = "ABELWORDS_CAP"
MAX_ALPHABET = 255

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_CHAR_TO_LETTER = {c: i for i, c in enumerate(_DIGITS)}

Word = Union[bytes, str, Sequence[int]]


class WordError(ValueError):
    """Malformed word, morphism or spec."""


class MorphismDomainError(WordError):
    """A letter outside the domain of a morphism was encountered."""


class FiniteWordError(WordError):
    """More letters were requested than a finite word has."""


class CapacityError(RuntimeError):
    """Materialization would exceed the capacity cap."""


def default_cap() -> int:
    value = os.environ.get(CAP_ENV_VAR)
    return int(value) if value else DEFAULT_CAP


def parse_word(text: str) -> bytes:
    try:
        return bytes(_CHAR_TO_LETTER[c] for c in text)
    except KeyError as exc:
        raise WordError(f"invalid letter {exc.args[0]!r} in {text!r}") from None


def format_word(letters: Iterable[int]) -> str:
    return "".join(_DIGITS[a] for a in letters)


def as_letters(w: Word) -> bytes:
    if isinstance(w, str):
        return parse_word(w)
    return bytes(w)


@dataclass(frozen=True)
class Morphism:
    """Non-erasing substitution; ``images[a]`` is the image of letter ``a``."""

    images: tuple[bytes, ...]
    alphabet_out: int = 0
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        images = tuple(as_letters(img) for img in self.images)
        if not images:
            raise WordError("morphism needs at least one rule")
        if any(len(img) == 0 for img in images):
            raise WordError("erasing morphisms are not supported")
        out = max(max(img) for img in images) + 1
        alphabet_out = max(self.alphabet_out, out)
        if len(images) > MAX_ALPHABET or alphabet_out > MAX_ALPHABET:
            raise WordError("alphabet too large")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "alphabet_out", alphabet_out)

    @classmethod
    def parse(cls, text: str, name: str | None = None) -> "Morphism":
        """Parse ``0->01;1->10`` (rules may come in any order)."""
        rules = {}
        for rule in filter(None, (r.strip() for r in text.split(";"))):
            lhs, sep, rhs = rule.partition("->")
            lhs, rhs = lhs.strip(), rhs.strip()
            if not sep or len(lhs) != 1 or not rhs:
                raise WordError(f"bad morphism rule {rule!r}")
            letter = parse_word(lhs)[0]
            if letter in rules:
                raise WordError(f"letter {lhs!r} defined twice")
            rules[letter] = parse_word(rhs)
        if not rules or sorted(rules) != list(range(len(rules))):
            raise WordError(f"morphism {text!r} must define letters 0..k-1")
        return cls(tuple(rules[a] for a in range(len(rules))), name=name)

    @property
    def alphabet_in(self) -> int:
        return len(self.images)

    def prolongable_on(self, a: int) -> bool:
        return 0 <= a < self.alphabet_in and len(self.images[a]) >= 2 and self.images[a][0] == a

    @cached_property
    def _table(self):
        width = max(len(img) for img in self.images)
        table = np.zeros((self.alphabet_in, width), dtype=np.uint8)
        for a, img in enumerate(self.images):
            table[a, : len(img)] = np.frombuffer(img, dtype=np.uint8)
        lengths = np.array([len(img) for img in self.images], dtype=np.int64)
        return table, lengths

    def apply(self, w: bytes) -> bytes:
        if not w:
            return b""
        src = np.frombuffer(w, dtype=np.uint8)
        if int(src.max()) >= self.alphabet_in:
            bad = next(a for a in w if a >= self.alphabet_in)
            raise MorphismDomainError(f"letter {format_word([bad])!r} not in morphism domain")
        table, lengths = self._table
        lens = lengths[src]
        starts = np.cumsum(lens) - lens
        letters = np.repeat(src, lens)
        offsets = np.arange(int(lens.sum())) - np.repeat(starts, lens)
        return table[letters, offsets].tobytes()

    def text(self) -> str:
        return ";".join(f"{_DIGITS[a]}->{format_word(img)}" for a, img in enumerate(self.images))

    def __str__(self):
        return self.name or self.text()


def apply_morphism(m: Morphism, w: Word):
    """Image of ``w`` under ``m``; returns ``str`` for ``str`` input, else ``bytes``."""
    image = m.apply(as_letters(w))
    return format_word(image) if isinstance(w, str) else image


MORPHISMS = {
    "mu": Morphism.parse("0->01;1->10", "mu"),
    "tau": Morphism.parse("0->01;1->02;2->0", "tau"),
    "rauzy": Morphism.parse("0->012;1->021", "rauzy"),
    "f3": Morphism.parse("0->012;1->111;2->222", "f3"),
    "g3": Morphism.parse("0->0;1->1;2->0", "g3"),
    "delta": Morphism.parse("0->00;1->11", "delta"),
    "dekking": Morphism.parse("0->011;1->0001", "dekking"),
    "doubling": Morphism.parse("0->00;1->01", "doubling"),
}


def get_morphism(text: str) -> Morphism:
    text = text.strip()
    if text in MORPHISMS:
        return MORPHISMS[text]
    return Morphism.parse(text)


class WordSpec:
    """Declarative description of a right-infinite (or, for literals, finite) word."""

    def _generate(self, length: int) -> bytes:
        """Return at least ``length`` letters (or the whole finite word)."""
        raise NotImplementedError

    @property
    def alphabet_size(self) -> int:
        raise NotImplementedError

    @property
    def finite_length(self) -> int | None:
        return None

    def materialize(self, length: int, cap: int | None = None) -> "PrefixBuffer":
        return materialize(self, length, cap)


@dataclass(frozen=True)
class MorphicFixedPoint(WordSpec):
    morphism: Morphism
    seed: int = 0

    def __post_init__(self):
        if not self.morphism.prolongable_on(self.seed):
            raise WordError(f"{self.morphism} is not prolongable on {self.seed}")
        if self.morphism.alphabet_out > self.morphism.alphabet_in:
            raise WordError("fixed points need an endomorphism")

    def _generate(self, length):
        w = bytes([self.seed])
        while len(w) < length:
            w = self.morphism.apply(w[:length])
        return w

    @property
    def alphabet_size(self):
        return self.morphism.alphabet_in

    def __str__(self):
        return f"fix({self.morphism},{_DIGITS[self.seed]})"


@dataclass(frozen=True)
class SturmianDirective(WordSpec):
    """Characteristic Sturmian word of the directive ``preperiod + period^inf``.

    Standard sequences: ``s[-1] = 1``, ``s[0] = 0``, ``s[n] = s[n-1]^d[n] s[n-2]``.
    """

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(d) for d in self.preperiod))
        object.__setattr__(self, "period", tuple(int(d) for d in self.period))
        if not self.period:
            raise WordError("directive period must be nonempty")
        if any(d < 1 for d in self.preperiod + self.period):
            raise WordError("directive entries must be >= 1")

    def directive(self):
        yield from self.preperiod
        while True:
            yield from self.period

    def _generate(self, length):
        older, newer = b"\x01", b"\x00"
        for d in self.directive():
            if len(newer) >= length:
                return newer
            older, newer = newer, newer * d + older

    @property
    def alphabet_size(self):
        return 2

    def __str__(self):
        per = ",".join(map(str, self.period))
        if self.preperiod:
            return f"sturmian({','.join(map(str, self.preperiod))};{per})"
        return f"sturmian({per})"


@dataclass(frozen=True)
class Champernowne(WordSpec):
    """Binary numerals of 0, 1, 2, ... concatenated without leading zeros."""

    def _generate(self, length):
        parts, total = [], 0
        for i in count():
            numeral = format(i, "b")
            parts.append(numeral)
            total += len(numeral)
            if total >= length:
                break
        return "".join(parts).encode("ascii").translate(_ASCII_BITS)

    @property
    def alphabet_size(self):
        return 2

    def __str__(self):
        return "champernowne"


_ASCII_BITS = bytes.maketrans(b"01", b"\x00\x01")


@dataclass(frozen=True)
class UltimatelyPeriodic(WordSpec):
    u: bytes = b""
    v: bytes = b"\x00"

    def __post_init__(self):
        object.__setattr__(self, "u", as_letters(self.u))
        object.__setattr__(self, "v", as_letters(self.v))
        if not self.v:
            raise WordError("period word v must be nonempty")

    def _generate(self, length):
        reps = max(0, length - len(self.u)) // len(self.v) + 1
        return self.u + self.v * reps

    @property
    def alphabet_size(self):
        return max(self.u + self.v) + 1

    def __str__(self):
        return f"up({format_word(self.u)},{format_word(self.v)})"


@dataclass(frozen=True)
class Literal(WordSpec):
    """A finite word; analyses treat it as the complete word."""

    w: bytes = b""

    def __post_init__(self):
        object.__setattr__(self, "w", as_letters(self.w))

    def _generate(self, length):
        return self.w

    @property
    def alphabet_size(self):
        return max(self.w) + 1 if self.w else 1

    @property
    def finite_length(self):
        return len(self.w)

    def __str__(self):
        return f"lit({format_word(self.w)})"


@dataclass(frozen=True)
class MorphicImage(WordSpec):
    inner: WordSpec
    morphism: Morphism

    def __post_init__(self):
        if self.inner.alphabet_size > self.morphism.alphabet_in:
            raise MorphismDomainError(f"{self.morphism} cannot be applied to {self.inner}")

    def _generate(self, length):
        shortest = min(len(img) for img in self.morphism.images)
        inner = self.inner._generate(length // shortest + 1)
        return self.morphism.apply(inner[: length // shortest + 1])

    @property
    def alphabet_size(self):
        return self.morphism.alphabet_out

    @property
    def finite_length(self):
        inner = self.inner.finite_length
        if inner is None:
            return None
        return len(self.morphism.apply(self.inner._generate(inner)))

    def __str__(self):
        return f"img({self.morphism},{self.inner})"


@dataclass(frozen=True)
class Prepend(WordSpec):
    prefix: bytes
    inner: WordSpec

    def __post_init__(self):
        object.__setattr__(self, "prefix", as_letters(self.prefix))

    def _generate(self, length):
        return self.prefix + self.inner._generate(max(0, length - len(self.prefix)))

    @property
    def alphabet_size(self):
        return max(max(self.prefix, default=0) + 1, self.inner.alphabet_size)

    @property
    def finite_length(self):
        inner = self.inner.finite_length
        return None if inner is None else inner + len(self.prefix)

    def __str__(self):
        return f"pre({format_word(self.prefix)},{self.inner})"


@dataclass(frozen=True)
class PrefixBuffer:
    """The length-``length`` prefix of the word denoted by ``spec``."""

    letters: bytes
    spec: WordSpec
    alphabet_size: int

    @property
    def length(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self.letters)

    @cached_property
    def array(self) -> np.ndarray:
        return np.frombuffer(self.letters, dtype=np.uint8)

    @cached_property
    def prefix_sums(self):
        from .abelian import ParikhPrefixSums

        return ParikhPrefixSums.from_letters(self.letters, self.alphabet_size)


def materialize(spec: WordSpec, length: int, cap: int | None = None) -> PrefixBuffer:
    """Exactly the first ``length`` letters of ``spec``."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    cap = default_cap() if cap is None else cap
    if length > cap:
        raise CapacityError(f"requested {length} letters, cap is {cap}")
    finite = spec.finite_length
    if finite is not None and length > finite:
        raise FiniteWordError(f"{spec} has only {finite} letters, {length} requested")
    letters = spec._generate(length)[:length] if length else b""
    return PrefixBuffer(letters, spec, spec.alphabet_size)


# -- text format -------------------------------------------------------------

NAMED_SPECS = {
    "thue-morse": "fix(mu,0)",
    "tm": "fix(mu,0)",
    "tribonacci": "fix(tau,0)",
    "fibonacci": "sturmian(1)",
    "dekking-word": "fix(dekking,0)",
    "extremal": "img(g3,fix(f3,0))",
}


def _split_top(body: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, c in enumerate(body):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise WordError(f"unbalanced parentheses in {body!r}")
        elif c == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if depth:
        raise WordError(f"unbalanced parentheses in {body!r}")
    parts.append(body[start:])
    return [p.strip() for p in parts]


def _directive(text: str) -> tuple[int, ...]:
    items = [t.strip() for t in text.split(",")]
    items = [t for t in items if t and t not in ("...", "…")]
    try:
        return tuple(int(t) for t in items)
    except ValueError:
        raise WordError(f"bad directive {text!r}") from None


def parse_spec(text: str) -> WordSpec:
    """Parse the textual spec format, e.g. ``img(0->012;1->021,fix(mu,0))``."""
    text = text.strip()
    if text in NAMED_SPECS:
        return parse_spec(NAMED_SPECS[text])
    if text == "champernowne":
        return Champernowne()
    head, paren, rest = text.partition("(")
    if not paren or not rest.endswith(")"):
        raise WordError(f"cannot parse spec {text!r}")
    head, body = head.strip(), rest[:-1]
    if head == "sturmian":
        pre, semi, per = body.partition(";")
        if not semi:
            pre, per = "", pre
        return SturmianDirective(_directive(pre), _directive(per))
    if head == "lit":
        return Literal(parse_word(body.strip()))
    parts = _split_top(body)
    if len(parts) < 2:
        raise WordError(f"{head}(...) needs two arguments in {text!r}")
    first, second = parts[0], ",".join(parts[1:])
    if head == "fix":
        letters = parse_word(second)
        if len(letters) != 1:
            raise WordError(f"seed must be one letter in {text!r}")
        return MorphicFixedPoint(get_morphism(first), letters[0])
    if head == "up":
        return UltimatelyPeriodic(parse_word(first), parse_word(second))
    if head == "img":
        return MorphicImage(parse_spec(second), get_morphism(first))
    if head == "pre":
        return Prepend(parse_word(first), parse_spec(second))
    raise WordError(f"unknown spec constructor {head!r}")


def as_spec(spec: WordSpec | str) -> WordSpec:
    return parse_spec(spec) if isinstance(spec, str) else spec


def thue_morse() -> WordSpec:
    return MorphicFixedPoint(MORPHISMS["mu"], 0)


def tribonacci() -> WordSpec:
    return MorphicFixedPoint(MORPHISMS["tau"], 0)


def fibonacci() -> WordSpec:
    return SturmianDirective((), (1,))


def dekking_word() -> WordSpec:
    return MorphicFixedPoint(MORPHISMS["dekking"], 0)


def extremal_word() -> WordSpec:
    """Coding by ``g3`` of the fixed point of ``f3``: ``0 1 0 1^3 0^3 1^9 0^9 ...``."""
    return MorphicImage(MorphicFixedPoint(MORPHISMS["f3"], 0), MORPHISMS["g3"])

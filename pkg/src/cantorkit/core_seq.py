"""Finite binary words and total bit oracles (points of Cantor space).

Words enumerate lexicographically with 0 before 1; that single convention
fixes every "left-most" tie-break in the search modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .budget import add_work, ensure_within_budget


@dataclass(frozen=True)
class BinWord:
    """An immutable finite sequence of bits."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"word bits must be 0 or 1, got {self.bits}")

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @staticmethod
    def from_string(s: str) -> "BinWord":
        if not all(c in "01" for c in s):
            raise ValueError(f"word string must contain only 0/1, got {s!r}")
        return BinWord(tuple(int(c) for c in s))

    @staticmethod
    def from_int(value: int, length: int) -> "BinWord":
        """Word of `length` bits with bit 0 as the most significant position."""
        if value < 0 or value >= 1 << length:
            raise ValueError(f"{value} does not fit in {length} bits")
        return BinWord(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    def as_int(self) -> int:
        """Integer with bit 0 of the word as most significant bit."""
        n = 0
        for b in self.bits:
            n = (n << 1) | b
        return n

    def append(self, bit: int) -> "BinWord":
        return BinWord(self.bits + (bit,))

    def take(self, n: int) -> "BinWord":
        return BinWord(self.bits[:n])

    def is_prefix_of(self, other: "BinWord") -> bool:
        return len(self) <= len(other) and other.bits[: len(self)] == self.bits


EMPTY_WORD = BinWord(())


class CantorPoint:
    """A total, deterministic bit oracle.

    Padded points are finite words extended with zeros; programmatic points
    wrap a callable, whose answers are cached so repeated queries are
    guaranteed to agree.
    """

    __slots__ = ("word", "_fn", "_cache", "name")

    def __init__(self, word: BinWord | None, fn: Callable[[int], int] | None, name: str = ""):
        self.word = word
        self._fn = fn
        self._cache: dict[int, int] = {}
        self.name = name

    @staticmethod
    def padded(word: BinWord) -> "CantorPoint":
        return CantorPoint(word, None)

    @staticmethod
    def from_callable(fn: Callable[[int], int], name: str = "") -> "CantorPoint":
        return CantorPoint(None, fn, name)

    @property
    def is_padded(self) -> bool:
        return self.word is not None

    def bit(self, i: int) -> int:
        if i < 0:
            raise IndexError("oracle index must be nonnegative")
        if self.word is not None:
            return self.word.bits[i] if i < len(self.word) else 0
        cached = self._cache.get(i)
        if cached is not None:
            return cached
        b = self._fn(i)
        if b not in (0, 1):
            raise ValueError(f"oracle returned {b!r} at index {i}; bits must be 0 or 1")
        self._cache[i] = b
        return b

    def __repr__(self) -> str:
        if self.word is not None:
            return f"CantorPoint(padded={self.word!s})"
        return f"CantorPoint(programmatic {self.name or '?'})"


def prefix(point: CantorPoint, n: int) -> BinWord:
    """The first `n` bits of a point as a word."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    return BinWord(tuple(point.bit(i) for i in range(n)))


def pad(word: BinWord) -> CantorPoint:
    """The point agreeing with `word` below its length and 0 everywhere after."""
    return CantorPoint.padded(word)


def interleave(z1: CantorPoint, z2: CantorPoint) -> CantorPoint:
    """Bits of z1 on even indices, bits of z2 on odd indices."""
    return CantorPoint.from_callable(
        lambda i: z1.bit(i // 2) if i % 2 == 0 else z2.bit(i // 2),
        name="interleave",
    )


def even_track(z: CantorPoint) -> CantorPoint:
    return CantorPoint.from_callable(lambda i: z.bit(2 * i), name="even_track")


def odd_track(z: CantorPoint) -> CantorPoint:
    return CantorPoint.from_callable(lambda i: z.bit(2 * i + 1), name="odd_track")


def enumerate_words(n: int, budget: int | None = None) -> Iterator[BinWord]:
    """All 2**n words of length n, lexicographic with 0 first."""
    if n < 0:
        raise ValueError("word length must be nonnegative")
    ensure_within_budget(1 << n, budget)
    add_work(1 << n)
    for v in range(1 << n):
        yield BinWord.from_int(v, n)

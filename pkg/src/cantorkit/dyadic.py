"""Dyadic rationals and exact reals as precision-indexed approximation maps.

Everything is exact integer/rational arithmetic; floats never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core_seq import CantorPoint


@dataclass(frozen=True)
class Dyadic:
    """num / 2**exp, normalized so exp is minimal."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be nonnegative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @staticmethod
    def from_int(n: int) -> "Dyadic":
        return Dyadic(n, 0)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic(
            (self.num << (e - self.exp)) - (other.num << (e - other.exp)), e
        )

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.num), self.exp)

    def _cmp_key(self, other: "Dyadic") -> tuple[int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp)

    def __lt__(self, other):
        a, b = self._cmp_key(_as_dyadic(other))
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(_as_dyadic(other))
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(_as_dyadic(other))
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(_as_dyadic(other))
        return a >= b

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    @staticmethod
    def parse(text: str) -> "Dyadic":
        num, _, rest = text.partition("/2^")
        if not rest:
            raise ValueError(f"dyadic must look like 'p/2^e', got {text!r}")
        return Dyadic(int(num), int(rest))


def _as_dyadic(v) -> Dyadic:
    if isinstance(v, Dyadic):
        return v
    if isinstance(v, int):
        return Dyadic(v, 0)
    raise TypeError(f"cannot compare Dyadic to {type(v).__name__}")


def round_to_grid(value: Fraction, exp: int) -> Dyadic:
    """Nearest multiple of 2**-exp, ties rounding up."""
    a, b = value.numerator, value.denominator
    num = (2 * a * (1 << exp) + b) // (2 * b)
    return Dyadic(num, exp)


class ExactReal:
    """A real given by dyadic approximations: |approx(n) - x| <= 2**-(n+1).

    That one-extra-bit contract makes any two approximants n and n+i differ
    by at most 2**-n, the fast-convergence requirement tests sample.
    """

    def __init__(self, approx_fn: Callable[[int], Dyadic],
                 exact: Fraction | None = None, name: str = ""):
        self._approx_fn = approx_fn
        self.exact = exact
        self.name = name
        self._memo: dict[int, Dyadic] = {}

    def approx(self, n: int) -> Dyadic:
        if n < 0:
            raise ValueError("precision index must be nonnegative")
        v = self._memo.get(n)
        if v is None:
            v = self._approx_fn(n)
            self._memo[n] = v
        return v

    def interval(self, n: int) -> tuple[Fraction, Fraction]:
        """A rational interval of width <= 2**-n containing the real."""
        if self.exact is not None:
            return self.exact, self.exact
        q = self.approx(n + 1).as_fraction()
        halfwidth = Fraction(1, 1 << (n + 1))
        return q - halfwidth, q + halfwidth

    @staticmethod
    def from_fraction(value: Fraction | int) -> "ExactReal":
        value = Fraction(value)
        return ExactReal(lambda n: round_to_grid(value, n + 2), exact=value,
                         name=str(value))

    @staticmethod
    def from_point(point: CantorPoint) -> "PointReal":
        return PointReal(point)


class PointReal(ExactReal):
    """The real sum of point bits over 2**(i+1), landing in [0, 1].

    Its intervals come from prefixes only, even for padded points, so any
    consumer's behaviour is determined by finitely many bits.
    """

    def __init__(self, point: CantorPoint):
        self.point = point
        exact = None
        if point.is_padded:
            exact = sum(
                (Fraction(b, 1 << (i + 1)) for i, b in enumerate(point.word.bits)),
                Fraction(0),
            )
        super().__init__(self._approx, exact=exact, name="point-real")

    def _approx(self, n: int) -> Dyadic:
        num = 0
        for i in range(n + 2):
            num = (num << 1) | self.point.bit(i)
        return Dyadic(num, n + 2)

    def prefix_interval(self, t: int) -> tuple[Fraction, Fraction]:
        """Interval from the first t bits alone: [s, s + 2**-t]."""
        num = 0
        for i in range(t):
            num = (num << 1) | self.point.bit(i)
        lo = Fraction(num, 1 << t) if t else Fraction(0)
        return lo, lo + Fraction(1, 1 << t)


def parse_fraction(text: str) -> Fraction:
    """Parse "a/b" or "a" with optional sign."""
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(text))


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"

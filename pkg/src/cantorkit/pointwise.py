"""Pointwise continuity moduli and sequence codes for type-2 functionals.

A code (associate) is a map from finite words to naturals where 0 means
"undetermined" and the first positive hit along a point's prefixes carries
the functional's value plus one.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .core_seq import BinWord, CantorPoint, pad, prefix
from .errors import DomainError, PartialityError
from .functional_eval import Functional2


def pointwise_modulus(phi: Functional2, point: CantorPoint, depth: int,
                      scalars: tuple[int, ...] = (),
                      budget: int | None = None,
                      _vals: np.ndarray | None = None) -> int | None:
    """Least N <= depth: every padded depth-`depth` word extending the point's
    N-prefix gets the point's value.  None when even the full prefix fails
    (the point differs from its own padding beyond the working depth)."""
    target = phi.eval(point, *scalars)
    vals = _vals if _vals is not None else phi.values_on_words(depth, scalars, budget)
    for n in range(depth + 1):
        block = depth - n
        start = prefix(point, n).as_int() << block
        if (vals[start:start + (1 << block)] == target).all():
            return n
    return None


def query_bound(phi: Functional2, point: CantorPoint,
                scalars: tuple[int, ...] = ()) -> int:
    """One more than the largest queried index; 0 when nothing was queried."""
    trace = phi.eval_traced(point, *scalars)
    if not trace.queried_indices:
        return 0
    return trace.max_index_queried + 1


class Associate:
    """A lazily evaluated word-to-natural code."""

    def __init__(self, at: Callable[[BinWord], int], depth: int, name: str = ""):
        self._at = at
        self.depth = depth
        self.name = name
        self._memo: dict[tuple[int, ...], int] = {}

    def at(self, word: BinWord) -> int:
        key = word.bits
        v = self._memo.get(key)
        if v is None:
            v = self._at(word)
            if v < 0:
                raise DomainError(f"code value at {word!s} must be a natural")
            self._memo[key] = v
        return v

    @staticmethod
    def from_callable(at: Callable[[BinWord], int], depth: int,
                      name: str = "") -> "Associate":
        return Associate(at, depth, name)

    def export(self, depth: int) -> dict[str, int]:
        """Table on all words up to `depth`, keyed by bit strings."""
        out: dict[str, int] = {}
        for length in range(depth + 1):
            for w in range(1 << length):
                word = BinWord.from_int(w, length)
                out[str(word)] = self.at(word)
        return out

    def __repr__(self) -> str:
        return f"Associate({self.name!r}, depth={self.depth})"


def build_associate(phi: Functional2, depth: int,
                    scalars: tuple[int, ...] = (),
                    budget: int | None = None) -> Associate:
    """Code for phi from its pointwise moduli at the working depth.

    A word long enough to pin phi's value on its whole padded neighborhood
    codes value+1; shorter words code 0.
    """
    cache: dict[str, np.ndarray] = {}

    def table(word: BinWord) -> int:
        if "vals" not in cache:
            cache["vals"] = phi.values_on_words(depth, scalars, budget)
        vals = cache["vals"]
        point = pad(word)
        d = pointwise_modulus(phi, point, depth, scalars, budget, _vals=vals)
        if d is None:
            raise PartialityError(
                f"no pointwise modulus for {phi.name!r} at word {word!s} "
                f"within depth {depth}"
            )
        if len(word) >= d:
            return phi.eval(point, *scalars) + 1
        return 0

    return Associate(table, depth, name=f"assoc_{phi.name}")


def eval_associate(alpha: Associate, point: CantorPoint,
                   max_depth: int | None = None) -> int:
    """Value at the first prefix with a positive code, minus one."""
    cap = alpha.depth if max_depth is None else max_depth
    for n in range(cap + 1):
        v = alpha.at(prefix(point, n))
        if v > 0:
            return v - 1
    raise PartialityError(
        f"{alpha.name or 'code'} has no hit on this point within depth {cap}"
    )


def associate_hit_depth(alpha: Associate, point: CantorPoint,
                        max_depth: int | None = None) -> int:
    """The first n whose prefix codes a positive value."""
    cap = alpha.depth if max_depth is None else max_depth
    for n in range(cap + 1):
        if alpha.at(prefix(point, n)) > 0:
            return n
    raise PartialityError(
        f"{alpha.name or 'code'} has no hit on this point within depth {cap}"
    )


class CodeCheckReport:
    def __init__(self, ok: bool, depth: int,
                 violation: tuple[BinWord, BinWord, int] | None = None):
        self.ok = ok
        self.depth = depth
        self.violation = violation

    def __repr__(self) -> str:
        if self.ok:
            return f"CodeCheckReport(ok, depth={self.depth})"
        z, g, n = self.violation
        return f"CodeCheckReport(violation at n={n}: {z!s} vs {g!s})"


def modulus_code_check(value_code: Associate, modulus_code: Associate,
                       depth: int) -> CodeCheckReport:
    """Exhaustively verify, on padded depth-`depth` words, that the coded
    modulus really is a modulus for the coded function.

    Reports the first pair of words that agree up to the coded modulus yet
    decode to different values.
    """
    cap = max(depth, value_code.depth, modulus_code.depth)
    values = []
    for w in range(1 << depth):
        point = pad(BinWord.from_int(w, depth))
        values.append(eval_associate(value_code, point, cap))
    for w in range(1 << depth):
        zeta = BinWord.from_int(w, depth)
        omega = eval_associate(modulus_code, pad(zeta), cap)
        n = min(omega, depth)
        block = depth - n
        start = (w >> block) << block
        for g in range(start, start + (1 << block)):
            if values[g] != values[w]:
                return CodeCheckReport(
                    ok=False, depth=depth,
                    violation=(zeta, BinWord.from_int(g, depth), omega),
                )
    return CodeCheckReport(ok=True, depth=depth)

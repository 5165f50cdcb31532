"""Shared brute-force oracles for the test suite.

These deliberately re-derive results by the most literal method available
(pairwise scans, level-by-level enumeration) so they share no aggregation
logic with the library paths they check.
"""

from __future__ import annotations

import numpy as np
import pytest

from cantorkit.core_seq import BinWord, pad


def oracle_least_modulus_pairwise(phi, depth: int) -> int:
    """Least y such that all padded depth-word pairs agreeing to y bits agree
    in value.  Quadratic scan; keep depth small."""
    words = [BinWord.from_int(w, depth) for w in range(1 << depth)]
    vals = [phi.eval(pad(w)) for w in words]
    for y in range(depth + 1):
        ok = True
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                if words[i].bits[:y] == words[j].bits[:y] and vals[i] != vals[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return y
    raise AssertionError("full agreement is equality")


def oracle_least_modulus_blocks(phi, depth: int) -> int:
    """Same quantity via value-array reshaping; linear, for larger depths."""
    vals = np.asarray(phi.values_on_words(depth))
    for y in range(depth + 1):
        rows = vals.reshape(1 << y, 1 << (depth - y))
        if (rows == rows[:, :1]).all():
            return y
    raise AssertionError("full agreement is equality")


def oracle_is_valid_depth(phi, depth: int, y: int) -> bool:
    """Whether agreement to y bits forces equal values at the given depth."""
    vals = np.asarray(phi.values_on_words(depth))
    y = min(y, depth)
    rows = vals.reshape(1 << y, 1 << (depth - y))
    return bool((rows == rows[:, :1]).all())


def oracle_tree_bar(member, cap: int) -> int | None:
    for level in range(cap + 1):
        if all(not member(BinWord.from_int(w, level)) for w in range(1 << level)):
            return level
    return None


def oracle_predicate_bound(h, cap: int) -> int | None:
    worst = 0
    for w in range(1 << cap):
        point = pad(BinWord.from_int(w, cap))
        hit = None
        for n in range(cap + 1):
            if h.eval(point, n) == 0:
                hit = n
                break
        if hit is None:
            return None
        worst = max(worst, hit)
    return worst


class GridPoint:
    """Point view of a fixed digit tuple, zero beyond its length."""

    def __init__(self, digits):
        self.digits = tuple(digits)

    def bit(self, i: int) -> int:
        return self.digits[i] if 0 <= i < len(self.digits) else 0


def grid_words(radices) -> list[tuple[int, ...]]:
    out = [()]
    for r in radices:
        out = [w + (d,) for w in out for d in range(r)]
    return out


@pytest.fixture
def acceptance_line(capsys):
    """Print a PASS/FAIL line for one named acceptance criterion."""
    import contextlib

    @contextlib.contextmanager
    def runner(name: str):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"[acceptance] {name}: FAIL")
            raise
        with capsys.disabled():
            print(f"[acceptance] {name}: PASS")

    return runner

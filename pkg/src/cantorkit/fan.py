"""Uniform-continuity moduli on Cantor space.

`modulus_at_depth` is the depth-bounded search: the least y such that any two
zero-padded words of the working depth agreeing on their first y bits get
equal values.  `uniform_modulus` runs it on a doubling schedule and certifies
the first value that survives a doubling, which is the finite stand-in for
letting the depth go to infinity.

`refuting_path` / `bar_modulus` are the cutoff bar-recursive functionals: a
nested search that walks the binary tree looking for a value disagreement,
truncated at the working depth.  Both are implemented exactly by their
defining recursions; the only liberty taken is a subtree-constancy shortcut
whose result provably coincides with the recursion's (a constant subtree
either never triggers the disagreement branch, or steers every step to the
same boundary path the plain recursion would reach).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernel
from .budget import add_work, work_budget
from .core_seq import EMPTY_WORD, BinWord, CantorPoint, pad
from .errors import WorkBudgetError
from .functional_eval import Functional2

DEFAULT_START_DEPTH = 4
DEFAULT_MAX_DEPTH = 20


@dataclass(frozen=True)
class FanResult:
    """A stabilized uniform-continuity depth.

    `certified` means the value agreed at depth `stabilized_at` and at twice
    that depth, so the agreement property was checked over the full set of
    words of length 2 * stabilized_at.  An uncertified result carries the
    last depth-bounded value reached, or None when the budget stopped even
    the first round.
    """

    modulus: int | None
    stabilized_at: int
    certified: bool


def modulus_at_depth(phi: Functional2, depth: int,
                     scalars: tuple[int, ...] = (),
                     budget: int | None = None,
                     strategy: str = "auto") -> int | None:
    """Least y <= depth whose prefix-agreement forces equal values at this depth.

    strategy: "array" scans all 2**depth values; "cone" explores only the
    subtrees on which the functional is not constant; "auto" tries the cone
    and falls back to the array when the functional does not support it or
    the fork budget trips.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if strategy not in ("auto", "array", "cone"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy in ("auto", "cone") and phi.supports_cone:
        try:
            return _modulus_cone(phi, depth, scalars, budget)
        except WorkBudgetError:
            if strategy == "cone":
                raise
    elif strategy == "cone":
        raise WorkBudgetError(f"{phi.name!r} does not support cone evaluation")
    vals = phi.values_on_words(depth, scalars, budget)
    return int(kernel.least_constant_depth(vals, depth))


def _modulus_cone(phi: Functional2, depth: int, scalars: tuple[int, ...],
                  budget: int | None) -> int:
    if phi.analyze_hook is not None:
        _, _, needed = phi.analyze_hook(depth, scalars)
        return needed
    limit = work_budget(budget)
    visited = 0

    def rec(word: BinWord) -> int:
        nonlocal visited
        visited += 1
        if visited > limit:
            raise WorkBudgetError(
                f"cone modulus search visited more than {limit} nodes"
            )
        constant, _ = phi.constant_below(word, depth, scalars)
        if constant:
            return len(word)
        return max(rec(word.append(0)), rec(word.append(1)))

    result = rec(EMPTY_WORD)
    add_work(visited)
    return result


def uniform_modulus(phi: Functional2, start_depth: int = DEFAULT_START_DEPTH,
                    max_depth: int = DEFAULT_MAX_DEPTH,
                    scalars: tuple[int, ...] = (),
                    budget: int | None = None) -> FanResult:
    """Stabilized modulus: double the depth until two consecutive rounds agree.

    Budget exhaustion before stabilization yields an uncertified best-effort
    result rather than an exception.
    """
    if start_depth < 1:
        raise ValueError("start depth must be at least 1")
    m = start_depth
    prev = None
    try:
        prev = modulus_at_depth(phi, m, scalars, budget)
        while 2 * m <= max_depth:
            cur = modulus_at_depth(phi, 2 * m, scalars, budget)
            if cur == prev:
                return FanResult(modulus=cur, stabilized_at=m, certified=True)
            prev = cur
            m = 2 * m
    except WorkBudgetError:
        return FanResult(modulus=prev, stabilized_at=m, certified=False)
    return FanResult(modulus=prev, stabilized_at=m, certified=False)


def refuting_path(word: BinWord, phi: Functional2, target: int, depth: int,
                  scalars: tuple[int, ...] = (),
                  budget: int | None = None) -> CantorPoint:
    """Search below `word` for a padded path on which phi differs from `target`.

    When no such path exists the search runs off the right edge and returns
    the all-ones extension; callers detect failure by re-evaluating phi.
    """
    limit = work_budget(budget)
    counter = [0]
    result = _refute(word, phi, target, depth, scalars, counter, limit)
    add_work(counter[0])
    return result


def _refute(word, phi, target, depth, scalars, counter, limit) -> CantorPoint:
    counter[0] += 1
    if counter[0] > limit:
        raise WorkBudgetError(f"path search visited more than {limit} nodes")
    if len(word) >= depth:
        return pad(word)
    if phi.supports_cone:
        constant, value = phi.constant_below(word, depth, scalars)
        if constant:
            fill = 0 if value != target else 1
            return pad(BinWord(word.bits + (fill,) * (depth - len(word))))
    left = _refute(word.append(0), phi, target, depth, scalars, counter, limit)
    if phi.eval(left, *scalars) != target:
        return left
    return _refute(word.append(1), phi, target, depth, scalars, counter, limit)


def bar_modulus(word: BinWord, phi: Functional2, depth: int,
                scalars: tuple[int, ...] = (),
                budget: int | None = None) -> int:
    """Depth of the disagreement tree below `word`, cut off at `depth`.

    Zero when phi is constant on the padded subtree; otherwise one more than
    the larger of the two child recursions.
    """
    limit = work_budget(budget)
    counter = [0]
    result = _bar(word, phi, depth, scalars, counter, limit)
    add_work(counter[0])
    return result


def _bar(word, phi, depth, scalars, counter, limit) -> int:
    counter[0] += 1
    if counter[0] > limit:
        raise WorkBudgetError(f"bar recursion visited more than {limit} nodes")
    if len(word) >= depth:
        return 0
    if phi.supports_cone:
        constant, _ = phi.constant_below(word, depth, scalars)
        settled = constant
    else:
        base = phi.eval(pad(word), *scalars)
        candidate = _refute(word, phi, base, depth, scalars, counter, limit)
        settled = phi.eval(candidate, *scalars) == base
    if settled:
        return 0
    return 1 + max(
        _bar(word.append(0), phi, depth, scalars, counter, limit),
        _bar(word.append(1), phi, depth, scalars, counter, limit),
    )


def bar_fan_modulus(phi: Functional2, depth: int,
                    scalars: tuple[int, ...] = (),
                    budget: int | None = None) -> int:
    """bar_modulus from the root: a uniform-continuity depth candidate."""
    return bar_modulus(EMPTY_WORD, phi, depth, scalars, budget)

"""Suprema over Cantor space and bar bounds for tree/predicate fans."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .budget import add_work, ensure_within_budget
from .core_seq import EMPTY_WORD, BinWord, pad
from .errors import DomainError, UncertifiedError
from .fan import DEFAULT_MAX_DEPTH, DEFAULT_START_DEPTH, uniform_modulus
from .functional_eval import Functional2, mu_functional


@dataclass(frozen=True)
class SupResult:
    value: int
    witness: BinWord
    depth_used: int


@dataclass(frozen=True)
class BarBound:
    k: int
    certified: bool


@dataclass(frozen=True)
class FancResult:
    bound: BarBound
    depth: int
    table: dict[BinWord, int]


def supremum(phi: Functional2, start_depth: int = DEFAULT_START_DEPTH,
             max_depth: int = DEFAULT_MAX_DEPTH,
             scalars: tuple[int, ...] = (),
             budget: int | None = None) -> SupResult:
    """Maximum of phi over padded words at its certified modulus depth.

    The witness is the left-most word of minimal length attaining the value.
    Refuses when the modulus does not stabilize.
    """
    fr = uniform_modulus(phi, start_depth, max_depth, scalars, budget)
    if not fr.certified:
        raise UncertifiedError(
            f"supremum of {phi.name!r} needs a certified modulus; "
            f"stabilization failed by depth {max_depth}",
            partial=fr,
        )
    depth = fr.modulus
    vals = phi.values_on_words(depth, scalars, budget)
    value = int(vals.max())
    witness = _leftmost_attaining(vals, depth, value)
    return SupResult(value=value, witness=witness, depth_used=depth)


def _leftmost_attaining(vals, depth: int, value: int) -> BinWord:
    # Padded shorter words reuse the depth-`depth` table: pad(w) is the
    # all-zeros extension, the first entry of w's block.
    for length in range(depth + 1):
        shift = depth - length
        for w in range(1 << length):
            if vals[w << shift] == value:
                return BinWord.from_int(w, length)
    raise RuntimeError("unreachable: maximum must be attained")  # pragma: no cover


def least_bound_with_witness(psi: Functional2, depth: int,
                             scalars: tuple[int, ...] = (),
                             budget: int | None = None) -> tuple[int, BinWord]:
    """Least bound on psi over padded depth-`depth` words, with the left-most
    shortest word attaining it."""
    vals = psi.values_on_words(depth, scalars, budget)
    k = int(vals.max())
    return k, _leftmost_attaining(vals, depth, k)


class WordSet:
    """A decidable set of finite binary words."""

    def __init__(self, member: Callable[[BinWord], bool], name: str = ""):
        self._member = member
        self.name = name

    @staticmethod
    def from_callable(member: Callable[[BinWord], bool], name: str = "") -> "WordSet":
        return WordSet(member, name)

    @staticmethod
    def from_functional(phi: Functional2) -> "WordSet":
        """Membership of word w given by phi(pad(w), |w|) = 1."""
        if phi.n_scalars != 1:
            raise DomainError("a word-set functional needs one scalar (the length)")
        return WordSet(lambda w: phi.eval(pad(w), len(w)) == 1, name=phi.name)

    def __contains__(self, word: BinWord) -> bool:
        return self._member(word)


def tree_bar_bound(tree: WordSet, cap: int, budget: int | None = None) -> BarBound:
    """Least level at which no word lies in the (downward-closed) tree.

    Scans level by level to `cap`; a still-live level at the cap yields an
    uncertified bound.  Downward closure is validated exhaustively along the
    way and violations are rejected.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    ensure_within_budget(1 << (cap + 1), budget)
    # One full scan to the cap: it both validates downward closure on every
    # word and finds the first empty level.
    members: set[int] = {0} if EMPTY_WORD in tree else set()
    bar = None if members else 0
    for level in range(1, cap + 1):
        add_work(1 << level)
        nxt: set[int] = set()
        for w in range(1 << level):
            if BinWord.from_int(w, level) in tree:
                if (w >> 1) not in members:
                    raise DomainError(
                        f"not downward closed: {BinWord.from_int(w, level)!s} is in "
                        f"the tree but its parent is not"
                    )
                nxt.add(w)
        if not nxt and bar is None:
            bar = level
        members = nxt
    if bar is not None:
        return BarBound(k=bar, certified=True)
    return BarBound(k=cap, certified=False)


def predicate_bar_bound(h: Functional2, cap: int,
                        start_depth: int = DEFAULT_START_DEPTH,
                        max_depth: int = DEFAULT_MAX_DEPTH,
                        budget: int | None = None) -> BarBound:
    """Uniform bound k: every point admits some n <= k with h(point, n) = 0.

    Built by turning the per-point bounded search into a functional and
    taking its certified supremum.  Points whose search exhausts the cap
    (value cap+1) make the result uncertified.
    """
    mu = mu_functional(h, cap)
    try:
        sup = supremum(mu, start_depth, max_depth, budget=budget)
    except UncertifiedError:
        return BarBound(k=cap, certified=False)
    if sup.value > cap:
        return BarBound(k=cap, certified=False)
    return BarBound(k=sup.value, certified=True)


def neighborhood_bar_bound(h: Functional2, cap: int,
                           start_depth: int = DEFAULT_START_DEPTH,
                           max_depth: int = DEFAULT_MAX_DEPTH,
                           budget: int | None = None) -> FancResult:
    """predicate_bar_bound plus a per-neighborhood witness table.

    The table maps each word sigma of the table depth to an n that satisfies
    h on *every* padded cap-depth extension of sigma; validity is checked
    exhaustively.  The table depth is the bound joined with the search
    functional's certified modulus, so one n really serves the whole
    neighborhood.
    """
    bound = predicate_bar_bound(h, cap, start_depth, max_depth, budget)
    if not bound.certified:
        raise UncertifiedError(
            f"no certified bar bound for {h.name!r} within cap {cap}",
            partial=bound,
        )
    mu = mu_functional(h, cap)
    fr = uniform_modulus(mu, start_depth, max_depth, budget=budget)
    depth = max(bound.k, fr.modulus)
    ensure_within_budget(1 << cap, budget)
    table: dict[BinWord, int] = {}
    for w in range(1 << depth):
        sigma = BinWord.from_int(w, depth)
        n = mu.eval(pad(sigma))
        ext = cap - depth
        add_work(1 << ext if ext > 0 else 1)
        for tail in range(1 << ext) if ext > 0 else (0,):
            tau = BinWord.from_int((w << ext) | tail, cap) if ext > 0 else sigma
            if h.eval(pad(tau), n) != 0:
                raise UncertifiedError(
                    f"witness {n} for neighborhood {sigma!s} fails at {tau!s}"
                )
        table[sigma] = n
    return FancResult(bound=bound, depth=depth, table=table)

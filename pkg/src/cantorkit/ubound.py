"""Moduli and argmax selectors for functionals on bounded sequence domains.

The domain {z : z(i) <= y(i)} is searched as a mixed-radix grid, so the
bound sequence must be finitely describable: a word of per-index bounds
followed by an eventually-constant tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernel
from .budget import ensure_within_budget
from .errors import DomainError, UncertifiedError
from .functional_eval import Functional2, SeqFunctional


@dataclass(frozen=True)
class BoundedDomain:
    """Per-index bounds: `word` for the first indices, `tail` from then on."""

    word: tuple[int, ...] = ()
    tail: int = 1

    def __post_init__(self):
        if any(b < 0 for b in self.word) or self.tail < 0:
            raise ValueError("bounds must be nonnegative")

    def bound(self, i: int) -> int:
        return self.word[i] if i < len(self.word) else self.tail

    def radices(self, depth: int) -> list[int]:
        return [self.bound(i) + 1 for i in range(depth)]

    def grid_size(self, depth: int) -> int:
        total = 1
        for r in self.radices(depth):
            total *= r
        return total

    @staticmethod
    def parse(text: str) -> "BoundedDomain":
        """Parse "w@c": decimal digits for the word, then the tail value."""
        if "@" not in text:
            raise DomainError(f"bound spec {text!r} must look like 'digits@tail'")
        head, tail = text.split("@", 1)
        if not all(c.isdigit() for c in head) or not tail.isdigit():
            raise DomainError(f"bad bound spec {text!r}")
        return BoundedDomain(word=tuple(int(c) for c in head), tail=int(tail))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.word) + "@" + str(self.tail)


CANTOR_DOMAIN = BoundedDomain(word=(), tail=1)


def seq_modulus(lam: SeqFunctional | Functional2, domain: BoundedDomain,
                k: int, depth: int, budget: int | None = None) -> int | None:
    """Least N <= depth: grid points agreeing on their first N digits produce
    equal output prefixes of length k."""
    if k < 0 or depth < 0:
        raise ValueError("k and depth must be nonnegative")
    radices = domain.radices(depth)
    ensure_within_budget(domain.grid_size(depth) * max(k, 1), budget)
    best = 0
    for i in range(k):
        vals = lam.values_on_grid(radices, scalars=(i,), budget=budget)
        best = max(best, int(kernel.grid_least_constant_depth(vals, radices)))
    return best


def bounded_argmax(phi_family: Callable[[int], Functional2],
                   domain_family: Callable[[int], BoundedDomain],
                   k: int, depth: int,
                   budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Maximum of phi_family(k) over the bounded grid, with the left-most
    maximizing word cut to the modulus length."""
    phi = phi_family(k)
    domain = domain_family(k)
    radices = domain.radices(depth)
    ensure_within_budget(domain.grid_size(depth), budget)
    vals = phi.values_on_grid(radices, budget=budget)
    modulus = int(kernel.grid_least_constant_depth(vals, radices))
    if modulus > depth:  # pragma: no cover - grid agreement at full depth is equality
        raise UncertifiedError(f"no modulus for {phi.name!r} within depth {depth}")
    value = int(vals.max())
    block = 1
    for r in radices[modulus:]:
        block *= r
    digits = [0] * modulus
    idx = 0
    while True:
        if vals[idx * block] == value:
            return value, tuple(digits)
        pos = modulus - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < radices[pos]:
                break
            digits[pos] = 0
            pos -= 1
        idx += 1
        if pos < 0:  # pragma: no cover
            raise RuntimeError("unreachable: maximum must be attained")


def least_witness_bound(h: Functional2,
                        domain_family: Callable[[int], BoundedDomain],
                        k: int, cap: int,
                        budget: int | None = None) -> int | None:
    """Least b: every grid point below the domain admits z <= b with h = 0.

    h takes (point, z, k).  Returns None when some point's witness search
    exhausts the cap.
    """
    domain = domain_family(k)
    radices = domain.radices(cap)
    total = domain.grid_size(cap)
    ensure_within_budget(total * (cap + 1), budget)
    undecided = np.ones(total, dtype=bool)
    bound = 0
    for z in range(cap + 1):
        vals = h.values_on_grid(radices, scalars=(z, k), budget=budget)
        hit = undecided & (vals == 0)
        if hit.any():
            bound = z
            undecided &= ~hit
        if not undecided.any():
            return bound
    return None

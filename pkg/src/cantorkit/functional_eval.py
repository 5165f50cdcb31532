"""Deterministic evaluation of type-2 functionals with query instrumentation.

A Functional2 wraps either a compiled DSL definition or a Python callable
taking a point (anything with ``bit(i)``).  DSL-backed functionals get the
fast bulk and cone evaluation paths; programmatic ones can supply their own
hooks, and otherwise fall back to point-by-point evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import dsl, kernel
from .budget import (
    DEFAULT_FORK_BUDGET, DEFAULT_STEP_BUDGET, add_work, ensure_within_budget,
)
from .cone import cone_constancy
from .core_seq import BinWord, CantorPoint
from .errors import DomainError
from .vmcode import VmCode, compile_def


@dataclass(frozen=True)
class EvalTrace:
    value: int
    max_index_queried: int
    queried_indices: frozenset[int]


class _TracingPoint:
    """Wraps a point, recording every queried index."""

    __slots__ = ("_point", "queried")

    def __init__(self, point):
        self._point = point
        self.queried: set[int] = set()

    def bit(self, i: int) -> int:
        self.queried.add(i)
        return self._point.bit(i)


class Functional2:
    """A total map from Cantor points (plus optional scalar arguments) to naturals."""

    def __init__(self, name: str, *, code: VmCode | None = None,
                 definition: dsl.Def | None = None,
                 fn: Callable | None = None, n_scalars: int = 0,
                 step_budget: int = DEFAULT_STEP_BUDGET,
                 bulk_hook: Callable | None = None,
                 cone_hook: Callable | None = None,
                 analyze_hook: Callable | None = None):
        self.name = name
        self.code = code
        self.definition = definition
        self.fn = fn
        self.n_scalars = code.n_scalars if code is not None else n_scalars
        self.step_budget = step_budget
        self._bulk_hook = bulk_hook
        self._cone_hook = cone_hook
        self.analyze_hook = analyze_hook

    @staticmethod
    def from_dsl(source: str | dsl.Def, name: str | None = None,
                 step_budget: int = DEFAULT_STEP_BUDGET) -> "Functional2":
        if isinstance(source, str):
            program = dsl.parse(source)
            d = program[name] if name is not None else program.defs[0]
        else:
            d = source
        return Functional2(d.name, code=compile_def(d), definition=d,
                           step_budget=step_budget)

    @staticmethod
    def from_callable(fn: Callable, name: str = "", n_scalars: int = 0,
                      step_budget: int = DEFAULT_STEP_BUDGET) -> "Functional2":
        return Functional2(name or getattr(fn, "__name__", "anon"), fn=fn,
                           n_scalars=n_scalars, step_budget=step_budget)

    def _check_scalars(self, scalars: tuple[int, ...]) -> None:
        if len(scalars) != self.n_scalars:
            raise DomainError(
                f"{self.name!r} expects {self.n_scalars} scalar argument(s), "
                f"got {len(scalars)}"
            )

    def eval(self, point, *scalars: int) -> int:
        self._check_scalars(scalars)
        if self.code is not None:
            if isinstance(point, CantorPoint) and point.is_padded:
                w = point.word
                return int(kernel.eval_word(self.code, w.as_int(), len(w),
                                            scalars, self.step_budget))
            return kernel.eval_point(self.code, point.bit, scalars,
                                     self.step_budget)
        v = self.fn(point, *scalars)
        if not isinstance(v, int) or v < 0:
            raise DomainError(f"{self.name!r} returned {v!r}; values must be naturals")
        return v

    def eval_traced(self, point, *scalars: int) -> EvalTrace:
        self._check_scalars(scalars)
        if self.code is not None:
            queried: set[int] = set()
            value = kernel.eval_point(self.code, point.bit, scalars,
                                      self.step_budget, trace=queried)
        else:
            tp = _TracingPoint(point)
            value = self.fn(tp, *scalars)
            if not isinstance(value, int) or value < 0:
                raise DomainError(
                    f"{self.name!r} returned {value!r}; values must be naturals"
                )
            queried = tp.queried
        max_q = max(queried) if queried else 0
        return EvalTrace(value=value, max_index_queried=max_q,
                         queried_indices=frozenset(queried))

    def values_on_words(self, depth: int, scalars: tuple[int, ...] = (),
                        budget: int | None = None) -> np.ndarray:
        """Values on every zero-padded word of `depth` bits, lexicographic order."""
        self._check_scalars(scalars)
        ensure_within_budget(1 << depth, budget)
        add_work(1 << depth)
        if self.code is not None:
            return kernel.values_on_words(self.code, depth, scalars,
                                          self.step_budget)
        if self._bulk_hook is not None:
            return self._bulk_hook(depth, scalars)
        out = np.empty(1 << depth, dtype=np.int64)
        for w in range(1 << depth):
            out[w] = self.eval(CantorPoint.padded(BinWord.from_int(w, depth)),
                               *scalars)
        return out

    def values_on_grid(self, radices: Sequence[int],
                       scalars: tuple[int, ...] = (),
                       budget: int | None = None) -> np.ndarray:
        """Values on the zero-padded mixed-radix grid in odometer order."""
        self._check_scalars(scalars)
        total = 1
        for r in radices:
            total *= r
        ensure_within_budget(total, budget)
        add_work(total)
        if self.code is not None:
            return kernel.values_on_grid(self.code, list(radices), scalars,
                                         self.step_budget)
        out = np.empty(total, dtype=np.int64)
        digits = [0] * len(radices)
        point = _DigitPoint(digits)
        for idx in range(total):
            out[idx] = self.fn(point, *scalars)
            for pos in range(len(radices) - 1, -1, -1):
                digits[pos] += 1
                if digits[pos] < radices[pos]:
                    break
                digits[pos] = 0
        return out

    @property
    def supports_cone(self) -> bool:
        return self.code is not None or self._cone_hook is not None

    def constant_below(self, word: BinWord, depth: int,
                       scalars: tuple[int, ...] = (),
                       fork_budget: int = DEFAULT_FORK_BUDGET) -> tuple[bool, int]:
        """Whether all zero-padded depth-`depth` extensions of `word` share one value."""
        self._check_scalars(scalars)
        if self.code is not None:
            return cone_constancy(self.code, word.bits, depth, scalars,
                                  self.step_budget, fork_budget)
        if self._cone_hook is not None:
            return self._cone_hook(word, depth, scalars)
        raise DomainError(f"{self.name!r} does not support cone evaluation")

    def __repr__(self) -> str:
        kind = "dsl" if self.code is not None else "callable"
        return f"Functional2({self.name!r}, {kind})"


class _DigitPoint:
    """Point view of a live odometer digit buffer (zero beyond its length)."""

    __slots__ = ("_digits",)

    def __init__(self, digits: list[int]):
        self._digits = digits

    def bit(self, i: int) -> int:
        return self._digits[i] if 0 <= i < len(self._digits) else 0


class SeqFunctional(Functional2):
    """A functional producing sequences: the first scalar is the output index."""

    @staticmethod
    def from_dsl(source: str | dsl.Def, name: str | None = None,
                 step_budget: int = DEFAULT_STEP_BUDGET) -> "SeqFunctional":
        base = Functional2.from_dsl(source, name, step_budget)
        if base.n_scalars < 1:
            raise DomainError(
                f"{base.name!r} needs an output-index parameter after the oracle"
            )
        return SeqFunctional(base.name, code=base.code, definition=base.definition,
                             step_budget=step_budget)

    @staticmethod
    def from_callable(fn: Callable, name: str = "", n_scalars: int = 1,
                      step_budget: int = DEFAULT_STEP_BUDGET) -> "SeqFunctional":
        if n_scalars < 1:
            raise DomainError("a sequence functional needs the index argument")
        return SeqFunctional(name or getattr(fn, "__name__", "anon"), fn=fn,
                             n_scalars=n_scalars, step_budget=step_budget)


def eval_traced(phi: Functional2, point, *scalars: int) -> EvalTrace:
    return phi.eval_traced(point, *scalars)


def eval_seq(lam: Functional2, z, k: int, scalars: tuple[int, ...] = ()) -> tuple[int, ...]:
    """The first k entries of the output sequence of `lam` at point z."""
    if k < 0:
        raise DomainError("sequence length must be nonnegative")
    return tuple(lam.eval(z, i, *scalars) for i in range(k))


def mu_functional(h: Functional2, cap: int, name: str | None = None) -> Functional2:
    """The least n <= cap with h(point, n) = 0, and cap+1 when there is none.

    For DSL-backed h the search is built as a DSL expression, so the result
    keeps the fast evaluation paths.
    """
    if h.n_scalars != 1:
        raise DomainError("mu_functional needs a predicate with one scalar slot")
    label = name or f"mu_{h.name}"
    if h.definition is not None:
        d = h.definition
        oracle, scalar = d.params[0], d.params[1]
        var = scalar if scalar != oracle else "n_"
        body = dsl.Mu(var=var, bound=cap, left=_subst(d.body, scalar, dsl.Name(ident=var)),
                      cmp="==", right=dsl.Lit(value=0))
        return Functional2.from_dsl(dsl.Def(label, (oracle,), body),
                                    step_budget=h.step_budget)

    def fn(point):
        for n in range(cap + 1):
            if h.eval(point, n) == 0:
                return n
        return cap + 1

    return Functional2.from_callable(fn, name=label, step_budget=h.step_budget)


def _subst(e: dsl.Expr, name: str, replacement: dsl.Expr) -> dsl.Expr:
    if isinstance(e, dsl.Name):
        return replacement if e.ident == name else e
    if isinstance(e, dsl.Lit):
        return e
    if isinstance(e, dsl.Apply):
        return dsl.Apply(fn=e.fn, arg=_subst(e.arg, name, replacement))
    if isinstance(e, dsl.Bin):
        return dsl.Bin(op=e.op, left=_subst(e.left, name, replacement),
                       right=_subst(e.right, name, replacement))
    if isinstance(e, dsl.If):
        return dsl.If(left=_subst(e.left, name, replacement), cmp=e.cmp,
                      right=_subst(e.right, name, replacement),
                      then=_subst(e.then, name, replacement),
                      orelse=_subst(e.orelse, name, replacement))
    if isinstance(e, dsl.Mu):
        if e.var == name:  # inner binder shadows
            return e
        return dsl.Mu(var=e.var, bound=e.bound,
                      left=_subst(e.left, name, replacement), cmp=e.cmp,
                      right=_subst(e.right, name, replacement))
    raise TypeError(f"not an expression: {e!r}")

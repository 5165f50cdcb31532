"""Pure-Python search kernel: the fallback backend.

Mirrors the compiled extension instruction for instruction; any divergence
between the two is a bug (covered by cross-backend tests).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .budget import VALUE_CAP
from .errors import StepBudgetError, ValueOverflowError
from .vmcode import (
    ADD, DIV, EQ, GE, GT, JMP, JNZ, JZ, LE, LOAD, LT, MOD, MUL, NE, ORACLE,
    PUSH, STORE, SUB, HALT, VmCode,
)

BACKEND = "python"


def _run(code: VmCode, oracle: Callable[[int], int], scalars: Sequence[int],
         step_budget: int) -> int:
    ops = code.ops
    args = code.args
    locals_ = list(scalars) + [0] * (code.n_locals - code.n_scalars)
    stack = [0] * code.max_stack
    sp = -1
    pc = 0
    steps = 0
    while True:
        steps += 1
        if steps > step_budget:
            raise StepBudgetError(
                f"evaluation exceeded step budget {step_budget}"
            )
        op = ops[pc]
        a = args[pc]
        pc += 1
        if op == PUSH:
            sp += 1
            stack[sp] = a
        elif op == LOAD:
            sp += 1
            stack[sp] = locals_[a]
        elif op == STORE:
            locals_[a] = stack[sp]
            sp -= 1
        elif op == ORACLE:
            stack[sp] = oracle(stack[sp])
        elif op == ADD:
            v = stack[sp - 1] + stack[sp]
            if v > VALUE_CAP:
                raise ValueOverflowError(f"value {v} exceeds cap {VALUE_CAP}")
            sp -= 1
            stack[sp] = v
        elif op == SUB:
            v = stack[sp - 1] - stack[sp]
            sp -= 1
            stack[sp] = v if v > 0 else 0
        elif op == MUL:
            v = stack[sp - 1] * stack[sp]
            if v > VALUE_CAP:
                raise ValueOverflowError(f"value {v} exceeds cap {VALUE_CAP}")
            sp -= 1
            stack[sp] = v
        elif op == DIV:
            stack[sp] = stack[sp] // a
        elif op == MOD:
            stack[sp] = stack[sp] % a
        elif op == EQ:
            v = 1 if stack[sp - 1] == stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == NE:
            v = 1 if stack[sp - 1] != stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == LE:
            v = 1 if stack[sp - 1] <= stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == LT:
            v = 1 if stack[sp - 1] < stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == GE:
            v = 1 if stack[sp - 1] >= stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == GT:
            v = 1 if stack[sp - 1] > stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == JMP:
            pc = a
        elif op == JZ:
            if stack[sp] == 0:
                pc = a
            sp -= 1
        elif op == JNZ:
            if stack[sp] != 0:
                pc = a
            sp -= 1
        elif op == HALT:
            return stack[sp]
        else:  # pragma: no cover
            raise RuntimeError(f"bad opcode {op}")


def eval_word(code: VmCode, word: int, length: int, scalars: Sequence[int],
              step_budget: int) -> int:
    """Evaluate on the zero-padded point of an integer-coded word."""
    top = length - 1

    def oracle(i: int) -> int:
        if 0 <= i < length:
            return (word >> (top - i)) & 1
        return 0

    return _run(code, oracle, scalars, step_budget)


def eval_point(code: VmCode, oracle: Callable[[int], int],
               scalars: Sequence[int], step_budget: int,
               trace: set[int] | None = None) -> int:
    """Evaluate on an arbitrary oracle, optionally recording queried indices."""
    if trace is None:
        return _run(code, oracle, scalars, step_budget)

    def traced(i: int) -> int:
        trace.add(i)
        return oracle(i)

    return _run(code, traced, scalars, step_budget)


def values_on_words(code: VmCode, depth: int, scalars: Sequence[int],
                    step_budget: int) -> np.ndarray:
    """Values on all zero-padded words of `depth` bits, lexicographic order."""
    out = np.empty(1 << depth, dtype=np.int64)
    for w in range(1 << depth):
        out[w] = eval_word(code, w, depth, scalars, step_budget)
    return out


def values_on_grid(code: VmCode, radices: Sequence[int], scalars: Sequence[int],
                   step_budget: int) -> np.ndarray:
    """Values on the zero-padded mixed-radix grid, odometer (lexicographic) order."""
    m = len(radices)
    total = 1
    for r in radices:
        total *= r
    digits = [0] * m

    def oracle(i: int) -> int:
        return digits[i] if 0 <= i < m else 0

    out = np.empty(total, dtype=np.int64)
    for idx in range(total):
        out[idx] = _run(code, oracle, scalars, step_budget)
        for pos in range(m - 1, -1, -1):
            digits[pos] += 1
            if digits[pos] < radices[pos]:
                break
            digits[pos] = 0
    return out


def least_constant_depth(vals: np.ndarray, depth: int) -> int:
    """Least y such that every aligned block of 2**(depth-y) entries is constant."""
    best = 0
    prev = vals[0]
    for p in range(1, len(vals)):
        v = vals[p]
        if v != prev:
            tz = (p & -p).bit_length() - 1
            need = depth - tz
            if need > best:
                best = need
                if best == depth:
                    break
        prev = v
    return best


def grid_least_constant_depth(vals: np.ndarray, radices: Sequence[int]) -> int:
    """Mixed-radix analogue of least_constant_depth over odometer-ordered values."""
    m = len(radices)
    best = 0
    prev = vals[0]
    for p in range(1, len(vals)):
        v = vals[p]
        if v != prev:
            q = p
            t = 0
            while t < m and q % radices[m - 1 - t] == 0:
                q //= radices[m - 1 - t]
                t += 1
            need = m - t
            if need > best:
                best = need
                if best == m:
                    break
        prev = v
    return best

"""Branching evaluation over all completions of a word prefix.

Runs the bytecode VM with the prefix bits fixed, bits between the prefix and
the working depth free (the run forks when one is queried), and zero beyond
the depth.  Each leaf of the fork tree is one class of completions on which
the program behaves identically, so constancy of a functional on a whole
subtree is decided in time bounded by the program's query structure rather
than by the subtree's size.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .budget import DEFAULT_FORK_BUDGET, VALUE_CAP
from .errors import StepBudgetError, ValueOverflowError, WorkBudgetError
from .vmcode import (
    ADD, DIV, EQ, GE, GT, JMP, JNZ, JZ, LE, LOAD, LT, MOD, MUL, NE, ORACLE,
    PUSH, STORE, SUB, HALT, VmCode,
)


def cone_values(code: VmCode, fixed: Sequence[int], depth: int,
                scalars: Sequence[int], step_budget: int,
                fork_budget: int = DEFAULT_FORK_BUDGET) -> Iterator[int]:
    """Yield the value of every fork-tree leaf (duplicates possible)."""
    n_fixed = len(fixed)
    init_locals = tuple(scalars) + (0,) * (code.n_locals - code.n_scalars)
    # state: (pc, stack, locals, steps, assignment of free indices)
    pending = [(0, (), init_locals, 0, {})]
    ops = code.ops
    args = code.args
    leaves = 0
    while pending:
        pc, stack, locs, steps, assign = pending.pop()
        stack = list(stack)
        locs = list(locs)
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
                stack.append(a)
            elif op == LOAD:
                stack.append(locs[a])
            elif op == STORE:
                locs[a] = stack.pop()
            elif op == ORACLE:
                i = stack[-1]
                if 0 <= i < n_fixed:
                    stack[-1] = fixed[i]
                elif i >= depth:
                    stack[-1] = 0
                else:
                    b = assign.get(i)
                    if b is None:
                        leaves += 1
                        if leaves > fork_budget:
                            raise WorkBudgetError(
                                f"cone evaluation exceeded fork budget {fork_budget}"
                            )
                        one = dict(assign)
                        one[i] = 1
                        stack_one = list(stack)
                        stack_one[-1] = 1
                        pending.append((pc, tuple(stack_one), tuple(locs), steps, one))
                        assign = dict(assign)
                        assign[i] = 0
                        stack[-1] = 0
                    else:
                        stack[-1] = b
            elif op == ADD:
                v = stack[-2] + stack[-1]
                if v > VALUE_CAP:
                    raise ValueOverflowError(f"value {v} exceeds cap {VALUE_CAP}")
                stack.pop()
                stack[-1] = v
            elif op == SUB:
                v = stack[-2] - stack[-1]
                stack.pop()
                stack[-1] = v if v > 0 else 0
            elif op == MUL:
                v = stack[-2] * stack[-1]
                if v > VALUE_CAP:
                    raise ValueOverflowError(f"value {v} exceeds cap {VALUE_CAP}")
                stack.pop()
                stack[-1] = v
            elif op == DIV:
                stack[-1] = stack[-1] // a
            elif op == MOD:
                stack[-1] = stack[-1] % a
            elif op == EQ:
                v = 1 if stack[-2] == stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == NE:
                v = 1 if stack[-2] != stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == LE:
                v = 1 if stack[-2] <= stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == LT:
                v = 1 if stack[-2] < stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == GE:
                v = 1 if stack[-2] >= stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == GT:
                v = 1 if stack[-2] > stack[-1] else 0
                stack.pop()
                stack[-1] = v
            elif op == JMP:
                pc = a
            elif op == JZ:
                if stack.pop() == 0:
                    pc = a
            elif op == JNZ:
                if stack.pop() != 0:
                    pc = a
            else:  # HALT
                yield stack[-1]
                break


def cone_constancy(code: VmCode, fixed: Sequence[int], depth: int,
                   scalars: Sequence[int], step_budget: int,
                   fork_budget: int = DEFAULT_FORK_BUDGET) -> tuple[bool, int]:
    """Whether the program is constant on all depth-`depth` completions of `fixed`.

    Returns (True, value) or (False, first_value_seen).
    """
    first = None
    for v in cone_values(code, fixed, depth, scalars, step_budget, fork_budget):
        if first is None:
            first = v
        elif v != first:
            return (False, first)
    return (True, first)

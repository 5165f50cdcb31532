# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel: bulk bytecode evaluation over Cantor-space grids.

Semantics must match _kernel_py exactly; the pure backend is the reference.
"""

from libc.stdlib cimport free, malloc

import numpy as np

from .errors import StepBudgetError, ValueOverflowError

BACKEND = "compiled"

cdef long long VALUE_CAP_C = (<long long>1) << 62

DEF OP_PUSH = 0
DEF OP_LOAD = 1
DEF OP_STORE = 2
DEF OP_ORACLE = 3
DEF OP_ADD = 4
DEF OP_SUB = 5
DEF OP_MUL = 6
DEF OP_DIV = 7
DEF OP_MOD = 8
DEF OP_EQ = 9
DEF OP_NE = 10
DEF OP_LE = 11
DEF OP_LT = 12
DEF OP_GE = 13
DEF OP_GT = 14
DEF OP_JMP = 15
DEF OP_JZ = 16
DEF OP_JNZ = 17
DEF OP_HALT = 18

DEF STATUS_OK = 0
DEF STATUS_STEPS = 1
DEF STATUS_OVERFLOW = 2


cdef int _run(const long long[::1] ops, const long long[::1] args,
              long long word, int length, const int* digits, int n_digits,
              long long* locs, int n_locals, int n_scalars,
              long long* stack, long long step_budget,
              long long* result) noexcept nogil:
    """One evaluation.  Oracle: binary word bits when digits is NULL,
    otherwise the digit array; zero beyond the given length either way."""
    cdef long long pc = 0, steps = 0, a, v, idx
    cdef int sp = -1, op
    cdef int i
    for i in range(n_scalars, n_locals):
        locs[i] = 0
    while True:
        steps += 1
        if steps > step_budget:
            return STATUS_STEPS
        op = <int> ops[pc]
        a = args[pc]
        pc += 1
        if op == OP_PUSH:
            sp += 1
            stack[sp] = a
        elif op == OP_LOAD:
            sp += 1
            stack[sp] = locs[a]
        elif op == OP_STORE:
            locs[a] = stack[sp]
            sp -= 1
        elif op == OP_ORACLE:
            idx = stack[sp]
            if digits == NULL:
                if 0 <= idx < length:
                    stack[sp] = (word >> (length - 1 - idx)) & 1
                else:
                    stack[sp] = 0
            else:
                if 0 <= idx < n_digits:
                    stack[sp] = digits[idx]
                else:
                    stack[sp] = 0
        elif op == OP_ADD:
            v = stack[sp - 1] + stack[sp]
            if v > VALUE_CAP_C:
                return STATUS_OVERFLOW
            sp -= 1
            stack[sp] = v
        elif op == OP_SUB:
            v = stack[sp - 1] - stack[sp]
            sp -= 1
            stack[sp] = v if v > 0 else 0
        elif op == OP_MUL:
            if stack[sp] != 0 and stack[sp - 1] > VALUE_CAP_C / stack[sp]:
                return STATUS_OVERFLOW
            v = stack[sp - 1] * stack[sp]
            sp -= 1
            stack[sp] = v
        elif op == OP_DIV:
            stack[sp] = stack[sp] // a
        elif op == OP_MOD:
            stack[sp] = stack[sp] % a
        elif op == OP_EQ:
            v = 1 if stack[sp - 1] == stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_NE:
            v = 1 if stack[sp - 1] != stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_LE:
            v = 1 if stack[sp - 1] <= stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_LT:
            v = 1 if stack[sp - 1] < stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_GE:
            v = 1 if stack[sp - 1] >= stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_GT:
            v = 1 if stack[sp - 1] > stack[sp] else 0
            sp -= 1
            stack[sp] = v
        elif op == OP_JMP:
            pc = a
        elif op == OP_JZ:
            if stack[sp] == 0:
                pc = a
            sp -= 1
        elif op == OP_JNZ:
            if stack[sp] != 0:
                pc = a
            sp -= 1
        else:  # OP_HALT
            result[0] = stack[sp]
            return STATUS_OK


cdef _raise(int status, long long step_budget):
    if status == STATUS_STEPS:
        raise StepBudgetError(f"evaluation exceeded step budget {step_budget}")
    raise ValueOverflowError(f"value exceeds cap {VALUE_CAP_C}")


def _code_arrays(code):
    ops = np.asarray(code.ops, dtype=np.int64)
    args = np.asarray(code.args, dtype=np.int64)
    return ops, args


def eval_word(code, word, length, scalars, step_budget):
    cdef long long[::1] ops
    cdef long long[::1] args
    ops_a, args_a = _code_arrays(code)
    ops = ops_a
    args = args_a
    cdef int n_locals = max(code.n_locals, 1)
    cdef long long* locs = <long long*> malloc(n_locals * sizeof(long long))
    cdef long long* stack = <long long*> malloc(code.max_stack * sizeof(long long))
    if locs == NULL or stack == NULL:
        free(locs); free(stack)
        raise MemoryError()
    cdef long long result = 0
    cdef int status
    cdef int i
    try:
        for i in range(code.n_scalars):
            locs[i] = scalars[i]
        status = _run(ops, args, word, length, NULL, 0, locs, code.n_locals,
                      code.n_scalars, stack, step_budget, &result)
        if status != STATUS_OK:
            _raise(status, step_budget)
        return result
    finally:
        free(locs)
        free(stack)


def values_on_words(code, depth, scalars, step_budget):
    out_arr = np.empty(1 << depth, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long[::1] ops
    cdef long long[::1] args
    ops_a, args_a = _code_arrays(code)
    ops = ops_a
    args = args_a
    cdef int n_locals = max(code.n_locals, 1)
    cdef int d = depth
    cdef long long budget = step_budget
    cdef long long* locs = <long long*> malloc(n_locals * sizeof(long long))
    cdef long long* stack = <long long*> malloc(code.max_stack * sizeof(long long))
    if locs == NULL or stack == NULL:
        free(locs); free(stack)
        raise MemoryError()
    cdef long long result = 0, w
    cdef long long total = (<long long>1) << d
    cdef int status = STATUS_OK
    cdef int i
    cdef int nl = code.n_locals, ns = code.n_scalars
    try:
        for i in range(ns):
            locs[i] = scalars[i]
        with nogil:
            for w in range(total):
                status = _run(ops, args, w, d, NULL, 0, locs, nl, ns,
                              stack, budget, &result)
                if status != STATUS_OK:
                    break
                out[w] = result
        if status != STATUS_OK:
            _raise(status, budget)
        return out_arr
    finally:
        free(locs)
        free(stack)


def values_on_grid(code, radices, scalars, step_budget):
    cdef int m = len(radices)
    cdef long long total = 1
    for r in radices:
        total *= r
    out_arr = np.empty(total, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long[::1] ops
    cdef long long[::1] args
    ops_a, args_a = _code_arrays(code)
    ops = ops_a
    args = args_a
    cdef int n_locals = max(code.n_locals, 1)
    cdef long long budget = step_budget
    cdef long long* locs = <long long*> malloc(n_locals * sizeof(long long))
    cdef long long* stack = <long long*> malloc(code.max_stack * sizeof(long long))
    cdef int* digits = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* rads = <int*> malloc(max(m, 1) * sizeof(int))
    if locs == NULL or stack == NULL or digits == NULL or rads == NULL:
        free(locs); free(stack); free(digits); free(rads)
        raise MemoryError()
    cdef long long result = 0, idx
    cdef int status = STATUS_OK
    cdef int i, pos
    cdef int nl = code.n_locals, ns = code.n_scalars
    try:
        for i in range(ns):
            locs[i] = scalars[i]
        for i in range(m):
            digits[i] = 0
            rads[i] = radices[i]
        with nogil:
            for idx in range(total):
                status = _run(ops, args, 0, 0, digits, m, locs, nl, ns,
                              stack, budget, &result)
                if status != STATUS_OK:
                    break
                out[idx] = result
                pos = m - 1
                while pos >= 0:
                    digits[pos] += 1
                    if digits[pos] < rads[pos]:
                        break
                    digits[pos] = 0
                    pos -= 1
        if status != STATUS_OK:
            _raise(status, budget)
        return out_arr
    finally:
        free(locs)
        free(stack)
        free(digits)
        free(rads)


def least_constant_depth(vals, depth):
    arr = np.ascontiguousarray(vals, dtype=np.int64)
    cdef long long[::1] v = arr
    cdef long long n = v.shape[0]
    cdef int d = depth
    cdef int best = 0, tz, need
    cdef long long p, prev, cur
    prev = v[0]
    for p in range(1, n):
        cur = v[p]
        if cur != prev:
            tz = 0
            while not (p >> tz) & 1:
                tz += 1
            need = d - tz
            if need > best:
                best = need
                if best == d:
                    return best
        prev = cur
    return best


def grid_least_constant_depth(vals, radices):
    arr = np.ascontiguousarray(vals, dtype=np.int64)
    cdef long long[::1] v = arr
    cdef long long n = v.shape[0]
    cdef int m = len(radices)
    rad_arr = np.asarray(radices, dtype=np.int64)
    cdef long long[::1] rads = rad_arr
    cdef int best = 0, t, need
    cdef long long p, q, prev, cur
    prev = v[0]
    for p in range(1, n):
        cur = v[p]
        if cur != prev:
            q = p
            t = 0
            while t < m and q % rads[m - 1 - t] == 0:
                q //= rads[m - 1 - t]
                t += 1
            need = m - t
            if need > best:
                best = need
                if best == m:
                    return best
        prev = cur
    return best

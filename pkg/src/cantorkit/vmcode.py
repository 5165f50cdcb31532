"""Compile DSL expressions to a small stack-machine bytecode.

Both kernel backends (compiled and pure Python) execute the same code
objects, so cross-backend agreement is a matter of one shared compiler.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dsl import Apply, Bin, Def, Expr, If, Lit, Mu, Name
from .errors import DslNameError

PUSH = 0
LOAD = 1
STORE = 2
ORACLE = 3
ADD = 4
SUB = 5
MUL = 6
DIV = 7
MOD = 8
EQ = 9
NE = 10
LE = 11
LT = 12
GE = 13
GT = 14
JMP = 15
JZ = 16
JNZ = 17
HALT = 18

CMP_CODE = {"==": EQ, "!=": NE, "<=": LE, "<": LT, ">=": GE, ">": GT}
BIN_CODE = {"+": ADD, "-": SUB, "*": MUL, "/": DIV, "%": MOD}


@dataclass(frozen=True)
class VmCode:
    ops: tuple[int, ...]
    args: tuple[int, ...]
    n_scalars: int
    n_locals: int
    max_stack: int


class _Emitter:
    def __init__(self, oracle: str, scalars: tuple[str, ...]):
        self.oracle = oracle
        self.slots: dict[str, int] = {name: i for i, name in enumerate(scalars)}
        self.n_locals = len(scalars)
        self.ops: list[int] = []
        self.args: list[int] = []
        self.depth = 0
        self.max_depth = 0

    def emit(self, op: int, arg: int = 0, effect: int = 0) -> int:
        self.ops.append(op)
        self.args.append(arg)
        self.depth += effect
        self.max_depth = max(self.max_depth, self.depth)
        return len(self.ops) - 1

    def patch(self, at: int, target: int) -> None:
        self.args[at] = target

    def here(self) -> int:
        return len(self.ops)

    def expr(self, e: Expr) -> None:
        if isinstance(e, Lit):
            self.emit(PUSH, e.value, +1)
        elif isinstance(e, Name):
            if e.ident == self.oracle:
                raise DslNameError(
                    f"oracle parameter {e.ident!r} used as a value", *e.pos
                )
            slot = self.slots.get(e.ident)
            if slot is None:
                raise DslNameError(f"unbound name {e.ident!r}", *e.pos)
            self.emit(LOAD, slot, +1)
        elif isinstance(e, Apply):
            if e.fn != self.oracle:
                raise DslNameError(
                    f"{e.fn!r} is not the oracle parameter and cannot be applied",
                    *e.pos,
                )
            self.expr(e.arg)
            self.emit(ORACLE, 0, 0)
        elif isinstance(e, Bin):
            if e.op in ("/", "%"):
                self.expr(e.left)
                self.emit(BIN_CODE[e.op], e.right.value, 0)
            else:
                self.expr(e.left)
                self.expr(e.right)
                self.emit(BIN_CODE[e.op], 0, -1)
        elif isinstance(e, If):
            self.expr(e.left)
            self.expr(e.right)
            self.emit(CMP_CODE[e.cmp], 0, -1)
            jz = self.emit(JZ, 0, -1)
            self.expr(e.then)
            jend = self.emit(JMP, 0, 0)
            self.patch(jz, self.here())
            self.depth -= 1  # both branches leave one value
            self.expr(e.orelse)
            self.patch(jend, self.here())
        elif isinstance(e, Mu):
            slot = self.n_locals
            self.n_locals += 1
            saved = self.slots.get(e.var)
            self.slots[e.var] = slot
            self.emit(PUSH, 0, +1)
            self.emit(STORE, slot, -1)
            cond = self.here()
            self.expr(e.left)
            self.expr(e.right)
            self.emit(CMP_CODE[e.cmp], 0, -1)
            jfound = self.emit(JNZ, 0, -1)
            self.emit(LOAD, slot, +1)
            self.emit(PUSH, e.bound, +1)
            self.emit(GE, 0, -1)
            jfail = self.emit(JNZ, 0, -1)
            self.emit(LOAD, slot, +1)
            self.emit(PUSH, 1, +1)
            self.emit(ADD, 0, -1)
            self.emit(STORE, slot, -1)
            self.emit(JMP, cond, 0)
            self.patch(jfail, self.here())
            self.emit(PUSH, e.bound + 1, +1)
            jend = self.emit(JMP, 0, 0)
            self.patch(jfound, self.here())
            self.depth -= 1  # the two arms merge on one value
            self.emit(LOAD, slot, +1)
            self.patch(jend, self.here())
            if saved is None:
                del self.slots[e.var]
            else:
                self.slots[e.var] = saved
        else:
            raise TypeError(f"not an expression: {e!r}")


def compile_def(d: Def) -> VmCode:
    """Compile a definition whose first parameter is the bit oracle.

    Remaining parameters become scalar arguments supplied at call time.
    """
    if not d.params:
        raise DslNameError(f"{d.name!r} needs at least the oracle parameter")
    em = _Emitter(d.params[0], d.params[1:])
    em.expr(d.body)
    em.emit(HALT, 0, -1)
    return VmCode(
        ops=tuple(em.ops),
        args=tuple(em.args),
        n_scalars=len(d.params) - 1,
        n_locals=em.n_locals,
        max_stack=max(em.max_depth, 1),
    )

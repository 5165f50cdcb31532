"""The functional-definition DSL: AST, parser, and printer.

A program is a list of ``func`` definitions.  Expressions are total by
construction: no recursion, no unbounded loops, and every ``mu`` search
carries an explicit literal bound.

    program := def+
    def     := "func" NAME "(" params ")" "=" expr
    expr    := "if" arith cmp arith "then" expr "else" expr
             | "mu" NAME "<=" NAT ":" arith cmp arith
             | arith
    arith   := term (("+" | "-") term)*
    term    := factor (("*" | "/" | "%") factor)*
    factor  := NAT | NAME | NAME "(" expr ")" | "(" expr ")"
    cmp     := "==" | "!=" | "<=" | "<" | ">=" | ">"

"-" is truncated subtraction on naturals.  "/" and "%" require a literal
right operand.  The real-function dialect reads the single parameter as a
real variable and folds literal "/" into rational constants; it is selected
by the consumer, not by syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .errors import DslNameError, DslSyntaxError

KEYWORDS = {"func", "if", "then", "else", "mu"}
CMP_OPS = ("==", "!=", "<=", "<", ">=", ">")
ADD_OPS = ("+", "-")
MUL_OPS = ("*", "/", "%")


# AST nodes.  Positions ride along for diagnostics but stay out of equality
# so printed-and-reparsed trees compare equal.

@dataclass(frozen=True)
class Expr:
    pos: tuple[int, int] = field(default=(0, 0), compare=False, kw_only=True)


@dataclass(frozen=True)
class Lit(Expr):
    value: int = 0


@dataclass(frozen=True)
class Name(Expr):
    ident: str = ""


@dataclass(frozen=True)
class Apply(Expr):
    fn: str = ""
    arg: Expr = None


@dataclass(frozen=True)
class Bin(Expr):
    op: str = ""
    left: Expr = None
    right: Expr = None


@dataclass(frozen=True)
class If(Expr):
    left: Expr = None
    cmp: str = ""
    right: Expr = None
    then: Expr = None
    orelse: Expr = None


@dataclass(frozen=True)
class Mu(Expr):
    var: str = ""
    bound: int = 0
    left: Expr = None
    cmp: str = ""
    right: Expr = None


@dataclass(frozen=True)
class Def:
    name: str
    params: tuple[str, ...]
    body: Expr


@dataclass(frozen=True)
class DslProgram:
    defs: tuple[Def, ...]

    def __getitem__(self, name: str) -> Def:
        for d in self.defs:
            if d.name == name:
                return d
        raise DslNameError(f"no definition named {name!r}")

    def names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.defs)


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "nat", "sym"
    text: str
    line: int
    column: int


_SYMBOLS = ("==", "!=", "<=", ">=", "<", ">", "(", ")", ",", "=", "+", "-", "*", "/", "%", ":")


def _tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("nat", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if source.startswith(sym, i):
                tokens.append(Token("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise DslSyntaxError(f"unexpected character {c!r}", line, col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def _peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _error(self, message: str) -> DslSyntaxError:
        t = self._peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else Token("sym", "", 1, 1)
            return DslSyntaxError(f"{message}, found end of input", last.line, last.column)
        return DslSyntaxError(f"{message}, found {t.text!r}", t.line, t.column)

    def _next(self, message: str) -> Token:
        t = self._peek()
        if t is None:
            raise self._error(message)
        self.i += 1
        return t

    def _expect_sym(self, sym: str) -> Token:
        t = self._peek()
        if t is None or t.kind != "sym" or t.text != sym:
            raise self._error(f"expected {sym!r}")
        self.i += 1
        return t

    def _expect_name(self, what: str) -> Token:
        t = self._peek()
        if t is None or t.kind != "name" or t.text in KEYWORDS:
            raise self._error(f"expected {what}")
        self.i += 1
        return t

    def _at_keyword(self, kw: str) -> bool:
        t = self._peek()
        return t is not None and t.kind == "name" and t.text == kw

    def program(self) -> DslProgram:
        defs = []
        while self._peek() is not None:
            defs.append(self.defn())
        if not defs:
            raise DslSyntaxError("empty program", 1, 1)
        seen = set()
        for d in defs:
            if d.name in seen:
                raise DslNameError(f"duplicate definition of {d.name!r}")
            seen.add(d.name)
        return DslProgram(tuple(defs))

    def defn(self) -> Def:
        if not self._at_keyword("func"):
            raise self._error("expected 'func'")
        self.i += 1
        name = self._expect_name("function name").text
        self._expect_sym("(")
        params = [self._expect_name("parameter name").text]
        while self._peek() is not None and self._peek().text == ",":
            self.i += 1
            params.append(self._expect_name("parameter name").text)
        self._expect_sym(")")
        self._expect_sym("=")
        if len(set(params)) != len(params):
            raise DslNameError(f"duplicate parameter in {name!r}")
        body = self.expr(frozenset(params))
        return Def(name, tuple(params), body)

    def expr(self, scope: frozenset[str]) -> Expr:
        if self._at_keyword("if"):
            t = self._next("if")
            left = self.arith(scope)
            cmp = self._cmp()
            right = self.arith(scope)
            if not self._at_keyword("then"):
                raise self._error("expected 'then'")
            self.i += 1
            then = self.expr(scope)
            if not self._at_keyword("else"):
                raise self._error("expected 'else'")
            self.i += 1
            orelse = self.expr(scope)
            return If(left=left, cmp=cmp, right=right, then=then, orelse=orelse,
                      pos=(t.line, t.column))
        if self._at_keyword("mu"):
            t = self._next("mu")
            var = self._expect_name("search variable").text
            self._expect_sym("<=")
            bound_tok = self._peek()
            if bound_tok is None or bound_tok.kind != "nat":
                raise self._error("expected literal bound after 'mu ... <='")
            self.i += 1
            self._expect_sym(":")
            inner = scope | {var}
            left = self.arith(inner)
            cmp = self._cmp()
            right = self.arith(inner)
            return Mu(var=var, bound=int(bound_tok.text), left=left, cmp=cmp,
                      right=right, pos=(t.line, t.column))
        return self.arith(scope)

    def _cmp(self) -> str:
        t = self._peek()
        if t is None or t.kind != "sym" or t.text not in CMP_OPS:
            raise self._error("expected comparison operator")
        self.i += 1
        return t.text

    def arith(self, scope: frozenset[str]) -> Expr:
        node = self.term(scope)
        while True:
            t = self._peek()
            if t is None or t.kind != "sym" or t.text not in ADD_OPS:
                return node
            self.i += 1
            right = self.term(scope)
            node = Bin(op=t.text, left=node, right=right, pos=(t.line, t.column))

    def term(self, scope: frozenset[str]) -> Expr:
        node = self.factor(scope)
        while True:
            t = self._peek()
            if t is None or t.kind != "sym" or t.text not in MUL_OPS:
                return node
            self.i += 1
            right = self.factor(scope)
            if t.text in ("/", "%") and not isinstance(right, Lit):
                raise DslSyntaxError(
                    f"right operand of {t.text!r} must be a literal", t.line, t.column
                )
            if t.text in ("/", "%") and right.value == 0:
                raise DslSyntaxError("division by zero literal", t.line, t.column)
            node = Bin(op=t.text, left=node, right=right, pos=(t.line, t.column))

    def factor(self, scope: frozenset[str]) -> Expr:
        t = self._peek()
        if t is None:
            raise self._error("expected expression")
        if t.kind == "nat":
            self.i += 1
            return Lit(value=int(t.text), pos=(t.line, t.column))
        if t.kind == "name" and t.text not in KEYWORDS:
            self.i += 1
            if t.text not in scope:
                raise DslNameError(f"unbound name {t.text!r}", t.line, t.column)
            nxt = self._peek()
            if nxt is not None and nxt.kind == "sym" and nxt.text == "(":
                self.i += 1
                arg = self.expr(scope)
                self._expect_sym(")")
                return Apply(fn=t.text, arg=arg, pos=(t.line, t.column))
            return Name(ident=t.text, pos=(t.line, t.column))
        if t.kind == "sym" and t.text == "(":
            self.i += 1
            node = self.expr(scope)
            self._expect_sym(")")
            return node
        raise self._error("expected expression")


def parse(source: str) -> DslProgram:
    """Parse a whole program; raises DslSyntaxError/DslNameError with positions."""
    return _Parser(_tokenize(source)).program()


def parse_expr(source: str, params: tuple[str, ...]) -> Expr:
    """Parse a single expression over the given parameter names."""
    p = _Parser(_tokenize(source))
    node = p.expr(frozenset(params))
    if p._peek() is not None:
        raise p._error("trailing input after expression")
    return node


def _atom(e: Expr) -> str:
    s = print_expr(e)
    if isinstance(e, (Lit, Name, Apply)):
        return s
    return f"({s})"


def print_expr(e: Expr) -> str:
    """Canonical text form; parse(print_expr(e)) reproduces e."""
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Apply):
        return f"{e.fn}({print_expr(e.arg)})"
    if isinstance(e, Bin):
        return f"{_atom(e.left)} {e.op} {_atom(e.right)}"
    if isinstance(e, If):
        return (
            f"if {_atom(e.left)} {e.cmp} {_atom(e.right)} "
            f"then {_atom(e.then)} else {_atom(e.orelse)}"
        )
    if isinstance(e, Mu):
        return f"mu {e.var} <= {e.bound} : {_atom(e.left)} {e.cmp} {_atom(e.right)}"
    raise TypeError(f"not an expression: {e!r}")


def print_def(d: Def) -> str:
    return f"func {d.name}({', '.join(d.params)}) = {print_expr(d.body)}"


def print_program(p: DslProgram) -> str:
    return "\n".join(print_def(d) for d in p.defs) + "\n"

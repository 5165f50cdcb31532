"""Real functions on [0, 1] by exact interval arithmetic, and their
search-backed analysis: uniform-continuity certificates, positivity bounds,
suprema, Riemann integration, finite subcovers, and finiteness bounds.

Real functions come from the DSL's real dialect (polynomials and piecewise
expressions over one variable with rational literals) or from explicit
coefficient lists.  Evaluation is exact: rational interval arithmetic
refined until the output interval is narrow enough for the requested
precision, with a polynomial fast path for exact rational arguments.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import dsl
from .budget import add_work, ensure_within_budget, work_budget
from .core_seq import BinWord
from .dyadic import Dyadic, ExactReal, round_to_grid
from .errors import DomainError, DslNameError, UncertifiedError
from .fan import uniform_modulus
from .functional_eval import Functional2


@dataclass(frozen=True)
class RealCaps:
    """Knobs for the certified real-analysis searches."""

    start_depth: int = 4
    max_depth: int = 64
    grid_depth: int = 12
    refine_cap: int = 96
    integrate_max_log: int = 22
    budget: int | None = None


DEFAULT_CAPS = RealCaps()


# Real-dialect expression trees

@dataclass(frozen=True)
class RConst:
    value: Fraction


@dataclass(frozen=True)
class RVar:
    pass


@dataclass(frozen=True)
class RBin:
    op: str  # "+", "-", "*"
    left: "RNode"
    right: "RNode"


@dataclass(frozen=True)
class RPiece:
    left: "RNode"
    cmp: str
    right: "RNode"
    then: "RNode"
    orelse: "RNode"


RNode = RConst | RVar | RBin | RPiece


def _lower(e: dsl.Expr, var: str) -> RNode:
    if isinstance(e, dsl.Lit):
        return RConst(Fraction(e.value))
    if isinstance(e, dsl.Name):
        if e.ident != var:
            raise DslNameError(f"unbound name {e.ident!r} in real expression", *e.pos)
        return RVar()
    if isinstance(e, dsl.Bin):
        if e.op == "/":
            left = _lower(e.left, var)
            if not isinstance(left, RConst):
                raise DslNameError(
                    "'/' in the real dialect only forms rational literals", *e.pos
                )
            return RConst(left.value / e.right.value)
        if e.op == "%":
            raise DslNameError("'%' is not available in the real dialect", *e.pos)
        return RBin(e.op, _lower(e.left, var), _lower(e.right, var))
    if isinstance(e, dsl.If):
        return RPiece(_lower(e.left, var), e.cmp, _lower(e.right, var),
                      _lower(e.then, var), _lower(e.orelse, var))
    if isinstance(e, dsl.Apply):
        raise DslNameError("oracle application is not available in the real dialect",
                           *e.pos)
    if isinstance(e, dsl.Mu):
        raise DslNameError("'mu' is not available in the real dialect", *e.pos)
    raise TypeError(f"not an expression: {e!r}")


def _poly_of(node: RNode) -> list[Fraction] | None:
    """Coefficients (ascending) when the tree is a polynomial, else None."""
    if isinstance(node, RConst):
        return [node.value]
    if isinstance(node, RVar):
        return [Fraction(0), Fraction(1)]
    if isinstance(node, RBin):
        a = _poly_of(node.left)
        b = _poly_of(node.right)
        if a is None or b is None:
            return None
        if node.op == "+":
            out = [Fraction(0)] * max(len(a), len(b))
            for i, c in enumerate(a):
                out[i] += c
            for i, c in enumerate(b):
                out[i] += c
            return out
        if node.op == "-":
            out = [Fraction(0)] * max(len(a), len(b))
            for i, c in enumerate(a):
                out[i] += c
            for i, c in enumerate(b):
                out[i] -= c
            return out
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c:
                for j, d in enumerate(b):
                    out[i + j] += c * d
        return out
    return None


def _xeval(node: RNode, x: Fraction) -> Fraction:
    if isinstance(node, RConst):
        return node.value
    if isinstance(node, RVar):
        return x
    if isinstance(node, RBin):
        a = _xeval(node.left, x)
        b = _xeval(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    a = _xeval(node.left, x)
    b = _xeval(node.right, x)
    return _xeval(node.then if _cmp_frac(node.cmp, a, b) else node.orelse, x)


def _cmp_frac(op: str, a: Fraction, b: Fraction) -> bool:
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    if op == "<=":
        return a <= b
    if op == "<":
        return a < b
    if op == ">=":
        return a >= b
    return a > b


def _decide(op: str, a: tuple[Fraction, Fraction],
            b: tuple[Fraction, Fraction]) -> bool | None:
    la, ha = a
    lb, hb = b
    if op == "==":
        if la == ha == lb == hb:
            return True
        if ha < lb or hb < la:
            return False
        return None
    if op == "!=":
        inner = _decide("==", a, b)
        return None if inner is None else not inner
    if op == "<=":
        if ha <= lb:
            return True
        if la > hb:
            return False
        return None
    if op == "<":
        if ha < lb:
            return True
        if la >= hb:
            return False
        return None
    if op == ">=":
        return _decide("<=", b, a)
    return _decide("<", b, a)


def _ieval(node: RNode, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    if isinstance(node, RConst):
        return node.value, node.value
    if isinstance(node, RVar):
        return lo, hi
    if isinstance(node, RBin):
        la, ha = _ieval(node.left, lo, hi)
        lb, hb = _ieval(node.right, lo, hi)
        if node.op == "+":
            return la + lb, ha + hb
        if node.op == "-":
            return la - hb, ha - lb
        products = (la * lb, la * hb, ha * lb, ha * hb)
        return min(products), max(products)
    verdict = _decide(node.cmp, _ieval(node.left, lo, hi),
                      _ieval(node.right, lo, hi))
    if verdict is True:
        return _ieval(node.then, lo, hi)
    if verdict is False:
        return _ieval(node.orelse, lo, hi)
    lt, ht = _ieval(node.then, lo, hi)
    le, he = _ieval(node.orelse, lo, hi)
    return min(lt, le), max(ht, he)


# Raw-pair interval evaluation: identical bounds to _ieval, but on unreduced
# (numerator, positive denominator) pairs so hot loops skip Fraction's gcd.

_Raw = tuple[int, int]


def _rcmp(a: _Raw, b: _Raw) -> int:
    d = a[0] * b[1] - b[0] * a[1]
    return (d > 0) - (d < 0)


def _ieval_raw(node: RNode, lo: _Raw, hi: _Raw) -> tuple[_Raw, _Raw]:
    if isinstance(node, RConst):
        c = (node.value.numerator, node.value.denominator)
        return c, c
    if isinstance(node, RVar):
        return lo, hi
    if isinstance(node, RBin):
        (lan, lad), (han, had) = _ieval_raw(node.left, lo, hi)
        (lbn, lbd), (hbn, hbd) = _ieval_raw(node.right, lo, hi)
        if node.op == "+":
            return (lan * lbd + lbn * lad, lad * lbd), (han * hbd + hbn * had, had * hbd)
        if node.op == "-":
            return (lan * hbd - hbn * lad, lad * hbd), (han * lbd - lbn * had, had * lbd)
        products = ((lan * lbn, lad * lbd), (lan * hbn, lad * hbd),
                    (han * lbn, had * lbd), (han * hbn, had * hbd))
        mn = mx = products[0]
        for p in products[1:]:
            if _rcmp(p, mn) < 0:
                mn = p
            if _rcmp(p, mx) > 0:
                mx = p
        return mn, mx
    a = _ieval_raw(node.left, lo, hi)
    b = _ieval_raw(node.right, lo, hi)
    verdict = _decide(node.cmp,
                      (Fraction(*a[0]), Fraction(*a[1])),
                      (Fraction(*b[0]), Fraction(*b[1])))
    if verdict is True:
        return _ieval_raw(node.then, lo, hi)
    if verdict is False:
        return _ieval_raw(node.orelse, lo, hi)
    lt, ht = _ieval_raw(node.then, lo, hi)
    le, he = _ieval_raw(node.orelse, lo, hi)
    return (lt if _rcmp(lt, le) <= 0 else le), (ht if _rcmp(ht, he) >= 0 else he)


class RealFunction:
    """A function [0,1] -> R queried at finite precision.

    approx_at(x, p) returns a dyadic within 2**-p of F(x); exact rational
    inputs take the exact-evaluation path, others are refined by interval
    arithmetic until the output interval narrows.
    """

    def __init__(self, node: RNode, name: str = "F",
                 refine_cap: int = DEFAULT_CAPS.refine_cap):
        self.node = node
        self.name = name
        self.poly = _poly_of(node)
        self.refine_cap = refine_cap
        self._uc_cache: dict[int, "UcCertificate"] = {}

    @staticmethod
    def from_dsl(source: str | dsl.Def, name: str | None = None) -> "RealFunction":
        if isinstance(source, str):
            program = dsl.parse(source)
            d = program[name] if name is not None else program.defs[0]
        else:
            d = source
        if len(d.params) != 1:
            raise DslNameError(
                f"real function {d.name!r} must have exactly one parameter"
            )
        return RealFunction(_lower(d.body, d.params[0]), name=d.name)

    @staticmethod
    def from_poly(coeffs: Sequence[Fraction | int], name: str = "poly") -> "RealFunction":
        node: RNode = RConst(Fraction(coeffs[0])) if coeffs else RConst(Fraction(0))
        for i, c in enumerate(coeffs[1:], start=1):
            term: RNode = RConst(Fraction(c))
            for _ in range(i):
                term = RBin("*", term, RVar())
            node = RBin("+", node, term)
        return RealFunction(node, name=name)

    def apply_exact(self, x: Fraction) -> Fraction:
        if self.poly is not None:
            acc = Fraction(0)
            for c in reversed(self.poly):
                acc = acc * x + c
            return acc
        return _xeval(self.node, x)

    def apply_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        return _ieval(self.node, lo, hi)

    def approx_at(self, x: ExactReal, p: int) -> Dyadic:
        if x.exact is not None:
            return round_to_grid(self.apply_exact(x.exact), p + 2)
        width = Fraction(1, 1 << (p + 1))
        for t in range(p + 2, p + 2 + self.refine_cap, 2):
            lo, hi = x.interval(t)
            flo, fhi = self.apply_interval(lo, hi)
            if fhi - flo <= width:
                return round_to_grid((flo + fhi) / 2, p + 2)
        raise UncertifiedError(
            f"{self.name!r} did not narrow to 2^-{p} after refining the input "
            f"to {p + self.refine_cap} bits; refusing (discontinuity suspected)"
        )

    def grid_nums(self, denom_log: int, p: int) -> list[int]:
        """[F](p) at every j/2**denom_log as integers scaled by 2**(p+2).

        Entry j equals approx_at(j/2**denom_log, p) exactly; polynomials take
        an all-integer Horner path (round_to_grid is scale invariant, so the
        unreduced value gives the same rounding).
        """
        g = p + 2
        n = (1 << denom_log) + 1
        if self.poly is None:
            out = []
            for j in range(n):
                v = self.approx_at(ExactReal.from_fraction(
                    Fraction(j, 1 << denom_log)), p)
                out.append(v.num << (g - v.exp))
            return out
        q = 1
        for c in self.poly:
            q = q * c.denominator // math.gcd(q, c.denominator)
        scaled = [c.numerator * (q // c.denominator) for c in self.poly]
        d = len(scaled) - 1
        big_q = q << (denom_log * d)
        out = []
        for j in range(n):
            acc = 0
            for i in range(d, -1, -1):
                acc = acc * j + (scaled[i] << (denom_log * (d - i)))
            out.append((2 * acc * (1 << g) + big_q) // (2 * big_q))
        return out

    def __repr__(self) -> str:
        return f"RealFunction({self.name!r})"


def _grid_values(f: RealFunction, denom_log: int, p: int,
                 budget: int | None = None) -> tuple[list[int], int]:
    """[F](p) at every j/2**denom_log as integers with their power-of-two scale."""
    n = (1 << denom_log) + 1
    ensure_within_budget(n, budget)
    add_work(n)
    return f.grid_nums(denom_log, p), p + 2


# Digit encoding: Cantor points as reals, values as base-2**k0 digits.

class _DigitFunctional(Functional2):
    """j = floor of the canonical k0-approximant of F at the point's real,
    scaled by 2**k0.

    The approximant is computed from prefix intervals alone (never from the
    point's exact value), so the digit depends on finitely many bits and the
    depth-stabilized modulus search applies to it.  Prefixes are carried as
    (integer, length) pairs and stop tests are memoized; every evaluation
    path (single point, bulk fill, subtree constancy, modulus analysis) goes
    through the same memo, so they cannot disagree.
    """

    def __init__(self, f: RealFunction, k0: int, caps: RealCaps = DEFAULT_CAPS):
        super().__init__(f"digit_{f.name}_{k0}", fn=self._eval_point,
                         bulk_hook=self._bulk, cone_hook=self._cone,
                         analyze_hook=self._analyze)
        self.f = f
        self.k0 = k0
        self.caps = caps
        self._memo: dict[tuple[int, int], int | None] = {}

    def _stop(self, num: int, t: int) -> int | None:
        """Digit if the first t bits (value `num`) already pin it, else None."""
        key = (num, t)
        if key in self._memo:
            return self._memo[key]
        den = 1 << t
        (flon, flod), (fhin, fhid) = _ieval_raw(self.f.node, (num, den),
                                                (num + 1, den))
        j: int | None = None
        if (fhin * flod - flon * fhid) << (self.k0 + 1) <= flod * fhid:
            g = 1 << (self.k0 + 2)
            v = (2 * flon * g + flod) // (2 * flod)
            j = v >> 2
            if j < 0:
                raise DomainError(
                    f"digit encoding needs F >= 0 on [0,1]; "
                    f"got approximant {Fraction(v, g)}"
                )
        self._memo[key] = j
        return j

    def _eval_point(self, point) -> int:
        num = 0
        for t in range(self.caps.refine_cap + 1):
            j = self._stop(num, t)
            if j is not None:
                return j
            num = (num << 1) | point.bit(t)
        raise UncertifiedError(
            f"{self.name!r} needed more than {self.caps.refine_cap} input bits"
        )

    def _settle_leaf(self, num: int, t: int) -> int:
        # All later bits are zero: shrink the tail interval until it stops.
        while t <= self.caps.refine_cap:
            j = self._stop(num, t)
            if j is not None:
                return j
            num <<= 1
            t += 1
        raise UncertifiedError(
            f"{self.name!r} needed more than {self.caps.refine_cap} input bits"
        )

    def _cone(self, word: BinWord, depth: int, scalars=()) -> tuple[bool, int]:
        limit = work_budget(self.caps.budget)
        visited = [0]

        def rec(num: int, t: int) -> tuple[bool, int]:
            visited[0] += 1
            if visited[0] > limit:
                raise WorkBudgetError(f"{self.name!r} cone search exceeded budget")
            j = self._stop(num, t)
            if j is not None:
                return (True, j)
            if t >= depth:
                return (True, self._settle_leaf(num, t))
            c0, v0 = rec(num << 1, t + 1)
            if not c0:
                return (False, v0)
            c1, v1 = rec((num << 1) | 1, t + 1)
            if not c1 or v0 != v1:
                return (False, v0)
            return (True, v0)

        result = rec(word.as_int(), len(word))
        add_work(visited[0])
        return result

    def _analyze(self, depth: int, scalars=()) -> tuple[bool, int, int]:
        """Single pass: (constant, value, least agreement depth) at `depth`."""
        limit = work_budget(self.caps.budget)
        visited = [0]

        def rec(num: int, t: int) -> tuple[bool, int, int]:
            visited[0] += 1
            if visited[0] > limit:
                raise WorkBudgetError(f"{self.name!r} cone search exceeded budget")
            j = self._stop(num, t)
            if j is not None:
                return (True, j, t)
            if t >= depth:
                return (True, self._settle_leaf(num, t), t)
            c0, v0, n0 = rec(num << 1, t + 1)
            c1, v1, n1 = rec((num << 1) | 1, t + 1)
            if c0 and c1 and v0 == v1:
                return (True, v0, t)
            return (False, v0, max(n0, n1))

        result = rec(0, 0)
        add_work(visited[0])
        return result

    def _bulk(self, depth: int, scalars=()) -> np.ndarray:
        out = np.empty(1 << depth, dtype=np.int64)

        def rec(num: int, t: int) -> None:
            j = self._stop(num, t)
            if j is not None:
                block = depth - t
                out[num << block:(num + 1) << block] = j
                return
            if t >= depth:
                out[num] = self._settle_leaf(num, t)
                return
            rec(num << 1, t + 1)
            rec((num << 1) | 1, t + 1)

        rec(0, 0)
        return out


def digit_functional(f: RealFunction, k0: int,
                     caps: RealCaps = DEFAULT_CAPS) -> Functional2:
    """The type-2 functional reading a point as a real in [0,1] (bit i has
    weight 2**-(i+1)) and returning F's k0-bit digit there."""
    if k0 < 0:
        raise ValueError("digit precision must be nonnegative")
    return _DigitFunctional(f, k0, caps)


@dataclass(frozen=True)
class UcCertificate:
    n: int
    digit_modulus: int
    stabilized_at: int
    grid_depth: int


def _sliding_max_minus_min(vals: Sequence[int], window: int) -> int:
    maxq: deque[int] = deque()
    minq: deque[int] = deque()
    worst = 0
    for i, v in enumerate(vals):
        while maxq and vals[maxq[-1]] <= v:
            maxq.pop()
        maxq.append(i)
        while minq and vals[minq[-1]] >= v:
            minq.pop()
        minq.append(i)
        lo = i - window + 1
        if maxq[0] < lo:
            maxq.popleft()
        if minq[0] < lo:
            minq.popleft()
        if i >= window - 1:
            spread = vals[maxq[0]] - vals[minq[0]]
            if spread > worst:
                worst = spread
    return worst


def uc_certificate(f: RealFunction, k: int,
                   caps: RealCaps = DEFAULT_CAPS) -> UcCertificate:
    """Certified N: dyadic grid points within 1/N have F-values within 1/k.

    The candidate comes from the stabilized modulus of the digit encoding at
    ceil(log2 k) + 2 guard bits; the certificate is an exhaustive sliding
    window check on the grid, with the precision slack subtracted from the
    tolerance.  N doubles until the check passes, and failure to certify by
    the grid depth is an error, never a silent weakening.
    """
    if k < 1:
        raise ValueError("k must be positive")
    cached = f._uc_cache.get(k)
    if cached is not None:
        return cached
    k0 = (max(k, 1) - 1).bit_length() + 2
    digit = digit_functional(f, k0, caps)
    fr = uniform_modulus(digit, caps.start_depth, caps.max_depth,
                         budget=caps.budget)
    if not fr.certified:
        raise UncertifiedError(
            f"digit encoding of {f.name!r} did not stabilize by depth "
            f"{caps.max_depth}", partial=fr,
        )
    m = fr.modulus
    grid_depth = max(caps.grid_depth, m + 2)
    p = k0 + 6
    vals, scale = _grid_values(f, grid_depth, p, caps.budget)
    tolerance = Fraction(1, k) - Fraction(2, 1 << p)
    # spread/2**scale < tolerance, cross-multiplied once
    spread_limit_num = tolerance.numerator << scale
    while m <= grid_depth - 1:
        window = 1 << (grid_depth - m)
        if _sliding_max_minus_min(vals, window) * tolerance.denominator < spread_limit_num:
            cert = UcCertificate(n=1 << m, digit_modulus=fr.modulus,
                                 stabilized_at=fr.stabilized_at,
                                 grid_depth=grid_depth)
            f._uc_cache[k] = cert
            return cert
        m += 1
    raise UncertifiedError(
        f"could not grid-certify a uniform-continuity bound for {f.name!r} "
        f"at tolerance 1/{k} up to depth {grid_depth}"
    )


def uc_modulus(f: RealFunction, k: int, caps: RealCaps = DEFAULT_CAPS) -> int:
    """The N of the uniform-continuity certificate (see uc_certificate)."""
    return uc_certificate(f, k, caps).n


def positive_lower_bound(f: RealFunction, grid: int) -> int:
    """Returns 2*N0 where 1/N0 is below every grid value; 1/(2*N0) is then a
    grid-certified strictly positive lower bound."""
    if grid < 1:
        raise ValueError("grid size must be positive")
    vals = []
    for i in range(grid + 1):
        x = ExactReal.from_fraction(Fraction(i, grid))
        vals.append(f.approx_at(x, grid).as_fraction())
    add_work(grid + 1)
    mn = min(vals)
    if mn < Fraction(1, grid):
        i = vals.index(mn)
        raise DomainError(
            f"not grid-positive: value {mn} at {i}/{grid} is below 1/{grid}"
        )
    n0 = -(-mn.denominator // mn.numerator)  # ceil(1/mn)
    return 2 * n0


def finite_bound(f: RealFunction, grid: int) -> int:
    """Least natural strictly above |F| on the grid at matching precision."""
    if grid < 1:
        raise ValueError("grid size must be positive")
    mx = Fraction(0)
    for i in range(grid + 1):
        x = ExactReal.from_fraction(Fraction(i, grid))
        v = abs(f.approx_at(x, grid).as_fraction())
        if v > mx:
            mx = v
    add_work(grid + 1)
    return int(mx) + 1


def supremum_on_unit(f: RealFunction, k: int,
                     caps: RealCaps = DEFAULT_CAPS) -> tuple[Dyadic, Dyadic]:
    """(y, z): y within 2**-k of sup F on [0,1], z a grid point nearly
    attaining it.  Grid fineness comes from the uniform-continuity
    certificate at tolerance 2**-(k+1)."""
    cert = uc_certificate(f, 1 << (k + 1), caps)
    depth = max(k + 2, cert.n.bit_length())
    p = k + 4
    vals, scale = _grid_values(f, depth, p, caps.budget)
    best = max(vals)
    arg = vals.index(best)
    y = round_to_grid(Fraction(best, 1 << scale), p)
    return y, Dyadic(arg, depth)


def riemann_sum(f: RealFunction, partition: Sequence[Fraction],
                precision: int) -> Fraction:
    """Left-endpoint Riemann sum over the partition, exact arithmetic."""
    pts = [Fraction(t) for t in partition]
    if len(pts) < 2 or pts[0] != 0 or pts[-1] != 1:
        raise DomainError("partition must run from 0 to 1")
    if any(a >= b for a, b in zip(pts, pts[1:])):
        raise DomainError("partition must be strictly increasing")
    total = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        v = f.approx_at(ExactReal.from_fraction(a), precision).as_fraction()
        total += v * (b - a)
    add_work(len(pts))
    return total


def integrate(f: RealFunction, k: int, caps: RealCaps = DEFAULT_CAPS) -> Dyadic:
    """Integral over [0,1] within 2**-k.

    The uniform-continuity certificate at tolerance 2**-(k+1) fixes the
    starting mesh (cells finer than 1/N keep the left-endpoint error below
    tolerance); refinement then halves the mesh until two successive sums
    differ by at most 2**-(k+1).
    """
    cert = uc_certificate(f, 1 << (k + 1), caps)
    p = k + 4
    m = 1
    while m <= cert.n:
        m <<= 1
    prev = _uniform_sum(f, m, p, caps)
    while True:
        if m > (1 << caps.integrate_max_log):
            raise UncertifiedError(
                f"partition refinement cap reached at {m} cells",
                partial=round_to_grid(prev, p),
            )
        m <<= 1
        cur = _uniform_sum(f, m, p, caps)
        if abs(cur - prev) <= Fraction(1, 1 << (k + 1)):
            return round_to_grid(cur, p)
        prev = cur


def _uniform_sum(f: RealFunction, cells: int, precision: int,
                 caps: RealCaps) -> Fraction:
    ensure_within_budget(cells, caps.budget)
    add_work(cells)
    nums = f.grid_nums(cells.bit_length() - 1, precision)
    return Fraction(sum(nums[:cells]), cells << (precision + 2))


class OpenCover:
    """Indexed open intervals with rational endpoints."""

    def __init__(self, interval_fn: Callable[[int], tuple[Fraction, Fraction]],
                 count: int | None = None, name: str = ""):
        self._fn = interval_fn
        self.count = count
        self.name = name

    @staticmethod
    def from_pairs(pairs: Sequence[tuple[Fraction, Fraction]],
                   name: str = "") -> "OpenCover":
        frozen = [(Fraction(c), Fraction(d)) for c, d in pairs]
        return OpenCover(lambda i: frozen[i], count=len(frozen), name=name)

    def interval(self, i: int) -> tuple[Fraction, Fraction]:
        return self._fn(i)


def finite_subcover(cover: OpenCover, resolution: int, n_cap: int) -> list[int]:
    """Greedy chain of intervals covering [0,1].

    From frontier 0, repeatedly choose the interval (among the first n_cap)
    that strictly contains the frontier and reaches furthest right, breaking
    ties toward the least index, until the frontier passes 1.  The chain is
    then verified to contain every dyadic of the given resolution strictly.
    """
    limit = n_cap if cover.count is None else min(n_cap, cover.count)
    frontier = Fraction(0)
    chosen: list[int] = []
    while frontier <= 1:
        best_d: Fraction | None = None
        best_i = -1
        for i in range(limit):
            c, d = cover.interval(i)
            if c < frontier < d and (best_d is None or d > best_d):
                best_d, best_i = d, i
        if best_d is None:
            raise DomainError(
                f"no finite subcover found within cap: point {frontier} is not "
                f"interior to any of the first {limit} intervals"
            )
        chosen.append(best_i)
        frontier = best_d
        if len(chosen) > limit:  # pragma: no cover - frontier strictly grows
            raise DomainError("no finite subcover found within cap")
    add_work((1 << resolution) + 1)
    intervals = [cover.interval(i) for i in chosen]
    for j in range((1 << resolution) + 1):
        x = Fraction(j, 1 << resolution)
        if not any(c < x < d for c, d in intervals):
            raise UncertifiedError(
                f"chained subcover misses dyadic {x}", partial=chosen
            )
    return chosen

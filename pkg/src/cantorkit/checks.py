"""Cross-check suite: every stabilized search result is replayed against an
independent brute-force aggregation at desk scale.

Each check is isolated: one failing or budget-starved entry never aborts the
suite.  Reports are deterministic given the same budgets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import dsl
from .budget import work_budget
from .core_seq import BinWord, pad
from .corpus import (
    CORPUS, PREDICATE_FIXTURES, SEQ_FIXTURES, TREE_FIXTURES,
    corpus_functional, fixture_functional, fixture_seq, real_function,
)
from .dyadic import ExactReal
from .errors import (
    CantorKitError, StepBudgetError, UncertifiedError, WorkBudgetError,
)
from .fan import bar_fan_modulus, modulus_at_depth, uniform_modulus
from .functional_eval import Functional2, SeqFunctional, eval_seq
from .pointwise import build_associate, eval_associate, pointwise_modulus
from .realfn import (
    OpenCover, finite_bound, finite_subcover, integrate,
    positive_lower_bound, supremum_on_unit, uc_certificate,
)
from .suptheorems import (
    WordSet, least_bound_with_witness, predicate_bar_bound, supremum,
    tree_bar_bound,
)
from .ubound import CANTOR_DOMAIN, BoundedDomain, seq_modulus

SUITE_MAX_DEPTH = 20


@dataclass
class CheckEntry:
    name: str
    status: str  # "pass" | "fail" | "uncertified"
    depth: int
    detail: str = ""
    counterexample: str = ""


@dataclass
class CheckReport:
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for e in self.entries if e.status == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for e in self.entries if e.status == "fail")

    @property
    def uncertified(self) -> int:
        return sum(1 for e in self.entries if e.status == "uncertified")

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.uncertified == 0


def _blocks_constant(vals: np.ndarray, depth: int, y: int) -> bool:
    rows = vals.reshape(1 << y, 1 << (depth - y))
    return bool((rows == rows[:, :1]).all())


def naive_least_modulus(phi: Functional2, depth: int,
                        budget: int | None = None) -> int:
    """Reference aggregation: scan candidate depths from 0 up."""
    vals = phi.values_on_words(depth, budget=budget)
    for y in range(depth + 1):
        if _blocks_constant(vals, depth, y):
            return y
    raise AssertionError("depth itself always works")  # pragma: no cover


def naive_tree_bar(member, cap: int) -> int | None:
    """Reference level scan: least level with no in-set word."""
    for level in range(cap + 1):
        if not any(member(BinWord.from_int(w, level)) for w in range(1 << level)):
            return level
    return None


def naive_predicate_bound(h: Functional2, cap: int) -> int | None:
    """Reference: max over all cap-depth points of the least satisfying n."""
    worst = 0
    for w in range(1 << cap):
        point = pad(BinWord.from_int(w, cap))
        for n in range(cap + 1):
            if h.eval(point, n) == 0:
                worst = max(worst, n)
                break
        else:
            return None
    return worst


def naive_seq_modulus(lam, domain: BoundedDomain, k: int, depth: int) -> int:
    """Reference: try candidate depths, compare output tuples pairwise by prefix."""
    radices = domain.radices(depth)
    grid: list[tuple[int, ...]] = []
    outs: list[tuple[int, ...]] = []

    def walk(digits: list[int]) -> None:
        if len(digits) == depth:
            grid.append(tuple(digits))
            word = tuple(digits)
            point = _GridPoint(word)
            outs.append(eval_seq(lam, point, k))
            return
        for d in range(radices[len(digits)]):
            walk(digits + [d])

    walk([])
    for n in range(depth + 1):
        groups: dict[tuple[int, ...], tuple[int, ...]] = {}
        ok = True
        for g, out in zip(grid, outs):
            key = g[:n]
            if key in groups:
                if groups[key] != out:
                    ok = False
                    break
            else:
                groups[key] = out
        if ok:
            return n
    raise AssertionError("depth itself always works")  # pragma: no cover


class _GridPoint:
    __slots__ = ("digits",)

    def __init__(self, digits: tuple[int, ...]):
        self.digits = digits

    def bit(self, i: int) -> int:
        return self.digits[i] if 0 <= i < len(self.digits) else 0


def _run_entry(report: CheckReport, name: str, depth: int, fn) -> None:
    # Isolation contract: one starved or broken entry never aborts the suite.
    try:
        detail, counter = fn()
        status = "pass" if counter == "" else "fail"
        report.entries.append(CheckEntry(name, status, depth, detail, counter))
    except (UncertifiedError, WorkBudgetError, StepBudgetError) as exc:
        report.entries.append(
            CheckEntry(name, "uncertified", depth, detail=str(exc))
        )
    except (CantorKitError, AssertionError, Exception) as exc:
        report.entries.append(
            CheckEntry(name, "fail", depth, detail=type(exc).__name__,
                       counterexample=str(exc))
        )


def _check_fan(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    fr = uniform_modulus(phi, item.start_depth, SUITE_MAX_DEPTH)
    if not fr.certified:
        return "", f"stabilization failed: {fr}"
    oracle = naive_least_modulus(phi, 2 * fr.stabilized_at)
    if fr.modulus != oracle:
        return "", f"stabilized {fr.modulus} != brute force {oracle}"
    if fr.modulus != item.expected_modulus:
        return "", f"modulus {fr.modulus} != expected {item.expected_modulus}"
    return f"modulus={fr.modulus} at depth {fr.stabilized_at}", ""


def _check_ps(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    fr = uniform_modulus(phi, item.start_depth, SUITE_MAX_DEPTH)
    m = fr.stabilized_at
    v = bar_fan_modulus(phi, m)
    xi = modulus_at_depth(phi, m)
    vals = phi.values_on_words(m)
    if not _blocks_constant(vals, m, min(v, m)):
        return "", f"ps={v} is not a valid agreement depth at {m}"
    if v < xi:
        return "", f"ps={v} below least modulus {xi}"
    v2 = bar_fan_modulus(phi, 2 * m)
    v4 = bar_fan_modulus(phi, 4 * m)
    if not (v == v2 == v4):
        return "", f"ps not stable: {v}, {v2}, {v4} at depths {m},{2*m},{4*m}"
    relation = "ps == least" if v == xi else f"ps {v} > least {xi}"
    return relation, ""


def _check_sup(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    sup = supremum(phi, item.start_depth, SUITE_MAX_DEPTH)
    direct = max(
        phi.eval(pad(BinWord.from_int(w, sup.depth_used)))
        for w in range(1 << sup.depth_used)
    )
    if sup.value != direct:
        return "", f"supremum {sup.value} != exhaustive max {direct}"
    if phi.eval(pad(sup.witness)) != sup.value:
        return "", f"witness {sup.witness!s} does not attain {sup.value}"
    fr = uniform_modulus(phi, item.start_depth, SUITE_MAX_DEPTH)
    for depth in (fr.stabilized_at, 2 * fr.stabilized_at):
        k, _ = least_bound_with_witness(phi, depth)
        if k != sup.value:
            return "", f"least bound {k} at depth {depth} != supremum {sup.value}"
    return f"value={sup.value} witness={sup.witness!s}", ""


def _check_associate(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    depth = min(max(item.expected_modulus + 2, 4), 10)
    alpha = build_associate(phi, depth)
    vals = phi.values_on_words(depth)
    deltas = []
    for w in range(1 << depth):
        point = pad(BinWord.from_int(w, depth))
        got = eval_associate(alpha, point)
        if got != vals[w]:
            return "", f"round trip failed at {BinWord.from_int(w, depth)!s}"
        deltas.append(pointwise_modulus(phi, point, depth, _vals=vals))
    xi = modulus_at_depth(phi, depth)
    if max(deltas) != xi:
        return "", f"max pointwise modulus {max(deltas)} != uniform {xi}"
    return f"round trip at depth {depth}; max pointwise == {xi}", ""


def _check_trace(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    depth = min(max(item.expected_modulus + 2, 4), 10)
    xi = modulus_at_depth(phi, depth)
    worst = 0
    for w in range(1 << depth):
        t = phi.eval_traced(pad(BinWord.from_int(w, depth)))
        if t.queried_indices:
            worst = max(worst, t.max_index_queried + 1)
    if xi > worst:
        return "", f"modulus {xi} above query bound {worst}"
    return f"modulus {xi} <= query bound {worst}", ""


def _check_tree(name: str) -> tuple[str, str]:
    tree = WordSet.from_functional(fixture_functional(name))
    cap = 8
    bound = tree_bar_bound(tree, cap)
    oracle = naive_tree_bar(lambda w: w in tree, cap)
    if oracle is None:
        if bound.certified:
            return "", f"certified {bound.k} but no bar within {cap}"
        return f"no bar within {cap}, uncertified as expected", ""
    if not bound.certified or bound.k != oracle:
        return "", f"bound {bound} != level scan {oracle}"
    return f"bar at {bound.k}", ""


def _check_qffan(name: str) -> tuple[str, str]:
    h = fixture_functional(name)
    cap = 8
    bound = predicate_bar_bound(h, cap)
    oracle = naive_predicate_bound(h, cap)
    if oracle is None:
        if bound.certified:
            return "", "certified bound despite failing point searches"
        return "uncertified as expected", ""
    if not bound.certified or bound.k != oracle:
        return "", f"bound {bound} != point scan {oracle}"
    return f"k={bound.k}", ""


def _check_theta(name: str) -> tuple[str, str]:
    lam = fixture_seq(name)
    domain = CANTOR_DOMAIN if name != "lam_sum2" else BoundedDomain.parse("21@1")
    k, depth = 2, 6
    got = seq_modulus(lam, domain, k, depth)
    oracle = naive_seq_modulus(lam, domain, k, depth)
    if got != oracle:
        return "", f"seq modulus {got} != brute force {oracle}"
    got2 = seq_modulus(lam, domain, k, depth + 2)
    if got2 != got and name != "lam_shift":
        return "", f"not stable: {got} at {depth}, {got2} at {depth + 2}"
    return f"modulus={got} over {domain!s}", ""


def _check_cantor_specialization(item) -> tuple[str, str]:
    phi = corpus_functional(item.name)
    lam = SeqFunctional.from_callable(lambda z, i: phi.eval(z), name=f"seq_{item.name}")
    depth = min(max(item.expected_modulus + 1, 4), 8)
    got = seq_modulus(lam, CANTOR_DOMAIN, 1, depth)
    xi = modulus_at_depth(phi, depth)
    if got != xi:
        return "", f"specialized modulus {got} != direct {xi}"
    return f"equal at depth {depth}: {got}", ""


_CLOSED_FORMS = {
    "const_one": Fraction(1),
    "ident": Fraction(1, 2),
    "square": Fraction(1, 3),
    "cube": Fraction(1, 4),
}


def _check_integrate(name: str) -> tuple[str, str]:
    f = real_function(name)
    k = 10
    value = integrate(f, k).as_fraction()
    truth = _CLOSED_FORMS[name]
    if abs(value - truth) > Fraction(1, 1 << k):
        return "", f"integral {value} off {truth} by more than 2^-{k}"
    return f"within 2^-{k} of {truth}", ""


def _check_supreal() -> tuple[str, str]:
    f = real_function("hump")
    y, z = supremum_on_unit(f, 6)
    if abs(y.as_fraction() - Fraction(1, 4)) > Fraction(1, 64):
        return "", f"supremum estimate {y!s} off 1/4 by more than 2^-6"
    return f"y={y!s} near-maximizer {z!s}", ""


def _check_posbound() -> tuple[str, str]:
    f = real_function("affine_half")
    ret = positive_lower_bound(f, 8)
    bound = Fraction(1, ret)
    for i in range(9):
        v = f.approx_at(ExactReal.from_fraction(Fraction(i, 8)), 8).as_fraction()
        if v <= bound:
            return "", f"grid value {v} at {i}/8 not above bound {bound}"
    return f"bound 1/{ret}", ""


def _check_finbound() -> tuple[str, str]:
    f = real_function("steep")
    n = finite_bound(f, 8)
    if n != 5:
        return "", f"bound {n} != 5"
    return "bound 5", ""


def _check_cover_chain() -> tuple[str, str]:
    cover = OpenCover.from_pairs(
        [(Fraction(n - 1, 4), Fraction(n + 1, 4)) for n in range(5)]
    )
    chosen = finite_subcover(cover, resolution=6, n_cap=8)
    return f"indices {chosen}", ""


def _check_cover_uncovered() -> tuple[str, str]:
    cover = OpenCover(lambda n: (Fraction(1, n + 2), Fraction(2)), name="punctured")
    try:
        finite_subcover(cover, resolution=4, n_cap=16)
    except CantorKitError:
        return "0 never covered, rejected as expected", ""
    return "", "subcover found for a cover missing 0"


def _check_ucmod_coherence(name: str) -> tuple[str, str]:
    f = real_function(name)
    cert = uc_certificate(f, 8)
    # independent grid modulus: coarsest dyadic window meeting the tolerance
    from .realfn import _grid_values, _sliding_max_minus_min
    depth = cert.grid_depth
    vals, scale = _grid_values(f, depth, 12)
    limit = (1 << scale) // 8  # spread < 1/8 at this scale
    direct = None
    for m in range(depth):
        if _sliding_max_minus_min(vals, 1 << (depth - m)) < limit:
            direct = 1 << m
            break
    if direct is None:
        return "", "no direct grid modulus found"
    window = 1 << (depth - cert.n.bit_length() + 1)
    if _sliding_max_minus_min(vals, window) >= limit:
        return "", f"certified n={cert.n} fails the independent grid check"
    return f"n={cert.n} valid; direct grid bound {direct}", ""


def _check_cauchy() -> tuple[str, str]:
    reals = [
        ExactReal.from_fraction(Fraction(1, 3)),
        ExactReal.from_fraction(Fraction(7, 8)),
        ExactReal.from_point(pad(BinWord.from_string("10110"))),
    ]
    for x in reals:
        for n in range(0, 8, 2):
            qn = x.approx(n).as_fraction()
            for i in range(1, 11, 3):
                qni = x.approx(n + i).as_fraction()
                if abs(qn - qni) > Fraction(1, 1 << n):
                    return "", f"|q_{n} - q_{n + i}| > 2^-{n} for {x.name}"
    return "sampled fast-convergence holds", ""


def _check_parser_roundtrip() -> tuple[str, str]:
    rng = random.Random(20260810)
    for i in range(200):
        expr = _random_expr(rng, depth=3, params=("f", "n"))
        text = dsl.print_expr(expr)
        back = dsl.parse_expr(text, ("f", "n"))
        if back != expr:
            return "", f"round trip failed for {text!r}"
    return "200 expressions", ""


def _random_expr(rng: random.Random, depth: int, params: tuple[str, ...],
                 scope: tuple[str, ...] | None = None) -> dsl.Expr:
    scope = scope if scope is not None else params[1:]
    if depth == 0:
        choice = rng.randrange(3 if scope else 2)
        if choice == 0:
            return dsl.Lit(value=rng.randrange(10))
        if choice == 1:
            return dsl.Apply(fn=params[0], arg=dsl.Lit(value=rng.randrange(8)))
        return dsl.Name(ident=rng.choice(scope))
    kind = rng.randrange(6)
    sub = lambda: _random_expr(rng, depth - 1, params, scope)
    if kind <= 2:
        op = rng.choice(["+", "-", "*"])
        return dsl.Bin(op=op, left=sub(), right=sub())
    if kind == 3:
        op = rng.choice(["/", "%"])
        return dsl.Bin(op=op, left=sub(), right=dsl.Lit(value=rng.randrange(1, 9)))
    if kind == 4:
        cmp = rng.choice(list(dsl.CMP_OPS))
        return dsl.If(left=sub(), cmp=cmp, right=sub(), then=sub(), orelse=sub())
    var = f"v{depth}"
    inner_scope = scope + (var,)
    return dsl.Mu(
        var=var, bound=rng.randrange(1, 6),
        left=_random_expr(rng, depth - 1, params, inner_scope), cmp="==",
        right=_random_expr(rng, depth - 1, params, inner_scope),
    )


def check_suite(suite: str = "all", budget: int | None = None) -> CheckReport:
    """Run the shipped cross-checks; `suite` filters by entry-name prefix."""
    work_budget(budget)  # validate early
    report = CheckReport()

    def want(name: str) -> bool:
        return suite == "all" or name.startswith(suite)

    for item in CORPUS:
        if want(f"fan:{item.name}"):
            _run_entry(report, f"fan:{item.name}", SUITE_MAX_DEPTH,
                       lambda item=item: _check_fan(item))
        if want(f"ps:{item.name}"):
            _run_entry(report, f"ps:{item.name}", SUITE_MAX_DEPTH,
                       lambda item=item: _check_ps(item))
        if want(f"sup:{item.name}"):
            _run_entry(report, f"sup:{item.name}", SUITE_MAX_DEPTH,
                       lambda item=item: _check_sup(item))
        if want(f"assoc:{item.name}"):
            _run_entry(report, f"assoc:{item.name}", 10,
                       lambda item=item: _check_associate(item))
        if want(f"trace:{item.name}"):
            _run_entry(report, f"trace:{item.name}", 10,
                       lambda item=item: _check_trace(item))
    for name in TREE_FIXTURES:
        if want(f"bar:{name}"):
            _run_entry(report, f"bar:{name}", 8, lambda name=name: _check_tree(name))
    for name in PREDICATE_FIXTURES:
        if want(f"qffan:{name}"):
            _run_entry(report, f"qffan:{name}", 8,
                       lambda name=name: _check_qffan(name))
    for name in SEQ_FIXTURES:
        if want(f"theta:{name}"):
            _run_entry(report, f"theta:{name}", 6,
                       lambda name=name: _check_theta(name))
    for item in CORPUS[:6]:
        if want(f"cantorspec:{item.name}"):
            _run_entry(report, f"cantorspec:{item.name}", 8,
                       lambda item=item: _check_cantor_specialization(item))
    for name in _CLOSED_FORMS:
        if want(f"real:integrate:{name}"):
            _run_entry(report, f"real:integrate:{name}", 10,
                       lambda name=name: _check_integrate(name))
    if want("real:supreal"):
        _run_entry(report, "real:supreal", 6, _check_supreal)
    if want("real:posbound"):
        _run_entry(report, "real:posbound", 8, _check_posbound)
    if want("real:finbound"):
        _run_entry(report, "real:finbound", 8, _check_finbound)
    if want("real:cover:chain"):
        _run_entry(report, "real:cover:chain", 6, _check_cover_chain)
    if want("real:cover:uncovered"):
        _run_entry(report, "real:cover:uncovered", 4, _check_cover_uncovered)
    for name in ("ident", "square"):
        if want(f"real:ucmod:{name}"):
            _run_entry(report, f"real:ucmod:{name}", 8,
                       lambda name=name: _check_ucmod_coherence(name))
    if want("real:cauchy"):
        _run_entry(report, "real:cauchy", 10, _check_cauchy)
    if want("tool:parser"):
        _run_entry(report, "tool:parser", 3, _check_parser_roundtrip)
    return report

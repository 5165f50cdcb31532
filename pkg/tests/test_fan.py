import random

from cantorkit import dsl
from cantorkit.core_seq import EMPTY_WORD, BinWord, pad, prefix
from cantorkit.fan import (
    bar_fan_modulus, bar_modulus, modulus_at_depth, refuting_path,
    uniform_modulus,
)
from cantorkit.functional_eval import Functional2

from conftest import oracle_is_valid_depth, oracle_least_modulus_pairwise
from test_dsl import random_expr


def F(src):
    return Functional2.from_dsl(src)


def test_modulus_constant():
    assert modulus_at_depth(F("func c(f) = 9"), 4) == 0


def test_modulus_probe3():
    assert modulus_at_depth(F("func p(f) = f(3)"), 6) == 4


def test_modulus_pair_sum():
    assert modulus_at_depth(F("func s(f) = f(0) + f(1)"), 5) == 2


def test_modulus_strategies_agree():
    rng = random.Random(7)
    for _ in range(40):
        body = random_expr(rng, depth=3, params=("f",))
        phi = Functional2.from_dsl(dsl.Def("t", ("f",), body))
        cone = modulus_at_depth(phi, 6, strategy="cone")
        array = modulus_at_depth(phi, 6, strategy="array")
        assert cone == array
        assert array == oracle_least_modulus_pairwise(phi, 6)


def test_modulus_leastness_against_oracle():
    for src in ("func a(f) = f(2)", "func b(f) = f(0) * f(1)",
                "func c(f) = if f(1) == 0 then f(3) else 2"):
        phi = F(src)
        assert modulus_at_depth(phi, 5) == oracle_least_modulus_pairwise(phi, 5)


def test_uniform_modulus_constant():
    fr = uniform_modulus(F("func c(f) = 1"))
    assert fr.certified and fr.modulus == 0


def test_uniform_modulus_probe3_from_depth_2():
    fr = uniform_modulus(F("func p(f) = f(3)"), 2, 64)
    assert fr == uniform_modulus(F("func p(f) = f(3)"), 2, 64)
    assert fr.certified and fr.modulus == 4
    assert oracle_is_valid_depth(F("func p(f) = f(3)"), 2 * fr.stabilized_at,
                                 fr.modulus)


def test_uniform_modulus_packed_from_depth_2():
    phi = F("func w(f) = f(0) + 2*f(1) + 4*f(2) + 8*f(3) + 16*f(4) + 32*f(5) + 64*f(6) + 128*f(7)")
    fr = uniform_modulus(phi, 2, 64)
    assert fr.certified and fr.modulus == 8


def test_uniform_modulus_uncertified_when_capped():
    phi = F("func w(f) = f(8) + f(1)")
    fr = uniform_modulus(phi, 5, 10)  # one round only: 5 vs 10 disagree
    assert not fr.certified


def test_refuting_path_base_case():
    phi = F("func c(f) = 0")
    w = BinWord.from_string("101")
    assert prefix(refuting_path(w, phi, 0, 3), 3) == w


def test_refuting_path_constant_descends_right_when_equal():
    phi = F("func c(f) = 7")
    out = refuting_path(EMPTY_WORD, phi, 7, 3)
    assert prefix(out, 3) == BinWord.from_string("111")


def test_refuting_path_constant_descends_left_when_unequal():
    phi = F("func c(f) = 7")
    out = refuting_path(EMPTY_WORD, phi, 3, 3)
    assert prefix(out, 3) == BinWord.from_string("000")


def test_refuting_path_finds_witness_when_one_exists():
    phi = F("func p(f) = f(2)")
    out = refuting_path(EMPTY_WORD, phi, 0, 4)
    assert phi.eval(out) == 1


def test_bar_modulus_base_case():
    assert bar_modulus(BinWord.from_string("1010"), F("func p(f) = f(0)"), 4) == 0


def test_bar_modulus_constant_any_depth():
    for depth in (1, 3, 17, 33):
        assert bar_fan_modulus(F("func c(f) = 2"), depth) == 0


def test_bar_modulus_first_bit():
    assert bar_fan_modulus(F("func p(f) = f(0)"), 4) == 1


def test_bar_modulus_is_valid_depth_and_at_least_modulus():
    for src in ("func a(f) = f(1)", "func b(f) = f(0) + f(1)",
                "func c(f) = if f(0) == 0 then f(2) else f(1)",
                "func d(f) = mu n <= 4 : f(n) == 1"):
        phi = F(src)
        depth = 6
        v = bar_fan_modulus(phi, depth)
        xi = modulus_at_depth(phi, depth)
        assert v >= xi
        assert oracle_is_valid_depth(phi, depth, v)


def test_bar_modulus_matches_plain_recursion():
    """Cone shortcut against the definition run without cone support."""
    rng = random.Random(13)
    for _ in range(25):
        body = random_expr(rng, depth=2, params=("f",))
        phi = Functional2.from_dsl(dsl.Def("t", ("f",), body))
        plain = Functional2.from_callable(phi.eval, name="plain")
        assert bar_fan_modulus(phi, 5) == bar_fan_modulus(plain, 5)


def test_refuting_path_matches_plain_recursion():
    rng = random.Random(17)
    for _ in range(25):
        body = random_expr(rng, depth=2, params=("f",))
        phi = Functional2.from_dsl(dsl.Def("t", ("f",), body))
        plain = Functional2.from_callable(phi.eval, name="plain")
        base = phi.eval(pad(EMPTY_WORD))
        a = refuting_path(EMPTY_WORD, phi, base, 5)
        b = refuting_path(EMPTY_WORD, plain, base, 5)
        assert prefix(a, 5) == prefix(b, 5)


def test_bar_modulus_stable_across_depths():
    phi = F("func s(f) = f(0) + f(1)")
    m = modulus_at_depth(phi, 4)
    assert bar_fan_modulus(phi, 4) == bar_fan_modulus(phi, 8) == bar_fan_modulus(phi, 16)
    assert bar_fan_modulus(phi, 4) >= m


def test_modulus_below_query_bound():
    for src in ("func a(f) = f(3)", "func b(f) = f(0) + f(4)"):
        phi = F(src)
        depth = 6
        xi = modulus_at_depth(phi, depth)
        worst = 0
        for w in range(1 << depth):
            t = phi.eval_traced(pad(BinWord.from_int(w, depth)))
            if t.queried_indices:
                worst = max(worst, t.max_index_queried + 1)
        assert xi <= worst


def test_modulus_invariant_between_certifying_depth_and_cap():
    """Once certified, the depth-bounded modulus no longer moves, including
    at depths off the doubling schedule."""
    for src, start in (("func p(f) = f(3)", 2),
                       ("func s(f) = f(0) + f(1)", 4),
                       ("func m(f) = mu n <= 6 : f(n) == 1", 4)):
        phi = F(src)
        fr = uniform_modulus(phi, start, 20)
        assert fr.certified
        base = fr.modulus
        for depth in (fr.stabilized_at, fr.stabilized_at + 3,
                      2 * fr.stabilized_at, 2 * fr.stabilized_at + 1):
            assert modulus_at_depth(phi, depth) == base


def test_work_budget_env_var(monkeypatch):
    monkeypatch.setenv("CANTORKIT_BUDGET", "8")
    phi = F("func p(f) = f(3)")
    fr = uniform_modulus(phi, 4, 20)
    assert not fr.certified
    monkeypatch.delenv("CANTORKIT_BUDGET")
    assert uniform_modulus(phi, 4, 20).certified

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cantorkit.core_seq import BinWord, CantorPoint, pad
from cantorkit.dyadic import Dyadic, ExactReal, PointReal, round_to_grid
from cantorkit.errors import DomainError, DslNameError
from cantorkit.realfn import (
    OpenCover, RealFunction, digit_functional, finite_bound, finite_subcover,
    integrate, positive_lower_bound, riemann_sum, supremum_on_unit,
    uc_certificate, uc_modulus, _ieval, _ieval_raw, RBin, RConst, RPiece, RVar,
    _sliding_max_minus_min,
)

half = Fraction(1, 2)


def R(src):
    return RealFunction.from_dsl(src)


# Dyadics and exact reals

def test_dyadic_normalization_and_print():
    d = Dyadic(6, 4)
    assert (d.num, d.exp) == (3, 3)
    assert str(d) == "3/2^3"
    assert Dyadic.parse("3/2^3") == d


def test_dyadic_arithmetic():
    a, b = Dyadic(1, 1), Dyadic(1, 2)
    assert (a + b).as_fraction() == Fraction(3, 4)
    assert (a - b).as_fraction() == Fraction(1, 4)
    assert (a * b).as_fraction() == Fraction(1, 8)
    assert a > b


def test_round_to_grid_half_up():
    assert round_to_grid(Fraction(3, 8), 2).as_fraction() == Fraction(1, 2)
    assert round_to_grid(Fraction(5, 16), 2).as_fraction() == Fraction(1, 4)


@given(st.fractions(min_value=-2, max_value=2), st.integers(0, 12))
@settings(max_examples=100)
def test_round_to_grid_error_bound(x, g):
    v = round_to_grid(x, g).as_fraction()
    assert abs(v - x) <= Fraction(1, 1 << (g + 1))


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(7, 8), Fraction(0),
                               Fraction(2, 7)])
def test_exact_real_fast_convergence(x):
    r = ExactReal.from_fraction(x)
    for n in range(0, 9, 2):
        qn = r.approx(n).as_fraction()
        for i in range(1, 11):
            qni = r.approx(n + i).as_fraction()
            assert abs(qn - qni) <= Fraction(1, 1 << n)


def test_point_real_of_padded_word_is_exact():
    r = PointReal(pad(BinWord.from_string("101")))
    assert r.exact == Fraction(5, 8)
    assert r.approx(4).as_fraction() == Fraction(5, 8)


def test_point_real_prefix_interval_contains_value():
    ones = CantorPoint.from_callable(lambda i: 1, "ones")
    r = PointReal(ones)
    for t in range(1, 8):
        lo, hi = r.prefix_interval(t)
        assert lo <= 1 <= hi
        assert hi - lo == Fraction(1, 1 << t)


# Real functions

def test_polynomial_extraction():
    f = R("func h(x) = x * (1 - x)")
    assert f.poly == [Fraction(0), Fraction(1), Fraction(-1)]


def test_apply_exact_matches_tree():
    f = R("func g(x) = (x + 1/2) * x - 1/4")
    for x in (Fraction(0), Fraction(1, 3), Fraction(1)):
        assert f.apply_exact(x) == (x + half) * x - Fraction(1, 4)


def test_approx_contract_on_rationals():
    f = R("func sq(x) = x * x")
    for x in (Fraction(1, 3), Fraction(2, 5), Fraction(1)):
        for p in (2, 6, 10):
            v = f.approx_at(ExactReal.from_fraction(x), p).as_fraction()
            assert abs(v - x * x) <= Fraction(1, 1 << p)


def test_approx_respects_real_equality():
    f = R("func sq(x) = x * x")
    a = ExactReal.from_fraction(half)
    b = PointReal(pad(BinWord.from_string("1")))  # also 1/2, different guise
    for p in (3, 6, 9):
        va = f.approx_at(a, p).as_fraction()
        vb = f.approx_at(b, p).as_fraction()
        assert abs(va - vb) <= Fraction(2, 1 << p)


def test_piecewise_evaluates_both_sides():
    f = R("func tent(x) = if x <= 1/2 then x else 1 - x")
    assert f.poly is None
    assert f.apply_exact(Fraction(1, 4)) == Fraction(1, 4)
    assert f.apply_exact(Fraction(3, 4)) == Fraction(1, 4)
    v = f.approx_at(ExactReal.from_fraction(Fraction(1, 3)), 8).as_fraction()
    assert abs(v - Fraction(1, 3)) <= Fraction(1, 256)


def test_real_dialect_rejects_nat_constructs():
    with pytest.raises(DslNameError):
        R("func bad(x) = x % 2")
    with pytest.raises(DslNameError):
        R("func bad(x) = x(0)")
    with pytest.raises(DslNameError):
        R("func bad(x) = mu n <= 3 : x == x")


def test_grid_nums_match_approx_at():
    for src in ("func sq(x) = x * x", "func aff(x) = 3 * x + 1",
                "func tent(x) = if x <= 1/2 then x else 1 - x"):
        f = R(src)
        nums = f.grid_nums(4, 6)
        for j in range(17):
            v = f.approx_at(ExactReal.from_fraction(Fraction(j, 16)), 6)
            assert nums[j] == v.num << (8 - v.exp)


def _random_rnode(rng, depth):
    if depth == 0:
        if rng.random() < 0.5:
            return RConst(Fraction(rng.randrange(-4, 5), rng.randrange(1, 5)))
        return RVar()
    kind = rng.randrange(4)
    if kind < 3:
        return RBin("+-*"[kind], _random_rnode(rng, depth - 1),
                    _random_rnode(rng, depth - 1))
    return RPiece(_random_rnode(rng, depth - 1), rng.choice(["<=", "<", "=="]),
                  _random_rnode(rng, depth - 1), _random_rnode(rng, depth - 1),
                  _random_rnode(rng, depth - 1))


def test_raw_interval_eval_matches_reference():
    rng = random.Random(4242)
    for _ in range(300):
        node = _random_rnode(rng, 3)
        lo = Fraction(rng.randrange(0, 16), 16)
        hi = lo + Fraction(1, rng.choice([4, 16, 64]))
        ref = _ieval(node, lo, hi)
        (ln, ld), (hn, hd) = _ieval_raw(node, (lo.numerator, lo.denominator),
                                        (hi.numerator, hi.denominator))
        assert (Fraction(ln, ld), Fraction(hn, hd)) == ref


# Digit encoding

def test_digit_constant_half():
    d = digit_functional(R("func h(x) = 1/2"), 1)
    assert d.eval(pad(BinWord(()))) == 1


def test_digit_identity_at_all_ones():
    d = digit_functional(R("func i(x) = x"), 1)
    ones = CantorPoint.from_callable(lambda i: 1, "ones")
    assert d.eval(ones) == 1


def test_digit_identity_at_zero():
    d = digit_functional(R("func i(x) = x"), 1)
    assert d.eval(pad(BinWord(()))) == 0


def test_digit_rejects_negative_values():
    d = digit_functional(R("func neg(x) = 0 - 1"), 2)
    with pytest.raises(DomainError):
        d.eval(pad(BinWord(())))


def test_digit_paths_agree():
    d = digit_functional(R("func sq(x) = x * x"), 4)
    depth = 8
    vals = d.values_on_words(depth)
    for w in range(0, 1 << depth, 17):
        assert vals[w] == d.eval(pad(BinWord.from_int(w, depth)))
    const, v = d.constant_below(BinWord.from_string("0000"), depth)
    block = vals[0:1 << 4]
    assert const == bool((block == block[0]).all())


# Uniform continuity certificates

def test_uc_constant_is_one():
    assert uc_modulus(R("func c(x) = 2/3"), 4) == 1


def test_uc_identity_k4():
    f = R("func i(x) = x")
    n = uc_modulus(f, 4)
    assert n >= 4
    cert = uc_certificate(f, 4)
    assert cert.n == n and cert.grid_depth >= cert.n.bit_length()


def test_uc_square_cross_checked_with_lipschitz():
    f = R("func sq(x) = x * x")
    cert = uc_certificate(f, 8)
    nums, scale = f.grid_nums(cert.grid_depth, 11), 13
    limit_num = (1 << scale) // 8
    # our certified N passes the independent window scan
    window = 1 << (cert.grid_depth - cert.n.bit_length() + 1)
    assert _sliding_max_minus_min(nums, window) < limit_num
    # and so does the analytic bound N = 16 (|x^2 - y^2| <= 2|x - y|)
    window16 = 1 << (cert.grid_depth - 4)
    assert _sliding_max_minus_min(nums, window16) < limit_num


def test_uc_certified_grid_property():
    f = R("func aff(x) = 3 * x + 1")
    k = 6
    cert = uc_certificate(f, k)
    step = Fraction(1, 1 << cert.grid_depth)
    span = (1 << cert.grid_depth) // cert.n  # points strictly within 1/n
    vals = [f.apply_exact(j * step) for j in range(0, (1 << cert.grid_depth) + 1, 7)]
    for i in range(len(vals)):
        for j in range(i + 1, min(i + 3, len(vals))):
            if abs((j - i) * 7) < span:
                assert abs(vals[i] - vals[j]) < Fraction(1, k)


# Positivity, finiteness

def test_posbound_constant_one_any_grid():
    for grid in (1, 4, 9):
        assert positive_lower_bound(R("func one(x) = 1"), grid) == 2


def test_posbound_affine():
    assert positive_lower_bound(R("func a(x) = x + 1/2"), 8) == 4


def test_posbound_rejects_zero_at_origin():
    with pytest.raises(DomainError):
        positive_lower_bound(R("func i(x) = x"), 8)


def test_posbound_soundness():
    f = R("func a(x) = x + 1/2")
    ret = positive_lower_bound(f, 8)
    for i in range(9):
        v = f.approx_at(ExactReal.from_fraction(Fraction(i, 8)), 8).as_fraction()
        assert v > Fraction(1, ret)


def test_finite_bound_examples():
    assert finite_bound(R("func z(x) = 0 * x"), 8) == 1
    assert finite_bound(R("func i(x) = x"), 8) == 2
    assert finite_bound(R("func s(x) = 3 * x + 1"), 8) == 5


# Suprema

def test_supreal_constant_one():
    y, _ = supremum_on_unit(R("func one(x) = 1"), 5)
    assert abs(y.as_fraction() - 1) <= Fraction(1, 32)


def test_supreal_hump():
    y, z = supremum_on_unit(R("func h(x) = x * (1 - x)"), 6)
    assert abs(y.as_fraction() - Fraction(1, 4)) <= Fraction(1, 64)
    assert abs(z.as_fraction() - half) <= Fraction(1, 8)


def test_supreal_identity():
    y, z = supremum_on_unit(R("func i(x) = x"), 6)
    assert abs(y.as_fraction() - 1) <= Fraction(1, 64)
    assert z.as_fraction() > Fraction(7, 8)


# Riemann sums and integration

def test_riemann_constant_telescopes():
    s = riemann_sum(R("func c(x) = 3/4"), [Fraction(0), Fraction(1, 3),
                                           Fraction(1)], 20)
    assert s == Fraction(3, 4)


def test_riemann_identity_uniform_4():
    s = riemann_sum(R("func i(x) = x"),
                    [Fraction(i, 4) for i in range(5)], 30)
    assert s == Fraction(3, 8)


def test_riemann_square_uniform_4():
    s = riemann_sum(R("func sq(x) = x * x"),
                    [Fraction(i, 4) for i in range(5)], 30)
    assert s == Fraction(7, 32)


def test_riemann_rejects_malformed_partitions():
    f = R("func i(x) = x")
    with pytest.raises(DomainError):
        riemann_sum(f, [Fraction(0), Fraction(1, 2)], 10)
    with pytest.raises(DomainError):
        riemann_sum(f, [Fraction(0), Fraction(1, 2), Fraction(1, 4),
                        Fraction(1)], 10)


def test_integrate_constant_exact():
    v = integrate(R("func c(x) = 1/2"), 8)
    assert v.as_fraction() == half


@pytest.mark.parametrize("src,truth", [
    ("func i(x) = x", Fraction(1, 2)),
    ("func sq(x) = x * x", Fraction(1, 3)),
    ("func cu(x) = x * x * x", Fraction(1, 4)),
])
def test_integrate_closed_forms(src, truth):
    v = integrate(R(src), 10)
    assert abs(v.as_fraction() - truth) <= Fraction(1, 1 << 10)


def test_partition_invariance_below_certified_mesh():
    k = 6
    f = R("func sq(x) = x * x")
    n = uc_modulus(f, 1 << (k + 1))
    m1 = 1
    while m1 <= n:
        m1 <<= 1
    m2 = (3 * m1) // 2
    s1 = riemann_sum(f, [Fraction(i, m1) for i in range(m1 + 1)], k + 4)
    s2 = riemann_sum(f, [Fraction(i, m2) for i in range(m2 + 1)], k + 4)
    assert abs(s1 - s2) <= Fraction(1, 1 << k)


# Finite subcovers

def test_subcover_single_interval():
    cover = OpenCover.from_pairs([(Fraction(-1, 4), Fraction(5, 4))])
    assert finite_subcover(cover, 6, 4) == [0]


def test_subcover_five_interval_chain():
    cover = OpenCover.from_pairs(
        [(Fraction(n - 1, 4), Fraction(n + 1, 4)) for n in range(5)]
    )
    chosen = finite_subcover(cover, 6, 8)
    assert chosen == [0, 1, 2, 3, 4]
    intervals = [cover.interval(i) for i in chosen]
    for j in range(65):
        x = Fraction(j, 64)
        assert any(c < x < d for c, d in intervals)


def test_subcover_dropping_last_breaks_coverage():
    cover = OpenCover.from_pairs(
        [(Fraction(n - 1, 4), Fraction(n + 1, 4)) for n in range(5)]
    )
    chosen = finite_subcover(cover, 6, 8)
    intervals = [cover.interval(i) for i in chosen[:-1]]
    assert not all(
        any(c < Fraction(j, 64) < d for c, d in intervals) for j in range(65)
    )


def test_subcover_rejects_cover_missing_zero():
    cover = OpenCover(lambda n: (Fraction(1, n + 2), Fraction(2)))
    with pytest.raises(DomainError):
        finite_subcover(cover, 4, 16)


def test_piecewise_end_to_end():
    tent = R("func tent(x) = if x <= 1/2 then x else 1 - x")
    cert = uc_certificate(tent, 8)
    assert cert.n >= 8
    y, z = supremum_on_unit(tent, 5)
    assert abs(y.as_fraction() - half) <= Fraction(1, 32)
    assert abs(z.as_fraction() - half) <= Fraction(1, 16)
    v = integrate(tent, 8)
    assert abs(v.as_fraction() - Fraction(1, 4)) <= Fraction(1, 256)

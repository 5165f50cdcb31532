import pytest

from cantorkit.errors import DomainError
from cantorkit.fan import modulus_at_depth
from cantorkit.functional_eval import Functional2, SeqFunctional, eval_seq
from cantorkit.ubound import (
    CANTOR_DOMAIN, BoundedDomain, bounded_argmax, least_witness_bound,
    seq_modulus,
)

from conftest import GridPoint, grid_words


def test_domain_parse_and_format():
    d = BoundedDomain.parse("21@1")
    assert d.word == (2, 1) and d.tail == 1
    assert str(d) == "21@1"
    assert d.radices(4) == [3, 2, 2, 2]


def test_domain_parse_rejects_garbage():
    with pytest.raises(DomainError):
        BoundedDomain.parse("2,1")


def test_seq_modulus_constant():
    lam = SeqFunctional.from_dsl("func l(z, i) = 4")
    assert seq_modulus(lam, CANTOR_DOMAIN, 3, 5) == 0


def test_seq_modulus_identity():
    lam = SeqFunctional.from_dsl("func l(z, i) = z(i)")
    assert seq_modulus(lam, CANTOR_DOMAIN, 2, 4) == 2


def test_seq_modulus_even_indices():
    lam = SeqFunctional.from_dsl("func l(z, i) = z(2 * i)")
    assert seq_modulus(lam, CANTOR_DOMAIN, 2, 6) == 3


def test_seq_modulus_monotone_in_k():
    lam = SeqFunctional.from_dsl("func l(z, i) = z(i)")
    values = [seq_modulus(lam, CANTOR_DOMAIN, k, 6) for k in range(5)]
    assert values == sorted(values)


def test_seq_modulus_stable_under_depth_doubling():
    lam = SeqFunctional.from_dsl("func l(z, i) = z(2 * i)")
    assert seq_modulus(lam, CANTOR_DOMAIN, 2, 6) == seq_modulus(
        lam, CANTOR_DOMAIN, 2, 12
    )


def _oracle_seq_modulus(lam, domain, k, depth):
    radices = domain.radices(depth)
    pts = grid_words(radices)
    outs = [eval_seq(lam, GridPoint(w), k) for w in pts]
    for n in range(depth + 1):
        ok = True
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i][:n] == pts[j][:n] and outs[i] != outs[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return n
    raise AssertionError


@pytest.mark.parametrize("src", [
    "func l(z, i) = 3",
    "func l(z, i) = z(i)",
    "func l(z, i) = z(0) + z(1)",
    "func l(z, i) = z(i + 1)",
    "func l(z, i) = z(2 * i)",
])
def test_seq_modulus_matches_pairwise_oracle(src):
    lam = SeqFunctional.from_dsl(src)
    for domain in (CANTOR_DOMAIN, BoundedDomain.parse("21@1")):
        got = seq_modulus(lam, domain, 2, 4)
        assert got == _oracle_seq_modulus(lam, domain, 2, 4)


def test_cantor_specialization_equals_uniform_modulus():
    for src in ("func a(f) = f(0) + f(1)", "func b(f) = f(3)",
                "func c(f) = if f(0) == 0 then f(1) else f(2)"):
        phi = Functional2.from_dsl(src)
        lam = SeqFunctional.from_callable(lambda z, i, phi=phi: phi.eval(z),
                                          name="spec")
        depth = 6
        assert seq_modulus(lam, CANTOR_DOMAIN, 1, depth) == \
            modulus_at_depth(phi, depth)


def test_argmax_constant():
    phi = Functional2.from_dsl("func c(z) = 5")
    value, word = bounded_argmax(lambda k: phi, lambda k: CANTOR_DOMAIN, 0, 4)
    assert (value, word) == (5, ())


def test_argmax_first_coordinate():
    phi = Functional2.from_dsl("func p(z) = z(0)")
    value, word = bounded_argmax(lambda k: phi, lambda k: CANTOR_DOMAIN, 0, 4)
    assert (value, word) == (1, (1,))


def test_argmax_bounded_alphabet():
    phi = Functional2.from_dsl("func s(z) = z(0) + z(1)")
    dom = BoundedDomain(word=(2, 1), tail=0)
    value, word = bounded_argmax(lambda k: phi, lambda k: dom, 0, 4)
    assert (value, word) == (3, (2, 1))


def test_argmax_value_is_grid_maximum():
    phi = Functional2.from_dsl("func s(z) = z(0) * z(1) + z(2)")
    dom = BoundedDomain.parse("22@1")
    value, _ = bounded_argmax(lambda k: phi, lambda k: dom, 0, 4)
    best = max(phi.eval(GridPoint(w)) for w in grid_words(dom.radices(4)))
    assert value == best


def test_argmax_family_uses_index():
    def family(k):
        return Functional2.from_dsl(f"func s(z) = z(0) + {k}")

    value, word = bounded_argmax(family, lambda k: CANTOR_DOMAIN, 3, 4)
    assert (value, word) == (4, (1,))


def test_usb_trivial():
    h = Functional2.from_dsl("func h(x, z, k) = 0")
    assert least_witness_bound(h, lambda k: CANTOR_DOMAIN, 0, 6) == 0


def test_usb_first_bit():
    h = Functional2.from_dsl("func h(x, z, k) = if z >= x(0) then 0 else 1")
    assert least_witness_bound(h, lambda k: CANTOR_DOMAIN, 0, 6) == 1


def test_usb_pair_sum():
    h = Functional2.from_dsl("func h(x, z, k) = if z >= x(0) + x(1) then 0 else 1")
    assert least_witness_bound(h, lambda k: CANTOR_DOMAIN, 0, 6) == 2


def test_usb_exhausted_cap_returns_none():
    h = Functional2.from_dsl("func h(x, z, k) = 1")
    assert least_witness_bound(h, lambda k: CANTOR_DOMAIN, 0, 4) is None


def test_usb_respects_domain_bounds():
    h = Functional2.from_dsl("func h(x, z, k) = if z >= x(0) then 0 else 1")
    dom = BoundedDomain(word=(3,), tail=0)
    assert least_witness_bound(h, lambda k: dom, 0, 4) == 3

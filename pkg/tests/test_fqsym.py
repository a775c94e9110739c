from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from moulds.errors import EmptyOperandError, OverlapError
from moulds.fqsym import (
    FQSymElement,
    all_permutations,
    compose_at,
    compose_identity_rule,
    dend_prec,
    dend_succ,
    descent_number,
    format_fsym,
    gamma_basis,
    gamma_fsym,
    gamma_rational,
    inverse,
    major_index,
    operadic_prelie,
    prelie,
    product,
    shuffle,
    to_rational,
)
from moulds.ratmould import RatMould, compose_at as rat_compose_at, decompose_fsym, equal
from moulds.textio import parse_mould

from oracles import shuffles

F = FQSymElement.from_words
B = FQSymElement.basis


def elements(max_n=3):
    def build(n):
        perms = all_permutations(n)
        return st.dictionaries(st.sampled_from(perms), st.integers(-3, 3).filter(bool), min_size=1, max_size=3).map(
            lambda d: FQSymElement(n, {k: Fraction(v) for k, v in d.items()})
        )

    return st.integers(1, max_n).flatmap(build)


def test_shuffle_examples():
    assert set(shuffle((1, 2), (3,))) == {(1, 2, 3), (1, 3, 2), (3, 1, 2)}
    assert set(shuffle((3, 1), (4, 5))) == {(3, 1, 4, 5), (3, 4, 1, 5), (3, 4, 5, 1), (4, 3, 1, 5), (4, 3, 5, 1), (4, 5, 3, 1)}
    assert shuffle((), (2, 1)) == [(2, 1)]
    with pytest.raises(OverlapError):
        shuffle((1, 2), (2,))


@given(st.lists(st.integers(1, 20), unique=True, max_size=7), st.integers(0, 7))
def test_shuffle_matches_oracle(letters, k):
    k = min(k, len(letters))
    u, v = tuple(letters[:k]), tuple(letters[k:])
    assert set(shuffle(u, v)) == shuffles(u, v)
    assert len(shuffle(u, v)) == len(shuffles(u, v))


def test_product_examples():
    # f_2 f_134 and f_32 f_14 here are products of words on disjoint letters
    assert F(shuffle((2,), (1, 3, 4))) == F([(2, 1, 3, 4), (1, 2, 3, 4), (1, 3, 2, 4), (1, 3, 4, 2)])
    assert F(shuffle((3, 2), (1, 4))) == F([(3, 2, 1, 4), (3, 1, 2, 4), (3, 1, 4, 2), (1, 3, 4, 2), (1, 3, 2, 4), (1, 4, 3, 2)])
    assert product(B((1,)), B((1,))) == F([(1, 2), (2, 1)])
    assert product(B((1,)), B((2, 1))) == F([(1, 3, 2), (3, 1, 2), (3, 2, 1)])


@settings(max_examples=30, deadline=None)
@given(elements(3), elements(2))
def test_product_is_pointwise_product_of_moulds(a, b):
    """Simplices decompose: ``f_s(u_1..u_m) f_t(u_m+1..) = sum f_w``."""
    from moulds.ratmould import concat_product

    assert equal(to_rational(product(a, b)), concat_product(to_rational(a), to_rational(b)))


def test_half_products_examples():
    expect = F([(3, 1, 4, 5, 2), (3, 4, 1, 5, 2), (3, 4, 5, 1, 2), (4, 3, 1, 5, 2), (4, 3, 5, 1, 2), (4, 5, 3, 1, 2)])
    assert dend_prec(B((3, 1, 2)), B((1, 2))) == expect
    assert dend_prec(B((1,)), B((1,))) == B((2, 1))
    assert dend_succ(B((1,)), B((1,))) == B((1, 2))
    with pytest.raises(EmptyOperandError):
        dend_prec(FQSymElement(0, {(): 1}), B((1,)))


@settings(max_examples=40, deadline=None)
@given(elements(3), elements(3), elements(2))
def test_dendriform_axioms(a, b, c):
    assert dend_prec(a, b) + dend_succ(a, b) == product(a, b)
    assert dend_prec(dend_prec(a, b), c) == dend_prec(a, product(b, c))
    assert dend_prec(dend_succ(a, b), c) == dend_succ(a, dend_prec(b, c))
    assert dend_succ(a, dend_succ(b, c)) == dend_succ(product(a, b), c)
    assert product(product(a, b), c) == product(a, product(b, c))


def test_prelie_examples():
    assert prelie(B((1,)), B((1,))) == B((1, 2)) - B((2, 1))
    # succ(12, 3) = 123 and prec(1, 23) = 231
    assert prelie(B((1, 2)), B((1,))) == B((1, 2, 3)) - B((2, 3, 1))


def test_prelie_preserves_alternality():
    from moulds.zoo import alternality_check

    lie2 = B((1, 2)) - B((2, 1))
    for a, b in [(lie2, B((1,))), (B((1,)), lie2), (lie2, lie2)]:
        assert alternality_check(to_rational(prelie(a, b)))


@settings(max_examples=20, deadline=None)
@given(elements(2), elements(2), elements(2))
def test_prelie_linear(a, a2, b):
    if a.arity != a2.arity:
        return
    assert prelie(a + a2, b) == prelie(a, b) + prelie(a2, b)


def test_compose_examples():
    one23 = B((1, 2, 3))
    assert compose_at(one23, 1, one23) == B((1, 2, 3, 4, 5))
    assert compose_at(one23, 2, one23) == F([(1, 2, 3, 4, 5), (2, 1, 3, 4, 5), (2, 3, 1, 4, 5)])
    assert compose_at(one23, 3, one23) == F(
        [(1, 2, 3, 4, 5), (1, 3, 2, 4, 5), (1, 3, 4, 2, 5), (3, 1, 2, 4, 5), (3, 1, 4, 2, 5), (3, 4, 1, 2, 5)]
    )
    assert compose_at(B((3, 1, 2)), 2, B((1, 2))) == F([(2, 4, 1, 3), (4, 2, 1, 3), (4, 1, 2, 3)])


@pytest.mark.parametrize("m", range(1, 5))
def test_identity_rule(m):
    for n in range(1, 5):
        for i in range(1, m + 1):
            a, b = B(tuple(range(1, m + 1))), B(tuple(range(1, n + 1)))
            assert compose_at(a, i, b) == compose_identity_rule(m, i, n)


def test_operadic_prelie():
    assert operadic_prelie(B((1,)), B((1,))) == B((1,))
    x = operadic_prelie(B((1, 2)), B((1,)))
    assert x.arity == 2
    direct = rat_compose_at(to_rational(B((1, 2))), 1, to_rational(B((1,)))) + rat_compose_at(
        to_rational(B((1, 2))), 2, to_rational(B((1,)))
    )
    assert x == decompose_fsym(direct)


def test_operadic_prelie_arity():
    x = operadic_prelie(B((2, 1, 3)), B((1, 2)))
    assert x.arity == 4


def test_gamma_examples():
    assert gamma_fsym(B((1, 4, 3, 2))) == -F([(2, 1, 3, 4), (1, 2, 3, 4), (1, 3, 2, 4), (1, 3, 4, 2)])
    assert gamma_fsym(B((2, 1, 4, 3))) == F(shuffle((3, 2), (1, 4)))
    assert gamma_basis((1,)) == -B((1,))


@pytest.mark.parametrize("n", range(1, 6))
def test_gamma_routes_agree(n):
    for sigma in all_permutations(n):
        if n <= 4:
            assert gamma_fsym(B(sigma)) == gamma_rational(B(sigma))
        x = B(sigma)
        for _ in range(n + 1):
            x = gamma_fsym(x)
        assert x == B(sigma)


def test_to_rational_examples():
    assert to_rational(B((2, 1))) == parse_mould("1 / [u2][u1+u2]")
    assert equal(to_rational(F([(1, 2), (2, 1)])), parse_mould("1 / [u1][u2]"))
    assert to_rational(FQSymElement(3)).is_zero()
    assert to_rational(FQSymElement(3)) == RatMould.zero(3)


def test_statistics():
    assert descent_number((2, 4, 1, 3)) == 1
    assert major_index((3, 2, 1)) == 3
    assert inverse((2, 4, 1, 3)) == (3, 1, 4, 2)


def test_format():
    assert format_fsym(F([(2, 4, 1, 3), (4, 2, 1, 3), (4, 1, 2, 3)])) == "f_2413 + f_4123 + f_4213"
    assert format_fsym(B((1, 2)) - B((2, 1)) * Fraction(1, 2)) == "f_12 - 1/2 f_21"

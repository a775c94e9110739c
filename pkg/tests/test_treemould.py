from math import factorial

import pytest

from moulds.errors import ParseError
from moulds.fqsym import FQSymElement, all_permutations, to_rational
from moulds.ratmould import RatMould, decompose_fsym, equal, over, under
from moulds.textio import parse_mould
from moulds.treemould import (
    LEAF,
    Node,
    corolla,
    enumerate_trees,
    hook_count,
    left_comb,
    parse_tree,
    pbt_element,
    right_comb,
    sylvester_class,
    sylvester_shape,
    tree_mould,
    tree_over,
    tree_under,
)

from oracles import catalan

FOUR_NODE_TREE = "((o,o),((o,o),o))"


def test_parse_and_print():
    t = parse_tree(FOUR_NODE_TREE)
    assert str(t) == FOUR_NODE_TREE
    assert t.size == 4
    with pytest.raises(ParseError):
        parse_tree("(o,o")
    with pytest.raises(ParseError):
        parse_tree("(o,o)o")


@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_counts(n):
    trees = enumerate_trees(n)
    assert len(trees) == catalan(n)
    assert len(set(trees)) == len(trees)


def test_tree_mould_examples():
    assert tree_mould(parse_tree(FOUR_NODE_TREE)) == parse_mould("1 / [u1][u3][u3+u4][u1+u2+u3+u4]")
    assert tree_mould(Node(LEAF, LEAF)) == parse_mould("1 / [u1]")
    assert tree_mould(left_comb(2)) == to_rational(FQSymElement.basis((1, 2)))


@pytest.mark.parametrize("n", range(1, 7))
def test_tree_mould_shape(n):
    for t in enumerate_trees(n):
        (term,) = tree_mould(t).terms
        assert term.monomial == () and term.coeff == 1
        assert len(term.denominator) == n
        for form in term.denominator:
            vs = form.variables
            assert list(vs) == list(range(vs[0], vs[-1] + 1))


def test_sylvester_small_cases():
    assert sylvester_class(Node(LEAF, LEAF)) == ((1,),)
    sizes = sorted(len(sylvester_class(t)) for t in enumerate_trees(3))
    assert sizes == [1, 1, 1, 1, 2]


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_mould_is_class_sum(n):
    for t in enumerate_trees(n):
        assert decompose_fsym(tree_mould(t)) == pbt_element(t)


@pytest.mark.parametrize("n", range(1, 7))
def test_classes_partition_and_hooks(n):
    seen = []
    for t in enumerate_trees(n):
        cls = sylvester_class(t)
        assert len(cls) == hook_count(t)
        assert all(sylvester_shape(s) == t for s in cls)
        seen.extend(cls)
    assert sorted(seen) == sorted(all_permutations(n))


def test_hook_examples():
    assert hook_count(parse_tree(FOUR_NODE_TREE)) == 3
    assert hook_count(left_comb(3)) == 1
    assert hook_count(right_comb(5)) == 1
    assert hook_count(enumerate_trees(0)[0]) == 1


def test_all_trees_sum_to_all_permutations():
    for n in range(1, 6):
        total = RatMould.zero(n)
        for t in enumerate_trees(n):
            total = total + tree_mould(t)
        assert equal(total, to_rational(FQSymElement.from_words(all_permutations(n))))


def test_graft_examples():
    dot = Node(LEAF, LEAF)
    assert tree_over(dot, dot) == left_comb(2)
    assert tree_under(dot, dot) == right_comb(2)
    assert tree_mould(tree_over(dot, dot)) == to_rational(FQSymElement.basis((1, 2)))
    assert tree_mould(tree_under(dot, dot)) == to_rational(FQSymElement.basis((2, 1)))


@pytest.mark.parametrize("n1", range(1, 4))
def test_graft_matches_rational_over_under(n1):
    for n2 in range(1, 4):
        for t1 in enumerate_trees(n1):
            for t2 in enumerate_trees(n2):
                assert equal(tree_mould(tree_over(t1, t2)), over(tree_mould(t1), tree_mould(t2)))
                assert equal(tree_mould(tree_under(t1, t2)), under(tree_mould(t1), tree_mould(t2)))


def test_binary_fixed_point():
    """``x = 1 + B(x, x)`` degreewise, with ``x_n`` the sum of all tree moulds of size n."""
    N = 5
    x = [RatMould.constant(1)]
    for n in range(1, N + 1):
        total = RatMould.zero(n)
        for t in enumerate_trees(n):
            total = total + tree_mould(t)
        x.append(total)
    for n in range(1, N + 1):
        rhs = RatMould.zero(n)
        for a in range(n):
            rhs = rhs + corolla(x[a], x[n - 1 - a])
        assert equal(rhs, x[n])


def test_corolla_is_tree_root():
    for t in enumerate_trees(4):
        assert equal(corolla(tree_mould(t.left), tree_mould(t.right)), tree_mould(t))


def test_left_comb_class_is_identity():
    for n in range(1, 6):
        assert sylvester_class(left_comb(n)) == (tuple(range(1, n + 1)),)
        assert len(sylvester_class(right_comb(n))) == 1
        assert hook_count(left_comb(n)) == 1


def test_hook_formula_sums_to_factorial():
    for n in range(1, 8):
        assert sum(hook_count(t) for t in enumerate_trees(n)) == factorial(n)

"""Planar binary tree moulds and sylvester classes.

Internal nodes are numbered in infix (left, root, right) order, which is the
order in which their variables ``u_i`` appear in the tree mould.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence, Union

from .errors import ParseError
from .fqsym import FQSymElement, all_permutations, inverse
from .ratmould import LinearForm, RatMould, relabel, multiply


@dataclass(frozen=True)
class Leaf:
    size: int = field(default=0, init=False)

    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class Node:
    left: "BinaryTree"
    right: "BinaryTree"
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "size", self.left.size + self.right.size + 1)

    def __str__(self) -> str:
        return f"({self.left},{self.right})"


BinaryTree = Union[Leaf, Node]
LEAF = Leaf()


def parse_tree(text: str) -> BinaryTree:
    """Parse ``o`` / ``(L,R)`` notation, e.g. ``((o,o),o)``."""
    text = text.replace(" ", "")
    pos = 0

    def walk() -> BinaryTree:
        nonlocal pos
        if text.startswith("o", pos):
            pos += 1
            return LEAF
        if not text.startswith("(", pos):
            raise ParseError("expected 'o' or '('", text, pos)
        pos += 1
        left = walk()
        if not text.startswith(",", pos):
            raise ParseError("expected ','", text, pos)
        pos += 1
        right = walk()
        if not text.startswith(")", pos):
            raise ParseError("expected ')'", text, pos)
        pos += 1
        return Node(left, right)

    tree = walk()
    if pos != len(text):
        raise ParseError("trailing characters", text, pos)
    return tree


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[BinaryTree, ...]:
    """All complete binary trees with ``n`` internal nodes (Catalan many)."""
    if n == 0:
        return (LEAF,)
    return tuple(
        Node(left, right)
        for k in range(n)
        for left in enumerate_trees(k)
        for right in enumerate_trees(n - 1 - k)
    )


def left_comb(n: int) -> BinaryTree:
    t: BinaryTree = LEAF
    for _ in range(n):
        t = Node(t, LEAF)
    return t


def right_comb(n: int) -> BinaryTree:
    t: BinaryTree = LEAF
    for _ in range(n):
        t = Node(LEAF, t)
    return t


def _tree_forms(t: BinaryTree, offset: int, out: list[LinearForm]) -> None:
    if isinstance(t, Leaf):
        return
    _tree_forms(t.left, offset, out)
    _tree_forms(t.right, offset + t.left.size + 1, out)
    out.append(LinearForm.sum_of(range(offset + 1, offset + t.size + 1)))


def tree_mould(t: BinaryTree) -> RatMould:
    """Evaluate the tree: each node divides by the sum of the variables below it."""
    forms: list[LinearForm] = []
    _tree_forms(t, 0, forms)
    return RatMould.from_raw(t.size, [(Fraction(1), (), forms)])


def decreasing_tree_shape(word: Sequence[int]) -> BinaryTree:
    """Shape of the decreasing binary tree of a word with distinct letters."""
    if not word:
        return LEAF
    k = max(range(len(word)), key=word.__getitem__)
    return Node(decreasing_tree_shape(word[:k]), decreasing_tree_shape(word[k + 1 :]))


def sylvester_shape(sigma: Sequence[int]) -> BinaryTree:
    """The tree whose class contains ``sigma``: decreasing tree of ``sigma^-1``."""
    return decreasing_tree_shape(inverse(sigma))


@lru_cache(maxsize=None)
def _classes(n: int) -> dict:
    out: dict = {}
    for sigma in all_permutations(n):
        out.setdefault(sylvester_shape(sigma), []).append(sigma)
    return {t: tuple(v) for t, v in out.items()}


def sylvester_class(t: BinaryTree) -> tuple[tuple[int, ...], ...]:
    return _classes(t.size).get(t, ())


def pbt_element(t: BinaryTree) -> FQSymElement:
    """``P_T = sum of f_sigma over the sylvester class of T``."""
    return FQSymElement.from_words(sylvester_class(t)) if t.size else FQSymElement(0, {(): Fraction(1)})


def hook_count(t: BinaryTree) -> int:
    """``n! / prod(subtree sizes)``."""
    prod = 1
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Node):
            prod *= s.size
            stack.extend((s.left, s.right))
    return factorial(t.size) // prod


def _graft(t: BinaryTree, sub: BinaryTree, leftmost: bool) -> BinaryTree:
    if isinstance(t, Leaf):
        return sub
    if leftmost:
        return Node(_graft(t.left, sub, True), t.right)
    return Node(t.left, _graft(t.right, sub, False))


def tree_over(t1: BinaryTree, t2: BinaryTree) -> BinaryTree:
    """``T1 / T2``: graft ``T1`` on the leftmost leaf of ``T2``."""
    return _graft(t2, t1, leftmost=True)


def tree_under(t1: BinaryTree, t2: BinaryTree) -> BinaryTree:
    """``T1 \\ T2``: graft ``T2`` on the rightmost leaf of ``T1``."""
    return _graft(t1, t2, leftmost=False)


def corolla(x: RatMould, y: RatMould) -> RatMould:
    """Mould of ``B(X, Y) = int_0^t X h Y``: ``x(u_<) y(u_>) / (u_1 + ... + u_n)``."""
    n = x.arity + y.arity + 1
    left = relabel(x, range(1, x.arity + 1), n)
    right = relabel(y, range(x.arity + 2, n + 1), n)
    node = RatMould.from_raw(n, [(Fraction(1), (), [LinearForm.sum_of(range(1, n + 1))])])
    return multiply(multiply(left, right), node)

"""Non-interleaving forests, non-crossing trees and the Tamari interval check.

A non-interleaving forest is a labelled rooted forest in which the label set
of every subtree is an integer interval.  Forests are written as nested
label lists, e.g. ``2(1,3)`` or ``4(2(1,3),6(5)),7``.

Non-crossing trees live on polygon vertices ``0..n``; the node whose subtree
covers ``[a, b]`` corresponds to the chord ``(a-1, b)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInputError, ParseError
from .fqsym import FQSymElement, _shuffle
from .ratmould import LinearForm, RatMould
from .series import compose_inverse
from .treemould import BinaryTree, Leaf, Node, enumerate_trees, sylvester_shape


@dataclass(frozen=True)
class NITree:
    label: int
    children: tuple["NITree", ...] = ()

    def labels(self) -> list[int]:
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def nodes(self) -> Iterator[NITree]:
        yield self
        for c in self.children:
            yield from c.nodes()

    def shifted(self, k: int) -> NITree:
        return NITree(self.label + k, tuple(c.shifted(k) for c in self.children))

    def canonical(self) -> NITree:
        kids = sorted((c.canonical() for c in self.children), key=lambda c: min(c.labels()))
        return NITree(self.label, tuple(kids))

    def __str__(self) -> str:
        if not self.children:
            return str(self.label)
        return f"{self.label}(" + ",".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class NonInterleavingForest:
    components: tuple[NITree, ...]

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def labels(self) -> list[int]:
        return [x for c in self.components for x in c.labels()]

    def nodes(self) -> Iterator[NITree]:
        for c in self.components:
            yield from c.nodes()

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.components)


@dataclass(frozen=True)
class NonCrossingTree:
    n: int
    edges: frozenset[tuple[int, int]]

    def __str__(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in sorted(self.edges))


_TOKEN = re.compile(r"\d+|[(),]")


def parse_forest(text: str) -> NonInterleavingForest:
    tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text.replace(" ", ""))]
    pos = 0

    def tree() -> NITree:
        nonlocal pos
        if pos >= len(tokens) or not tokens[pos][0].isdigit():
            raise ParseError("expected a label", text, tokens[pos][1] if pos < len(tokens) else len(text))
        label = int(tokens[pos][0])
        pos += 1
        kids = []
        if pos < len(tokens) and tokens[pos][0] == "(":
            pos += 1
            kids.append(tree())
            while pos < len(tokens) and tokens[pos][0] == ",":
                pos += 1
                kids.append(tree())
            if pos >= len(tokens) or tokens[pos][0] != ")":
                raise ParseError("expected ')'", text, tokens[pos][1] if pos < len(tokens) else len(text))
            pos += 1
        return NITree(label, tuple(kids))

    comps = [tree()]
    while pos < len(tokens) and tokens[pos][0] == ",":
        pos += 1
        comps.append(tree())
    if pos != len(tokens):
        raise ParseError("trailing input", text, tokens[pos][1])
    return NonInterleavingForest(tuple(comps))


def _is_interval(labels: Iterable[int]) -> bool:
    s = sorted(labels)
    return s == list(range(s[0], s[0] + len(s)))


def validate_nif(forest: NonInterleavingForest) -> bool:
    labels = forest.labels()
    if sorted(labels) != list(range(1, len(labels) + 1)):
        return False
    if not all(_is_interval(node.labels()) for node in forest.nodes()):
        return False
    lows = [min(c.labels()) for c in forest.components]
    return lows == sorted(lows)


def _require_valid(forest: NonInterleavingForest) -> None:
    if not validate_nif(forest):
        raise InvalidInputError(f"{forest} is not a non-interleaving forest")


@lru_cache(maxsize=None)
def _trees_on(a: int, b: int) -> tuple[NITree, ...]:
    out = []
    for r in range(a, b + 1):
        for left in _forests_on(a, r - 1):
            for right in _forests_on(r + 1, b):
                out.append(NITree(r, left + right))
    return tuple(out)


@lru_cache(maxsize=None)
def _forests_on(a: int, b: int) -> tuple[tuple[NITree, ...], ...]:
    if a > b:
        return ((),)
    out = []
    for c in range(a, b + 1):
        for first in _trees_on(a, c):
            for rest in _forests_on(c + 1, b):
                out.append((first,) + rest)
    return tuple(out)


def enumerate_nif(n: int) -> list[NonInterleavingForest]:
    """All non-interleaving forests on ``1..n``; counts are the ternary numbers."""
    return [NonInterleavingForest(f) for f in _forests_on(1, n)]


def enumerate_nit(n: int) -> list[NITree]:
    """All non-interleaving trees (single component) on ``1..n``."""
    return list(_trees_on(1, n))


# ------------------------------------------------------------------ bijection


def nif_to_nct(forest: NonInterleavingForest) -> NonCrossingTree:
    _require_valid(forest)
    edges = set()
    for node in forest.nodes():
        labels = node.labels()
        edges.add((min(labels) - 1, max(labels)))
    return NonCrossingTree(forest.size, frozenset(edges))


def _crossing(e: tuple[int, int], f: tuple[int, int]) -> bool:
    (a, b), (c, d) = sorted(e), sorted(f)
    return a < c < b < d or c < a < d < b


def is_noncrossing_tree(t: NonCrossingTree) -> bool:
    if len(t.edges) != t.n:
        return False
    parent = list(range(t.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.edges:
        if not (0 <= a < b <= t.n):
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    edges = sorted(t.edges)
    return not any(_crossing(e, f) for i, e in enumerate(edges) for f in edges[i + 1 :])


def nct_to_nif(t: NonCrossingTree) -> NonInterleavingForest:
    """Inverse of :func:`nif_to_nct`: chords become nested label intervals."""
    if not is_noncrossing_tree(t):
        raise InvalidInputError(f"{t} is not a non-crossing tree on {t.n + 1} vertices")
    intervals = sorted(((a + 1, b) for a, b in t.edges), key=lambda iv: (iv[0], -iv[1]))

    def build(lo: int, hi: int, pool: list[tuple[int, int]]) -> list[NITree]:
        trees = []
        rest = list(pool)
        while rest:
            a, b = rest.pop(0)
            inside = [iv for iv in rest if a <= iv[0] and iv[1] <= b]
            rest = [iv for iv in rest if not (a <= iv[0] and iv[1] <= b)]
            kids = build(a, b, inside)
            covered = {x for k in kids for x in k.labels()}
            free = [x for x in range(a, b + 1) if x not in covered]
            if len(free) != 1:
                raise InvalidInputError(f"chord set {t} does not come from a forest")
            trees.append(NITree(free[0], tuple(kids)))
        return trees

    forest = NonInterleavingForest(tuple(build(1, t.n, intervals)))
    _require_valid(forest)
    return forest


# ----------------------------------------------------------- moulds and posets


def nif_mould(forest: NonInterleavingForest) -> RatMould:
    """``prod_i 1 / (sum of u_j over the subtree of i)``."""
    _require_valid(forest)
    forms = [LinearForm.sum_of(node.labels()) for node in forest.nodes()]
    return RatMould.from_raw(forest.size, [(Fraction(1), (), forms)])


def _multi_shuffle(groups: Sequence[list[tuple[int, ...]]]) -> list[tuple[int, ...]]:
    acc: list[tuple[int, ...]] = [()]
    for words in groups:
        acc = [w for a in acc for b in words for w in _shuffle(a, b)]
    return acc


def _tree_extensions(t: NITree) -> list[tuple[int, ...]]:
    return [w + (t.label,) for w in _multi_shuffle([_tree_extensions(c) for c in t.children])]


def linear_extensions(forest: NonInterleavingForest) -> list[tuple[int, ...]]:
    """Words on ``1..n`` listing every node after all of its descendants."""
    _require_valid(forest)
    return sorted(_multi_shuffle([_tree_extensions(c) for c in forest.components]))


def extension_element(forest: NonInterleavingForest) -> FQSymElement:
    return FQSymElement.from_words(linear_extensions(forest))


# ------------------------------------------------------------- Tamari lattice


def right_rotations(t: BinaryTree) -> list[BinaryTree]:
    """Trees obtained by one right rotation ``((A,B),C) -> (A,(B,C))``."""
    if isinstance(t, Leaf):
        return []
    out = []
    if isinstance(t.left, Node):
        out.append(Node(t.left.left, Node(t.left.right, t.right)))
    out.extend(Node(l, t.right) for l in right_rotations(t.left))
    out.extend(Node(t.left, r) for r in right_rotations(t.right))
    return out


@lru_cache(maxsize=None)
def tamari_up_sets(n: int) -> dict:
    """``tree -> frozenset of trees above it`` (reflexive), by closure of rotations."""
    trees = enumerate_trees(n)
    above: dict = {}
    # descending order of the number of right rotations still possible keeps it simple
    def up(t):
        if t in above:
            return above[t]
        s = {t}
        for r in right_rotations(t):
            s |= up(r)
        above[t] = frozenset(s)
        return above[t]

    for t in trees:
        up(t)
    return above


def tamari_leq(s: BinaryTree, t: BinaryTree) -> bool:
    return t in tamari_up_sets(s.size)[s]


def _value_inversions(w: Sequence[int]) -> frozenset[tuple[int, int]]:
    return frozenset((w[j], w[i]) for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def _weak_extreme(words: Sequence[tuple[int, ...]], smallest: bool):
    invs = {w: _value_inversions(w) for w in words}
    for w in words:
        if all((invs[w] <= invs[v]) if smallest else (invs[v] <= invs[w]) for v in words):
            return w
    return None


def contains_pattern(word: Sequence[int], pattern: Sequence[int]) -> bool:
    k = len(pattern)
    n = len(word)

    def search(start: int, chosen: tuple[int, ...]) -> bool:
        if len(chosen) == k:
            return True
        for i in range(start, n):
            cand = chosen + (word[i],)
            if all(
                (cand[a] < cand[b]) == (pattern[a] < pattern[b])
                for a in range(len(cand))
                for b in range(a + 1, len(cand))
            ) and search(i + 1, cand):
                return True
        return False

    return search(0, ())


@dataclass(frozen=True)
class TamariReport:
    shapes: frozenset
    is_interval: bool
    tmin: BinaryTree | None
    tmax: BinaryTree | None
    wmin: tuple[int, ...] | None
    wmax: tuple[int, ...] | None
    min_avoids_312: bool
    max_avoids_132: bool


def tamari_interval_of(forest: NonInterleavingForest) -> TamariReport:
    """Sylvester image of the linear extensions and whether it is a Tamari interval.

    Also locates the weak-order minimum and maximum of the extensions and
    tests them for the patterns 312 and 132 respectively.
    """
    words = linear_extensions(forest)
    shapes = frozenset(sylvester_shape(w) for w in words)
    n = forest.size
    up = tamari_up_sets(n)
    tmin = next((s for s in shapes if all(t in up[s] for t in shapes)), None)
    tmax = next((s for s in shapes if all(s in up[t] for t in shapes)), None)
    ok = False
    if tmin is not None and tmax is not None:
        between = {t for t in enumerate_trees(n) if t in up[tmin] and tmax in up[t]}
        ok = between == set(shapes)
    wmin = _weak_extreme(words, smallest=True)
    wmax = _weak_extreme(words, smallest=False)
    return TamariReport(
        shapes=shapes,
        is_interval=ok,
        tmin=tmin,
        tmax=tmax,
        wmin=wmin,
        wmax=wmax,
        min_avoids_312=wmin is not None and not contains_pattern(wmin, (3, 1, 2)),
        max_avoids_132=wmax is not None and not contains_pattern(wmax, (1, 3, 2)),
    )


# ------------------------------------------------------------------ L-algebra


def _graft_root(host: NITree, guest: NITree) -> NITree:
    return NITree(host.label, host.children + (guest,)).canonical()


def lalg_prec(t1: NITree, t2: NITree) -> NITree:
    """Graft the root of the shifted ``t2`` on the root of ``t1``."""
    return _graft_root(t1, t2.shifted(t1.size))


def lalg_succ(t1: NITree, t2: NITree) -> NITree:
    """Graft the root of ``t1`` on the root of the shifted ``t2``."""
    return _graft_root(t2.shifted(t1.size), t1)


@dataclass(frozen=True)
class ColoredTree:
    """Complete binary tree with internal nodes coloured '<' or '>'; ``None`` is a leaf."""

    color: str
    left: "ColoredTree | None"
    right: "ColoredTree | None"


@lru_cache(maxsize=None)
def colored_trees(leaves: int) -> tuple:
    if leaves == 1:
        return (None,)
    out = []
    for k in range(1, leaves):
        for l, r, c in _cartesian(colored_trees(k), colored_trees(leaves - k), "<>"):
            out.append(ColoredTree(c, l, r))
    return tuple(out)


def _has_forbidden_edge(t) -> bool:
    if t is None:
        return False
    if t.color == ">" and t.right is not None and t.right.color == "<":
        return True
    return _has_forbidden_edge(t.left) or _has_forbidden_edge(t.right)


def lalg_basis(leaves: int) -> list:
    """Bicoloured trees with no right edge from a '>' vertex to a '<' vertex."""
    return [t for t in colored_trees(leaves) if not _has_forbidden_edge(t)]


def lalg_basis_count(n: int) -> int:
    return len(lalg_basis(n))


def lalg_evaluate(t) -> NITree:
    """Evaluate a bicoloured tree on the one-node generator."""
    if t is None:
        return NITree(1)
    op = lalg_prec if t.color == "<" else lalg_succ
    return op(lalg_evaluate(t.left), lalg_evaluate(t.right))


def series_compose_inverse(f: Sequence, N: int) -> list:
    return compose_inverse(f, N)


def a006013_prefix(n: int) -> list[int]:
    """Absolute coefficients of the inverse of ``-t + 2t^2 - t^3``."""
    g = compose_inverse([0, -1, 2, -1], n)
    return [int(abs(c)) for c in g[1:]]

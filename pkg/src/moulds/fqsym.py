"""Permutational moulds: the free quasi-symmetric functions realization.

An :class:`FQSymElement` is a finite combination of permutations ``sigma``
standing for the moulds ``f_sigma``.  Coefficients may be exact rationals or
elements of Q(q); nothing here depends on which.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _permutations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import EmptyOperandError, OverlapError
from .ratmould import RatMould, compose_at as _rat_compose_at, decompose_fsym, gamma as _rat_gamma, perm_mould

Permutation = tuple[int, ...]


def all_permutations(n: int) -> list[Permutation]:
    return list(_permutations(range(1, n + 1)))


def inverse(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for pos, v in enumerate(sigma, 1):
        inv[v - 1] = pos
    return tuple(inv)


def descents(sigma: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i]]


def descent_number(sigma: Sequence[int]) -> int:
    return len(descents(sigma))


def major_index(sigma: Sequence[int]) -> int:
    return sum(descents(sigma))


def shift(word: Sequence[int], k: int) -> Permutation:
    return tuple(x + k for x in word)


def shuffle(u: Sequence[int], v: Sequence[int]) -> list[Permutation]:
    """All interleavings of ``u`` and ``v`` keeping each word's order."""
    if set(u) & set(v):
        raise OverlapError(f"words {tuple(u)} and {tuple(v)} share letters")
    return list(_shuffle(tuple(u), tuple(v)))


def _shuffle(u: Permutation, v: Permutation) -> Iterator[Permutation]:
    if not u:
        yield v
        return
    if not v:
        yield u
        return
    for w in _shuffle(u[1:], v):
        yield (u[0],) + w
    for w in _shuffle(u, v[1:]):
        yield (v[0],) + w


class FQSymElement:
    """Sparse combination ``sum c_sigma f_sigma`` of one fixed arity."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Mapping[Sequence[int], object] | None = None):
        self.arity = arity
        clean = {}
        for sigma, c in (coeffs or {}).items():
            sigma = tuple(sigma)
            if len(sigma) != arity:
                raise ValueError(f"permutation {sigma} does not have length {arity}")
            if c != 0:
                clean[sigma] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, sigma: Sequence[int], coeff=Fraction(1)) -> FQSymElement:
        return cls(len(sigma), {tuple(sigma): coeff})

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], coeff=Fraction(1)) -> FQSymElement:
        acc: dict = {}
        n = None
        for w in words:
            w = tuple(w)
            n = len(w) if n is None else n
            acc[w] = acc.get(w, 0) + coeff
        return cls(n or 0, acc)

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, sigma: Sequence[int]):
        return self.coeffs.get(tuple(sigma), Fraction(0))

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, FQSymElement):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.arity, frozenset(self.coeffs.items())))

    def __add__(self, other: FQSymElement) -> FQSymElement:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        acc = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc[s] = acc.get(s, 0) + c
        return FQSymElement(self.arity, acc)

    def __neg__(self) -> FQSymElement:
        return FQSymElement(self.arity, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other: FQSymElement) -> FQSymElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FQSymElement):
            return product(self, other)
        return FQSymElement(self.arity, {s: c * other for s, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        return FQSymElement(self.arity, {s: scalar * c for s, c in self.coeffs.items()})

    def map_coeffs(self, fn) -> FQSymElement:
        return FQSymElement(self.arity, {s: fn(c) for s, c in self.coeffs.items()})

    def __repr__(self) -> str:
        return f"FQSymElement({self.arity}, {format_fsym(self)!r})"

    def __str__(self) -> str:
        return format_fsym(self)


def format_fsym(a: FQSymElement) -> str:
    """``f_2413 + f_4213 - 1/2 f_4123`` style text."""
    from .qrat import coeff_str
    from .textio import format_perm

    if a.is_zero():
        return "0"
    out = []
    for k, (sigma, c) in enumerate(a.items()):
        text = coeff_str(c)
        neg = text.startswith("-") and "q" not in text
        mag = text[1:] if neg else text
        if any(ch in mag for ch in "+- ") or "q" in mag:
            mag = f"({mag})"
        body = ("" if mag == "1" else mag + " ") + "f_" + format_perm(sigma)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _bilinear(a: FQSymElement, b: FQSymElement, rule) -> FQSymElement:
    acc: dict = {}
    for s, cs in a.coeffs.items():
        for t, ct in b.coeffs.items():
            c = cs * ct
            for w in rule(s, shift(t, a.arity)):
                acc[w] = acc.get(w, 0) + c
    return FQSymElement(a.arity + b.arity, acc)


def product(a: FQSymElement, b: FQSymElement) -> FQSymElement:
    """Shifted shuffle product ``F_s * F_t = sum_{w in s sh t[m]} F_w``."""
    return _bilinear(a, b, lambda s, t: _shuffle(s, t))


def _prec(s: Permutation, t: Permutation):
    for w in _shuffle(s[:-1], t):
        yield w + s[-1:]


def _succ(s: Permutation, t: Permutation):
    for w in _shuffle(s, t[:-1]):
        yield w + t[-1:]


def dend_prec(a: FQSymElement, b: FQSymElement) -> FQSymElement:
    """Left half-product: shuffles ending with the last letter of ``a``."""
    if a.arity == 0 or b.arity == 0:
        raise EmptyOperandError("dendriform products need nonzero arities")
    return _bilinear(a, b, _prec)


def dend_succ(a: FQSymElement, b: FQSymElement) -> FQSymElement:
    """Right half-product: shuffles ending with the last letter of shifted ``b``."""
    if a.arity == 0 or b.arity == 0:
        raise EmptyOperandError("dendriform products need nonzero arities")
    return _bilinear(a, b, _succ)


def prelie(a: FQSymElement, b: FQSymElement) -> FQSymElement:
    """``a >- b = (a succ b) - (b prec a)``."""
    return dend_succ(a, b) - dend_prec(b, a)


def to_rational(a: FQSymElement) -> RatMould:
    raw = []
    for sigma, c in a.coeffs.items():
        raw.extend((t.coeff * c, t.monomial, t.denominator) for t in perm_mould(sigma).terms)
    return RatMould.from_raw(a.arity, raw)


def compose_at(a: FQSymElement, i: int, b: FQSymElement) -> FQSymElement:
    """Operadic composition through the rational realization."""
    return decompose_fsym(_rat_compose_at(to_rational(a), i, to_rational(b)))


def compose_identity_rule(m: int, i: int, n: int) -> FQSymElement:
    """``F_Id_m o_i F_Id_n`` by the shuffle rule ``((1..i-1) sh (i..i+n-2)) . (i+n-1..m+n-1)``."""
    if not 1 <= i <= m:
        raise IndexError(f"slot {i} out of range 1..{m}")
    head = tuple(range(1, i))
    mid = tuple(range(i, i + n - 1))
    tail = tuple(range(i + n - 1, m + n))
    return FQSymElement.from_words(w + tail for w in _shuffle(head, mid))


def operadic_prelie(a: FQSymElement, b: FQSymElement) -> FQSymElement:
    """``sum_i a o_i b``."""
    total = FQSymElement(a.arity + b.arity - 1)
    for i in range(1, a.arity + 1):
        total = total + compose_at(a, i, b)
    return total


def gamma_basis(sigma: Sequence[int]) -> FQSymElement:
    """Combinatorial cyclic action on a single ``f_sigma``."""
    n = len(sigma)
    shifted = tuple(x % n + 1 for x in sigma)
    k = shifted.index(1)
    u, w = shifted[:k], shifted[k + 1 :]
    v = (1,) + w[::-1]
    sign = -1 if len(v) % 2 else 1
    return FQSymElement.from_words(_shuffle(u, v), Fraction(sign))


def gamma_fsym(a: FQSymElement) -> FQSymElement:
    total = FQSymElement(a.arity)
    for sigma, c in a.coeffs.items():
        total = total + gamma_basis(sigma) * c
    return total


def gamma_rational(a: FQSymElement) -> FQSymElement:
    """The same action computed through ``f(u_2, .., u_n, -sum u)``."""
    return decompose_fsym(_rat_gamma(to_rational(a)))

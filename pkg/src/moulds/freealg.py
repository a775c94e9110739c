"""Truncated series in the free associative algebra on graded generators.

Generator ``g_i`` has degree ``i``; a word ``(i_1, ..., i_r)`` has degree
``i_1 + ... + i_r``.  Every series carries an explicit truncation degree and
silently drops words above it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

Word = tuple[int, ...]


class FreeSeries:
    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Mapping[Iterable[int], object] | None = None):
        self.N = N
        clean: dict[Word, object] = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if c != 0 and sum(w) <= N:
                clean[w] = clean.get(w, 0) + c
        self.coeffs = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def one(cls, N: int) -> FreeSeries:
        return cls(N, {(): Fraction(1)})

    @classmethod
    def gen(cls, i: int, N: int, coeff=Fraction(1)) -> FreeSeries:
        return cls(N, {(i,): coeff})

    @classmethod
    def word(cls, w: Iterable[int], N: int, coeff=Fraction(1)) -> FreeSeries:
        return cls(N, {tuple(w): coeff})

    def __getitem__(self, w: Iterable[int]):
        return self.coeffs.get(tuple(w), Fraction(0))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), len(kv[0]), kv[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeSeries):
            return NotImplemented
        n = min(self.N, other.N)
        return self.truncate(n).coeffs == other.truncate(n).coeffs

    def truncate(self, N: int) -> FreeSeries:
        return FreeSeries(N, self.coeffs)

    def degree_part(self, k: int) -> FreeSeries:
        return FreeSeries(self.N, {w: c for w, c in self.coeffs.items() if sum(w) == k})

    def length_part(self, ell: int) -> FreeSeries:
        return FreeSeries(self.N, {w: c for w, c in self.coeffs.items() if len(w) == ell})

    def constant(self):
        return self.coeffs.get((), Fraction(0))

    def __add__(self, other: FreeSeries) -> FreeSeries:
        acc = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc[w] = acc.get(w, 0) + c
        return FreeSeries(min(self.N, other.N), acc)

    def __neg__(self) -> FreeSeries:
        return FreeSeries(self.N, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: FreeSeries) -> FreeSeries:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FreeSeries):
            return FreeSeries(self.N, {w: c * other for w, c in self.coeffs.items()})
        N = min(self.N, other.N)
        acc: dict[Word, object] = {}
        for u, a in self.coeffs.items():
            du = sum(u)
            for v, b in other.coeffs.items():
                if du + sum(v) <= N:
                    w = u + v
                    acc[w] = acc.get(w, 0) + a * b
        return FreeSeries(N, acc)

    def __rmul__(self, scalar) -> FreeSeries:
        return FreeSeries(self.N, {w: scalar * c for w, c in self.coeffs.items()})

    def __repr__(self) -> str:
        return f"FreeSeries(N={self.N}, {format_series(self)})"


def format_series(x: FreeSeries, letter: str = "g") -> str:
    from .qrat import coeff_str

    if x.is_zero():
        return "0"
    parts = []
    for w, c in x.items():
        mono = "*".join(f"{letter}{i}" for i in w) or "1"
        parts.append(f"{coeff_str(c)}*{mono}" if mono != "1" else coeff_str(c))
    return " + ".join(parts)


def bracket(a: FreeSeries, b: FreeSeries) -> FreeSeries:
    return a * b - b * a


def exp_series(x: FreeSeries) -> FreeSeries:
    """``exp(x)`` for ``x`` without constant term."""
    if x.constant() != 0:
        raise ValueError("exp needs a series without constant term")
    total = FreeSeries.one(x.N)
    power = FreeSeries.one(x.N)
    k = 1
    while True:
        power = power * x * Fraction(1, k)
        if power.is_zero():
            return total
        total = total + power
        k += 1


def log_series(x: FreeSeries) -> FreeSeries:
    """``log(x)`` for ``x`` with constant term 1."""
    if x.constant() != 1:
        raise ValueError("log needs constant term 1")
    y = x - FreeSeries.one(x.N)
    total = FreeSeries(x.N)
    power = FreeSeries.one(x.N)
    k = 1
    while True:
        power = power * y
        if power.is_zero():
            return total
        total = total + power * Fraction((-1) ** (k + 1), k)
        k += 1


def substitute(x: FreeSeries, images: Callable[[int], FreeSeries], N: int | None = None) -> FreeSeries:
    """Replace each generator ``g_i`` by ``images(i)`` (an algebra morphism)."""
    N = x.N if N is None else N
    cache: dict[int, FreeSeries] = {}
    total = FreeSeries(N)
    for w, c in x.coeffs.items():
        term = FreeSeries.one(N)
        for i in w:
            if i not in cache:
                cache[i] = images(i).truncate(N)
            term = term * cache[i]
        total = total + term * c
    return total


@lru_cache(maxsize=None)
def _left_bracket_expansion(w: Word) -> tuple[tuple[Word, int], ...]:
    """Words of ``[...[[x_w1, x_w2], x_w3], ..., x_wl]`` with signs."""
    if len(w) <= 1:
        return ((w, 1),)
    acc: dict[Word, int] = {}
    last = w[-1:]
    for u, c in _left_bracket_expansion(w[:-1]):
        acc[u + last] = acc.get(u + last, 0) + c
        acc[last + u] = acc.get(last + u, 0) - c
    return tuple((u, c) for u, c in acc.items() if c)


def left_bracket(w: Iterable[int], N: int, coeff=Fraction(1)) -> FreeSeries:
    return FreeSeries(N, {u: coeff * c for u, c in _left_bracket_expansion(tuple(w))})


def dsw_project(x: FreeSeries) -> FreeSeries:
    """Dynkin-Specht-Wever map: each word of length l becomes its left bracketing over l."""
    acc: dict[Word, object] = {}
    for w, c in x.coeffs.items():
        if not w:
            continue
        scale = c / len(w) if not isinstance(c, int) else Fraction(c, len(w))
        for u, s in _left_bracket_expansion(w):
            acc[u] = acc.get(u, 0) + scale * s
    return FreeSeries(x.N, acc)


def is_lie(x: FreeSeries) -> bool:
    """``x`` is a Lie element iff the DSW map fixes it (length by length)."""
    return dsw_project(x) == x

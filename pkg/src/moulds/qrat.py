"""Rational functions in one formal parameter.

Coefficients of q-deformed moulds live in the field Q(q).  The field
arithmetic is delegated to :mod:`sympy`'s sparse rational function fields,
which interoperate with :class:`fractions.Fraction`, so every algorithm in
the package can be written once over "some field" and run over either
``Fraction`` or ``QRatCoeff`` values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import QQ
from sympy.polys.fields import FracElement, field

QRatCoeff = FracElement
Coeff = Union[Fraction, FracElement]


@lru_cache(maxsize=None)
def _field(name: str):
    return field(name, QQ)


def formal(name: str = "q") -> FracElement:
    """Return the generator of Q(name)."""
    return _field(name)[1]


def is_formal(x) -> bool:
    return isinstance(x, FracElement)


def qint(i: int, q) -> Coeff:
    """Quantum integer ``[i]_q = 1 + q + ... + q^(i-1)``."""
    total = 0 * q
    power = 1
    for _ in range(i):
        total += power
        power *= q
    return total


def qfactorial(n: int, q):
    out = 1
    for i in range(1, n + 1):
        out *= qint(i, q)
    return out


def qbinomial(n: int, k: int, q):
    """Gaussian binomial coefficient; ``q=1`` gives the ordinary binomial."""
    if isinstance(q, int):
        q = Fraction(q)
    if k < 0 or k > n:
        return 0 * q
    # product formula keeps intermediate values polynomial
    num = den = qint(1, q)
    for i in range(k):
        num *= qint(n - i, q)
        den *= qint(i + 1, q)
    return num / den


def specialize(x, value):
    """Evaluate a Q(q) element at a rational ``value``; plain numbers pass through."""
    if isinstance(x, FracElement):
        value = Fraction(value)
        return to_fraction(x.subs(x.field.gens[0], QQ(value.numerator, value.denominator)))
    return x


def to_fraction(x) -> Fraction:
    """Convert an exact scalar (int, Fraction, sympy QQ element) to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, FracElement):
        if x.denom.is_ground and x.numer.is_ground:
            return to_fraction(x.numer.LC) / to_fraction(x.denom.LC)
        raise ValueError(f"{x} is not constant")
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    return Fraction(x)


def coeff_str(c) -> str:
    """Exact text for a coefficient: ``p/q`` for rationals, sympy text for Q(q)."""
    if isinstance(c, FracElement):
        if c.numer.is_ground and c.denom.is_ground:
            return str(to_fraction(c))
        return str(c.as_expr())
    return str(Fraction(c))

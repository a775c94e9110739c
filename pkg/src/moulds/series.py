"""Truncated univariate power series with exact coefficients.

A series is a list ``[c_0, c_1, ..., c_N]``; all operations truncate at the
length of their inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NonInvertibleError


def _pad(a: Sequence, n: int) -> list:
    return list(a[:n]) + [Fraction(0)] * max(0, n - len(a))


def mul(a: Sequence, b: Sequence, N: int | None = None) -> list:
    n = N + 1 if N is not None else min(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def reciprocal(a: Sequence) -> list:
    """``1/a`` for ``a[0] != 0``."""
    if a[0] == 0:
        raise ZeroDivisionError("constant term is zero")
    n = len(a)
    out = [Fraction(0)] * n
    out[0] = 1 / Fraction(a[0]) if isinstance(a[0], int) else 1 / a[0]
    for k in range(1, n):
        s = sum((a[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out[k] = -s * out[0]
    return out


def log1p(x: Sequence) -> list:
    """``log(1 + x)`` for ``x[0] == 0``."""
    if x[0] != 0:
        raise ValueError("log1p needs a series without constant term")
    n = len(x)
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        power = mul(power, x)
        sign = 1 if k % 2 else -1
        for i in range(n):
            out[i] += sign * power[i] / k
    return out


def compose(f: Sequence, g: Sequence) -> list:
    """``f(g(t))`` for ``g[0] == 0``, truncated to ``len(g)``."""
    if g[0] != 0:
        raise ValueError("inner series must vanish at 0")
    n = len(g)
    f = _pad(f, n)
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        if k:
            power = mul(power, g)
        if f[k] != 0:
            for i in range(n):
                out[i] += f[k] * power[i]
    return out


def compose_inverse(f: Sequence, N: int) -> list:
    """Series ``g`` with ``f(g(t)) = t + O(t^(N+1))``; needs ``f(0)=0``, ``f'(0)!=0``."""
    f = _pad(f, N + 1)
    if f[0] != 0:
        raise NonInvertibleError("f(0) must be 0")
    if len(f) < 2 or f[1] == 0:
        raise NonInvertibleError("f'(0) must be nonzero")
    g = [Fraction(0)] * (N + 1)
    g[1] = 1 / Fraction(f[1])
    for k in range(2, N + 1):
        # coefficient k of f(g) with g_k still 0; adding g_k changes it by f_1 g_k
        ck = compose(f, g[: k + 1])[k]
        g[k] = -ck / f[1]
    return g

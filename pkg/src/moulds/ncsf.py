"""Noncommutative symmetric functions: basis changes, Zassenhaus factors, q-idempotents.

Elements are :class:`~moulds.freealg.FreeSeries` whose generators are read as
``Psi_i`` (or ``Phi_i``, ``Lambda_i`` depending on the table).  Coefficient
tables are plain dicts keyed by compositions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, prod

from .fqsym import all_permutations, descent_number, inverse, major_index, FQSymElement
from .freealg import FreeSeries, exp_series, log_series, substitute
from .qrat import formal, qbinomial, specialize
from .ratmould import compositions

Composition = tuple[int, ...]


def weight(I: Composition) -> int:
    return sum(I)


def length(I: Composition) -> int:
    return len(I)


def part_product(I: Composition) -> int:
    return prod(I)


def all_compositions(n: int) -> list[Composition]:
    return sorted(compositions(n), key=lambda I: (len(I), I))


def s_in_lambda(n: int) -> dict[Composition, Fraction]:
    return {I: Fraction((-1) ** (n - len(I))) for I in all_compositions(n)}


def s_in_psi(n: int) -> dict[Composition, Fraction]:
    out = {}
    for I in all_compositions(n):
        den, partial = 1, 0
        for i in I:
            partial += i
            den *= partial
        out[I] = Fraction(1, den)
    return out


def psi_in_phi(n: int) -> dict[Composition, Fraction]:
    out = {}
    for K in all_compositions(n):
        ell = len(K)
        num = sum((-1) ** (i - 1) * comb(ell - 1, i - 1) * K[i - 1] for i in range(1, ell + 1))
        out[K] = Fraction(num, factorial(ell) * prod(K))
    return out


def simplex_integral(exponents) -> Fraction:
    """``int_{0<t_r<...<t_1<1} prod t_j^{a_j}`` by iterated antiderivatives."""
    coeff = Fraction(1)
    e = 0
    for a in reversed(list(exponents)):
        e += a
        coeff /= e + 1
        e += 1
    return coeff


def phi_in_psi(n: int) -> dict[Composition, Fraction]:
    out = {}
    for I in all_compositions(n):
        r = len(I)
        total = Fraction(0)
        for sigma in permutations(range(1, r + 1)):
            d = descent_number(sigma)
            a = [0] * r
            for k in range(1, r + 1):
                a[sigma[r - k] - 1] = I[k - 1] - 1
            total += Fraction((-1) ** d, r * comb(r - 1, d)) * simplex_integral(a)
        out[I] = n * total
    return {I: c for I, c in out.items() if c}


def substitute_generators(x: FreeSeries, image) -> FreeSeries:
    """Replace ``g_i`` by ``image(i, N)``; e.g. ``image=psi_as_phi`` rewrites Psi in Phi."""
    return substitute(x, lambda i: image(i, x.N))


def sigma_series(N: int) -> FreeSeries:
    """``sigma(1) = 1 + S_1 + S_2 + ...`` written on the ``Psi`` generators."""
    acc = {(): Fraction(1)}
    for n in range(1, N + 1):
        acc.update(s_in_psi(n))
    return FreeSeries(N, acc)


def lambda_series_signed(N: int) -> FreeSeries:
    """``lambda(-1) = sum (-1)^n Lambda_n`` on the ``Lambda`` generators."""
    acc = {(): Fraction(1)}
    for n in range(1, N + 1):
        acc[(n,)] = Fraction((-1) ** n)
    return FreeSeries(N, acc)


def s_via_lambda(N: int) -> FreeSeries:
    acc = {(): Fraction(1)}
    for n in range(1, N + 1):
        acc.update(s_in_lambda(n))
    return FreeSeries(N, acc)


def psi_as_phi(i: int, N: int) -> FreeSeries:
    return FreeSeries(N, psi_in_phi(i))


def phi_as_psi(i: int, N: int) -> FreeSeries:
    return FreeSeries(N, phi_in_psi(i))


def phi_via_log(N: int) -> FreeSeries:
    """``sum Phi_n / n = log sigma(1)``, written on the ``Psi`` generators."""
    return log_series(sigma_series(N))


def zassenhaus(N: int) -> list[FreeSeries]:
    """``Z_1..Z_N`` in ``sigma = exp(Z_1) exp(Z_2/2) exp(Z_3/3) ...``."""
    x = sigma_series(N)
    out = []
    for k in range(1, N + 1):
        xk = x.degree_part(k)
        out.append(xk * k)
        x = exp_series(-xk) * x
    return out


def phi_q(n: int, q=None) -> dict[tuple[int, ...], object]:
    """Coefficients of the q-Solomon idempotent on permutations.

    ``q`` defaults to the formal parameter; pass a number to get the
    specialized coefficients directly.
    """
    q = formal() if q is None else q
    out = {}
    for sigma in all_permutations(n):
        d = descent_number(sigma)
        e = major_index(sigma) - comb(d + 1, 2)
        c = Fraction((-1) ** d, n) / qbinomial(n - 1, d, q) * q**e
        out[sigma] = c
    return out


def specialize_map(coeffs: dict, value) -> dict:
    return {s: specialize(c, value) for s, c in coeffs.items()}


def descent_element(coeffs: dict) -> FQSymElement:
    """Embed a group-algebra element ``sum c_s s`` into FQSym as ``sum c_s f_{s^-1}``."""
    n = len(next(iter(coeffs))) if coeffs else 0
    return FQSymElement(n, {inverse(s): c for s, c in coeffs.items()})


def klyachko_remainders(n: int) -> dict[tuple[int, ...], object]:
    """Remainder of ``(-1)^d q^(maj-C(d+1,2)) - q^maj [n-1 choose d]_q`` modulo the n-th cyclotomic polynomial."""
    import sympy

    qs = sympy.Symbol("q")
    phi_n = sympy.cyclotomic_poly(n, qs)
    out = {}
    for sigma in all_permutations(n):
        d = descent_number(sigma)
        maj = major_index(sigma)
        qbin = sympy.expand(_qbinomial_poly(n - 1, d, qs))
        expr = (-1) ** d * qs ** (maj - comb(d + 1, 2)) - qs**maj * qbin
        out[sigma] = sympy.rem(sympy.expand(expr), phi_n, qs)
    return out


@lru_cache(maxsize=None)
def _qbinomial_poly(n: int, k: int, q):
    import sympy

    num = prod((1 - q ** (n - i) for i in range(k)), start=sympy.Integer(1))
    den = prod((1 - q ** (i + 1) for i in range(k)), start=sympy.Integer(1))
    return sympy.cancel(num / den)

"""Named moulds, symmetry tests and application to the free algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from math import comb, factorial
from typing import Callable, Sequence

from .errors import ParamError
from .fqsym import (
    FQSymElement,
    _shuffle,
    all_permutations,
    descent_number,
    inverse,
    major_index,
    to_rational,
)
from .freealg import FreeSeries
from .qrat import formal, qbinomial, qint
from .ratmould import (
    LinearForm,
    RatMould,
    compositions,
    decompose_fsym,
    equal,
    eval_mould,
    multiply,
    perm_mould,
    permute_variables,
    relabel,
    uniform_mould,
)
from .treemould import Node, left_comb, right_comb, tree_mould

NAMES = (
    "Uniform",
    "TimeOrdered",
    "Perm",
    "Ypq",
    "TY",
    "LinY",
    "QLinY",
    "ConnesMoscovici",
    "Solomon",
    "QSolomon",
    "Dynkin",
    "PO",
)

# families whose operator starts with the identity term
_UNITAL = {"Uniform", "TimeOrdered"}


def saillances(sigma: Sequence[int]) -> int:
    """Number of left-to-right maxima."""
    best = 0
    count = 0
    for x in sigma:
        if x > best:
            best = x
            count += 1
    return count


def ypq(p: int, q: int) -> RatMould:
    """``u_p / (u_1...u_n (u_1+...+u_n))`` with ``n = p + q``."""
    n = p + q
    if not 1 <= p <= n:
        raise ParamError(f"need 1 <= p <= p+q, got p={p}, q={q}")
    forms = [LinearForm.sum_of([i]) for i in range(1, n + 1)] + [LinearForm.sum_of(range(1, n + 1))]
    return RatMould.from_raw(n, [(Fraction(1), (p,), forms)])


def _y_combination(n: int, weight: Callable[[int], object]) -> RatMould:
    total = RatMould.zero(n)
    for i in range(1, n + 1):
        w = weight(i)
        if w != 0:
            total = total + ypq(i, n - i) * w
    return total


def solomon_coefficients(n: int, q=None) -> dict[tuple[int, ...], object]:
    """Coefficient of the group element ``sigma`` (``q=None`` is the classical case)."""
    out = {}
    for sigma in all_permutations(n):
        d = descent_number(sigma)
        if q is None:
            out[sigma] = Fraction((-1) ** d, n * comb(n - 1, d))
        else:
            e = major_index(sigma) - comb(d + 1, 2)
            out[sigma] = Fraction((-1) ** d, n) * q**e / qbinomial(n - 1, d, q)
    return out


def solomon_fsym(n: int, q=None) -> FQSymElement:
    """Group element ``sigma`` sits on ``f_{sigma^-1}`` (descent classes of inverses)."""
    return FQSymElement(n, {inverse(s): c for s, c in solomon_coefficients(n, q).items()})


def dynkin_comb_sum(n: int) -> RatMould:
    """Sum over ``i`` of ``(-1)^i`` times the tree (left comb on i) ^ (right comb on n-1-i).

    This is the comb formula read literally; it integrates the left-nested bracket
    over the decreasing simplex ``t_1 > t_2 > ... > t_n``.
    """
    total = RatMould.zero(n)
    for i in range(n):
        t = Node(left_comb(i), right_comb(n - 1 - i))
        total = total + tree_mould(t) * ((-1) ** i)
    return total


def time_reversal(a: FQSymElement) -> FQSymElement:
    """``f_sigma -> f_{reversed sigma}``: exchange increasing and decreasing simplices."""
    return FQSymElement(a.arity, {s[::-1]: c for s, c in a.coeffs.items()})


def dynkin_fsym(n: int) -> FQSymElement:
    """Left-nested bracket integrated over ``t_1 < ... < t_n``, as a combination of ``f_sigma``."""
    return time_reversal(decompose_fsym(dynkin_comb_sum(n)))


def po_mould(n: int, q) -> RatMould:
    """``(1/u_1) prod_{i>=2} (u_1+...+u_{i-1} + q u_i) / (u_i (u_1+...+u_i))``."""
    forms = [LinearForm.sum_of([1])]
    for i in range(2, n + 1):
        forms += [LinearForm.sum_of([i]), LinearForm.sum_of(range(1, i + 1))]
    raw = []
    # expand the numerator: factor i contributes u_j (j < i) or q u_i
    for picks in _cartesian(*[range(1, i + 1) for i in range(2, n + 1)]):
        c = Fraction(1)
        for i, j in enumerate(picks, start=2):
            if j == i:
                c = c * q
        raw.append((c, picks, forms))
    return RatMould.from_raw(n, raw)


@dataclass(frozen=True)
class MouldFamily:
    """A named mould with its parameters; calling it gives one arity."""

    name: str
    params: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def unit(self):
        return Fraction(1) if self.name in _UNITAL else Fraction(0)

    def __call__(self, n: int) -> RatMould:
        return named_mould(self.name, n, **self.params)


def _param(params: dict, key: str, name: str, default=None):
    if key in params:
        return params[key]
    if default is not None:
        return default
    raise ParamError(f"{name} needs parameter {key!r}")


def named_mould(name: str, n: int, **params) -> RatMould:
    """Arity-``n`` component of a named mould.

    Parameters: ``sigma`` for Perm, ``p``/``q`` for Ypq, ``alpha`` for TY,
    ``q`` for QLinY, QSolomon and PO.  A missing ``alpha``/``q`` means the
    formal parameter.
    """
    if name not in NAMES:
        raise ParamError(f"unknown mould {name!r}; expected one of {', '.join(NAMES)}")
    if n < 0:
        raise ParamError("arity must be nonnegative")
    if name == "Perm":
        sigma = tuple(_param(params, "sigma", name))
        if sorted(sigma) != list(range(1, len(sigma) + 1)) or len(sigma) != n:
            raise ParamError(f"{sigma} is not a permutation of 1..{n}")
        return perm_mould(sigma)
    if name == "Ypq":
        p, q = _param(params, "p", name), _param(params, "q", name)
        if p + q != n or not 1 <= p <= n:
            raise ParamError(f"Ypq needs p+q=n and 1<=p<=n, got p={p}, q={q}, n={n}")
        return ypq(p, q)
    if n == 0:
        return RatMould.constant(1 if name in _UNITAL else 0)
    if name == "Uniform":
        return uniform_mould(n)
    if name == "TimeOrdered":
        return perm_mould(tuple(range(1, n + 1)))
    if name == "TY":
        alpha = _param(params, "alpha", name, formal("alpha"))
        return _y_combination(n, lambda i: alpha ** (i - 1))
    if name == "LinY":
        return _y_combination(n, lambda i: Fraction(i))
    if name == "QLinY":
        q = _param(params, "q", name, formal("q"))
        return _y_combination(n, lambda i: qint(i, q))
    if name == "ConnesMoscovici":
        return _y_combination(n, lambda k: Fraction((-1) ** (n - k) * comb(n, k) * k, factorial(n)))
    if name == "Solomon":
        return to_rational(solomon_fsym(n))
    if name == "QSolomon":
        q = _param(params, "q", name, formal("q"))
        return to_rational(solomon_fsym(n, q))
    if name == "Dynkin":
        return to_rational(dynkin_fsym(n))
    q = _param(params, "q", name, formal("q"))
    return po_mould(n, q)


def family(name: str, **params) -> MouldFamily:
    if name not in NAMES:
        raise ParamError(f"unknown mould {name!r}")
    return MouldFamily(name, params)


def _shuffle_sum(m: RatMould, p: int) -> RatMould:
    n = m.arity
    total = RatMould.zero(n)
    for w in _shuffle(tuple(range(1, p + 1)), tuple(range(p + 1, n + 1))):
        total = total + permute_variables(m, w)
    return total


def _component(m, n: int | None) -> RatMould:
    if isinstance(m, RatMould):
        return m
    return m(n)


def alternality_check(m, n: int | None = None, seed: int | None = None) -> bool:
    """Every proper shuffle sum of ``m`` vanishes."""
    m = _component(m, n)
    kw = {} if seed is None else {"seed": seed}
    return all(equal(_shuffle_sum(m, p), RatMould.zero(m.arity), **kw) for p in range(1, m.arity))


def symmetrality_check(fam, n: int, seed: int | None = None) -> bool:
    """Each shuffle sum equals ``m(u_1..u_p) m(u_{p+1}..u_n)``."""
    m = fam(n)
    kw = {} if seed is None else {"seed": seed}
    for p in range(1, n):
        left = relabel(fam(p), range(1, p + 1), n)
        right = relabel(fam(n - p), range(p + 1, n + 1), n)
        if not equal(_shuffle_sum(m, p), multiply(left, right), **kw):
            return False
    return True


def nc_apply(fam, N: int) -> FreeSeries:
    """``sum f_n(i_1..i_n) g_{i_1}...g_{i_n}`` over words of degree at most ``N``."""
    acc: dict = {(): getattr(fam, "unit", Fraction(0))}
    cache: dict[int, RatMould] = {}
    for k in range(1, N + 1):
        for comp in compositions(k):
            n = len(comp)
            if n not in cache:
                cache[n] = fam(n)
            acc[comp] = eval_mould(cache[n], comp)
    return FreeSeries(N, acc)
